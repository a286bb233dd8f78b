#include "affrig/arrangement.hpp"

#include <algorithm>

namespace affrig {

Arrangement::Arrangement(Side side, const FieldDescriptor& field, std::size_t ambient_dim,
                         const std::vector<AffineSubspace>& members)
    : side_(side), field_(field), ambient_dim_(ambient_dim) {
  for (const auto& m : members) {
    if (m.side() != side) throw InvalidInput("arrangement member on side " + to_string(m.side()));
    if (m.ambient_dim() != ambient_dim) throw DimensionMismatch("arrangement member has the wrong ambient dimension");
    if (!(m.field() == field)) throw DescriptorMismatch("arrangement member over " + m.field().name());
    if (std::find(members_.begin(), members_.end(), m) == members_.end()) members_.push_back(m);
  }
}

std::optional<std::size_t> Arrangement::index_of(const AffineSubspace& x) const {
  const auto it = std::find(members_.begin(), members_.end(), x);
  if (it == members_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool Arrangement::covers(const Vector& v) const {
  return std::any_of(members_.begin(), members_.end(), [&](const AffineSubspace& m) { return affine_contains(m, v); });
}

Arrangement Arrangement::without(std::size_t index) const {
  std::vector<AffineSubspace> rest;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i != index) rest.push_back(members_[i]);
  }
  return Arrangement(side_, field_, ambient_dim_, rest);
}

Arrangement Arrangement::with(const AffineSubspace& x) const {
  std::vector<AffineSubspace> all = members_;
  all.push_back(x);
  return Arrangement(side_, field_, ambient_dim_, all);
}

Arrangement Arrangement::subset(const std::vector<std::size_t>& indices) const {
  std::vector<AffineSubspace> chosen;
  chosen.reserve(indices.size());
  for (std::size_t i : indices) chosen.push_back(members_.at(i));
  return Arrangement(side_, field_, ambient_dim_, chosen);
}

std::vector<std::pair<std::size_t, std::size_t>> Arrangement::nested_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = 0; j < members_.size(); ++j) {
      if (i != j && affine_subset(members_[i], members_[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

bool operator==(const Arrangement& a, const Arrangement& b) {
  return a.side_ == b.side_ && a.field_ == b.field_ && a.ambient_dim_ == b.ambient_dim_ && a.members_ == b.members_;
}

namespace {

void require_sides(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  if (xs.side() != Side::E || ys.side() != Side::F) throw InvalidInput("expected xs on E and ys on F");
  if (xs.ambient_dim() != dp.dim() || ys.ambient_dim() != dp.dim()) {
    throw DimensionMismatch("arrangements do not match the dual pair's dimension");
  }
}

}  // namespace

std::vector<std::vector<PairClass>> classify_all(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  require_sides(dp, xs, ys);
  std::vector<std::vector<PairClass>> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const LinearSubspace annihilator = perp(dp, xs[i].linear(), Side::E);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const LinearSubspace& ly = ys[j].linear();
      PairClass c = PairClass::Thin;
      if (ly.contains(annihilator)) c = annihilator.dim() == ly.dim() ? PairClass::Perfect : PairClass::Thick;
      out[i].push_back(c);
    }
  }
  return out;
}

std::optional<MemberPair> has_thick_pair(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  const auto classes = classify_all(dp, xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (classes[i][j] == PairClass::Thick) return MemberPair{i, j};
    }
  }
  return std::nullopt;
}

std::vector<MemberPair> perfect_pairs(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  const auto classes = classify_all(dp, xs, ys);
  std::vector<MemberPair> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (classes[i][j] == PairClass::Perfect) out.push_back({i, j});
    }
  }
  return out;
}

std::pair<Arrangement, Arrangement> prune_thin(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  const auto classes = classify_all(dp, xs, ys);
  std::vector<std::size_t> keep_x;
  std::vector<std::size_t> keep_y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (classes[i][j] != PairClass::Thin) {
        keep_x.push_back(i);
        break;
      }
    }
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (classes[i][j] != PairClass::Thin) {
        keep_y.push_back(j);
        break;
      }
    }
  }
  return {xs.subset(keep_x), ys.subset(keep_y)};
}

std::vector<LinearGroup> group_by_linear_part(const Arrangement& xs) {
  std::vector<LinearGroup> groups;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto it = std::find_if(groups.begin(), groups.end(),
                                 [&](const LinearGroup& g) { return g.linear == xs[i].linear(); });
    if (it == groups.end()) {
      groups.push_back({xs[i].linear(), {i}});
    } else {
      it->members.push_back(i);
    }
  }
  return groups;
}

std::optional<InductionPick> induction_pick(const DualPair& dp, const Arrangement& xs, const Arrangement& ys) {
  require_sides(dp, xs, ys);
  if (xs.empty()) return std::nullopt;
  const auto groups = group_by_linear_part(xs);
  const LinearGroup* best = &groups.front();
  for (const auto& g : groups) {
    if (g.linear.dim() > best->linear.dim() ||
        (g.linear.dim() == best->linear.dim() && compare(g.linear, best->linear) < 0)) {
      best = &g;
    }
  }
  InductionPick pick{best->linear, perp(dp, best->linear, Side::E)};
  for (const auto& x : xs.members()) {
    if (x.linear() == pick.x0) continue;
    if (classify_linear(dp, x.linear(), pick.y0) != PairClass::Thin) {
      throw HypothesisViolated("induction pick: (" + x.to_string() + ", Y0) is not thin");
    }
  }
  for (const auto& y : ys.members()) {
    if (y.linear() == pick.y0) continue;
    if (classify_linear(dp, pick.x0, y.linear()) != PairClass::Thin) {
      throw HypothesisViolated("induction pick: (X0, " + y.to_string() + ") is not thin");
    }
  }
  return pick;
}

Arrangement meet_family(const Arrangement& xs0, const Arrangement& xs_other) {
  if (xs0.side() != xs_other.side()) throw InvalidInput("meet_family: arrangements on different sides");
  std::vector<AffineSubspace> meets;
  for (const auto& a : xs0.members()) {
    for (const auto& b : xs_other.members()) {
      if (auto m = affine_intersection(a, b)) meets.push_back(*m);
    }
  }
  return Arrangement(xs0.side(), xs0.field(), xs0.ambient_dim(), meets);
}

}  // namespace affrig
