#include <random>

#include "affrig/rigidity.hpp"

namespace affrig {
namespace {

void require_family_inputs(const DualPair& dp, const Arrangement& ys, const std::vector<AffineSubspace>& forbidden) {
  if (ys.side() != Side::F) throw InvalidInput("family search expects an F-side arrangement");
  if (ys.ambient_dim() != dp.dim() || !(ys.field() == dp.field())) {
    throw DimensionMismatch("arrangement does not match the dual pair");
  }
  for (const auto& s : forbidden) {
    if (s.side() != Side::E) throw InvalidInput("forbidden sets live on E");
    if (s.ambient_dim() != dp.dim() || !(s.field() == dp.field())) {
      throw DimensionMismatch("forbidden set does not match the dual pair");
    }
  }
}

// Depth-first search over F_p: level k fixes u_k and checks every
// combination whose last member is k, so a complete path is a family.
class PrimeFieldSearch {
 public:
  PrimeFieldSearch(const DualPair& dp, const Arrangement& ys, const std::vector<AffineSubspace>& forbidden,
                   const SearchOptions& options)
      : space_(dp), options_(options), blocked_(space_.size(), false) {
    for (const auto& s : forbidden) {
      for (std::size_t i : space_.points_of(s)) blocked_[i] = true;
    }
    for (const auto& y : ys.members()) {
      const AffineSubspace annihilator = AffineSubspace::through_origin(Side::E, perp(dp, y.linear(), Side::F));
      std::vector<Point> pts;
      for (std::size_t i : space_.points_of(annihilator)) pts.push_back(space_.point(i));
      candidates_.push_back(std::move(pts));
    }
  }

  FamilySearch run() {
    FamilySearch out;
    const std::size_t k = candidates_.size();
    chosen_.assign(k, 0);
    sums_.assign(k + 1, {});
    sums_[0] = {Point(space_.dim(), 0)};
    const Outcome r = descend(0);
    out.nodes = nodes_;
    if (r == Outcome::Found) {
      out.family = to_family();
      return out;
    }
    if (r == Outcome::Exhausted) {
      out.exhausted = true;
      return out;
    }
    std::mt19937_64 rng(options_.seed);
    for (std::uint64_t t = 0; t < options_.random_budget; ++t) {
      ++out.nodes;
      bool ok = true;
      for (std::size_t level = 0; level < k && ok; ++level) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates_[level].size() - 1);
        chosen_[level] = pick(rng);
        ok = extend(level);
      }
      if (ok) {
        out.family = to_family();
        out.sampled = true;
        return out;
      }
    }
    return out;
  }

 private:
  enum class Outcome { Found, Exhausted, Budget };

  // Fills sums_[level + 1] from sums_[level] and u = candidate; false if a
  // new combination is blocked.
  bool extend(std::size_t level) {
    const Point& u = candidates_[level][chosen_[level]];
    const auto& prev = sums_[level];
    auto& next = sums_[level + 1];
    next = prev;
    next.reserve(2 * prev.size());
    for (const auto& s : prev) {
      Point t = space_.add(s, u);
      if (blocked_[space_.index(t)]) return false;
      next.push_back(std::move(t));
    }
    return true;
  }

  Outcome descend(std::size_t level) {
    if (level == candidates_.size()) return Outcome::Found;
    for (std::size_t i = 0; i < candidates_[level].size(); ++i) {
      if (nodes_ >= options_.budget) return Outcome::Budget;
      ++nodes_;
      chosen_[level] = i;
      if (!extend(level)) continue;
      const Outcome r = descend(level + 1);
      if (r != Outcome::Exhausted) return r;
    }
    return Outcome::Exhausted;
  }

  AvoidingFamily to_family() const {
    AvoidingFamily f;
    for (std::size_t level = 0; level < candidates_.size(); ++level) {
      f.u.push_back(space_.to_vector(candidates_[level][chosen_[level]]));
    }
    return f;
  }

  FiniteSpace space_;
  SearchOptions options_;
  std::vector<bool> blocked_;
  std::vector<std::vector<Point>> candidates_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<Point>> sums_;  // sums_[k]: all 0/1 combinations of u_0..u_{k-1}
  std::uint64_t nodes_ = 0;
};

bool avoids(const std::vector<AffineSubspace>& forbidden, const Vector& v) {
  for (const auto& s : forbidden) {
    if (affine_contains(s, v)) return false;
  }
  return true;
}

// Integer coefficient vectors with max-norm exactly r, lexicographic.
std::vector<std::vector<long long>> shell(std::size_t dim, long long r) {
  std::vector<std::vector<long long>> out;
  if (dim == 0) {
    if (r == 0) out.emplace_back();
    return out;
  }
  std::vector<long long> c(dim, -r);
  while (true) {
    long long norm = 0;
    for (long long x : c) norm = std::max(norm, x < 0 ? -x : x);
    if (norm == r) out.push_back(c);
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (c[i] < r) {
        ++c[i];
        break;
      }
      c[i] = -r;
      if (i == 0) return out;
    }
  }
}

FamilySearch rational_search(const DualPair& dp, const Arrangement& ys, const std::vector<AffineSubspace>& forbidden,
                             const SearchOptions& options) {
  const FieldDescriptor& f = dp.field();
  const std::size_t n = dp.dim();
  FamilySearch out;
  AvoidingFamily fam;
  std::vector<Vector> sums{zero_vector(f, n)};
  for (const auto& y : ys.members()) {
    const LinearSubspace annihilator = perp(dp, y.linear(), Side::F);
    bool placed = false;
    for (long long r = 0; r <= static_cast<long long>(options.max_radius) && !placed; ++r) {
      for (const auto& coeffs : shell(annihilator.dim(), r)) {
        ++out.nodes;
        Vector u = zero_vector(f, n);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          if (coeffs[i] != 0) u = add(u, scale(FieldScalar::from_integer(f, coeffs[i]), annihilator.basis()[i]));
        }
        std::vector<Vector> extra;
        bool ok = true;
        for (const auto& s : sums) {
          Vector t = add(s, u);
          if (!avoids(forbidden, t)) {
            ok = false;
            break;
          }
          extra.push_back(std::move(t));
        }
        if (!ok) continue;
        sums.insert(sums.end(), extra.begin(), extra.end());
        fam.u.push_back(std::move(u));
        out.radius = std::max<std::uint64_t>(out.radius, static_cast<std::uint64_t>(r));
        placed = true;
        break;
      }
    }
    if (!placed) return out;
  }
  out.family = std::move(fam);
  return out;
}

}  // namespace

FamilySearch find_avoiding_family(const DualPair& dp, const Arrangement& ys, const std::vector<AffineSubspace>& forbidden,
                                  const SearchOptions& options) {
  require_family_inputs(dp, ys, forbidden);
  FamilySearch out = dp.field().is_prime_field() ? PrimeFieldSearch(dp, ys, forbidden, options).run()
                                                 : rational_search(dp, ys, forbidden, options);
  if (out.family) {
    out.family->forbidden = forbidden;
    if (!verify_family(dp, ys, *out.family)) throw VerificationFailed("avoiding family failed its own verification");
  }
  return out;
}

FamilySearch find_avoiding_family(const DualPair& dp, const Arrangement& ys, const Arrangement& xs, const Vector& x1,
                                  const SearchOptions& options) {
  if (xs.side() != Side::E) throw InvalidInput("family search expects an E-side arrangement");
  const AffineSubspace point = AffineSubspace::point(Side::E, x1);
  std::vector<AffineSubspace> forbidden;
  for (const auto& x : xs.members()) forbidden.push_back(affine_difference(point, x));
  return find_avoiding_family(dp, ys, forbidden, options);
}

bool verify_family(const DualPair& dp, const Arrangement& ys, const AvoidingFamily& family) {
  if (family.u.size() != ys.size() || family.m != 1) return false;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (family.u[i].size() != dp.dim()) return false;
    if (!perp(dp, ys[i].linear(), Side::F).contains(family.u[i])) return false;
  }
  const std::size_t k = family.u.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    Vector s = zero_vector(dp.field(), dp.dim());
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) s = add(s, family.u[i]);
    }
    if (!avoids(family.forbidden, s)) return false;
  }
  return true;
}

}  // namespace affrig
