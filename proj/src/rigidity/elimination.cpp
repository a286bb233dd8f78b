#include <algorithm>

#include "affrig/rigidity.hpp"

namespace affrig {
namespace {

void require_all_thin(const DualPair& dp, const Arrangement& xs, const Arrangement& ys, std::size_t x1_index) {
  if (x1_index >= xs.size()) throw InvalidInput("member index out of range");
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (classify_pair(dp, xs[x1_index], ys[j]) != PairClass::Thin) {
      throw HypothesisViolated("(" + xs[x1_index].to_string() + ", " + ys[j].to_string() + ") is not thin");
    }
  }
}

std::vector<std::size_t> free_points(const FiniteSpace& sp, const Arrangement& xs, std::size_t x1_index) {
  const std::vector<bool> others = sp.indicator(xs.without(x1_index));
  std::vector<std::size_t> out;
  for (std::size_t i : sp.points_of(xs[x1_index])) {
    if (!others[i]) out.push_back(i);
  }
  return out;
}

Arrangement flip(const Arrangement& a) {
  std::vector<AffineSubspace> members;
  for (const auto& m : a.members()) members.emplace_back(opposite(m.side()), m.base(), m.linear());
  return Arrangement(opposite(a.side()), a.field(), a.ambient_dim(), members);
}

}  // namespace

EliminationReport check_elimination(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                    std::size_t x1_index, const std::vector<Distribution>& basis) {
  require_all_thin(space->dual_pair(), xs, ys, x1_index);
  EliminationReport report;
  report.x1_index = x1_index;
  report.free_points = free_points(*space, xs, x1_index);
  for (std::size_t i : report.free_points) {
    for (const auto& b : basis) {
      if (!b[i].is_zero()) {
        report.residual_points.push_back(i);
        break;
      }
    }
  }
  return report;
}

EliminationCertificate elimination_certificate(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                               std::size_t x1_index, const SearchOptions& options) {
  const DualPair& dp = space->dual_pair();
  require_all_thin(dp, xs, ys, x1_index);
  EliminationCertificate cert;
  cert.x1_index = x1_index;
  for (std::size_t i : free_points(*space, xs, x1_index)) {
    FamilySearch s = find_avoiding_family(dp, ys, xs, space->to_vector(space->point(i)), options);
    if (!s.family) {
      cert.failed_point = i;
      cert.exhausted = s.exhausted;
      return cert;
    }
    cert.families.emplace_back(i, std::move(*s.family));
  }
  return cert;
}

std::size_t certify_removal(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                            const std::vector<std::size_t>& remove, const SearchOptions& options,
                            const std::string& where) {
  std::vector<std::size_t> alive(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) alive[i] = i;
  std::size_t points = 0;
  for (std::size_t r : remove) {
    const auto at = std::find(alive.begin(), alive.end(), r);
    if (at == alive.end()) throw InvalidInput("member scheduled for removal twice or out of range");
    const auto cert = elimination_certificate(space, xs.subset(alive), ys, static_cast<std::size_t>(at - alive.begin()),
                                              options);
    if (!cert.complete()) {
      throw ModelTooSmall(space->p(), cert.exhausted,
                          where + ", removing " + xs[r].to_string() + " at point " +
                              to_string(space->to_vector(space->point(*cert.failed_point))));
    }
    points += cert.families.size();
    alive.erase(at);
  }
  return points;
}

std::size_t certify_dual_removal(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                 const std::vector<std::size_t>& remove, const SearchOptions& options,
                                 const std::string& where) {
  // FT(D) lives on F with the transposed pairing, and its own transform is
  // D(-x). Negating the members of xs leaves their linear parts, which is all
  // the families depend on, unchanged.
  const SpacePtr dual = make_space(space->dual_pair().transposed());
  return certify_removal(dual, flip(ys), flip(xs), remove, options, where);
}

}  // namespace affrig
