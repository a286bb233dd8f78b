#include <algorithm>

#include "affrig/rigidity.hpp"

namespace affrig {

DecompositionPlan plan_decomposition(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                     const SearchOptions& options) {
  const DualPair& dp = space->dual_pair();
  if (const auto thick = has_thick_pair(dp, xs, ys)) throw ThickPairPresent(thick->x, thick->y);
  DecompositionPlan plan{xs, ys, {}};

  std::vector<std::size_t> cur_x(xs.size());
  std::vector<std::size_t> cur_y(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) cur_x[i] = i;
  for (std::size_t j = 0; j < ys.size(); ++j) cur_y[j] = j;

  while (true) {
    const auto classes = classify_all(dp, xs.subset(cur_x), ys.subset(cur_y));
    std::vector<std::size_t> keep_x;
    std::vector<std::size_t> keep_y;
    for (std::size_t i = 0; i < cur_x.size(); ++i) {
      for (std::size_t j = 0; j < cur_y.size(); ++j) {
        if (classes[i][j] != PairClass::Thin) {
          keep_x.push_back(cur_x[i]);
          break;
        }
      }
    }
    for (std::size_t j = 0; j < cur_y.size(); ++j) {
      for (std::size_t i = 0; i < cur_x.size(); ++i) {
        if (classes[i][j] != PairClass::Thin) {
          keep_y.push_back(cur_y[j]);
          break;
        }
      }
    }
    // Thin members leave the space: X side first, then Y against what is left.
    const std::string where = "level " + std::to_string(plan.levels.size());
    std::vector<std::size_t> drop_x;
    std::vector<std::size_t> drop_y;
    for (std::size_t i = 0; i < cur_x.size(); ++i) {
      if (std::find(keep_x.begin(), keep_x.end(), cur_x[i]) == keep_x.end()) drop_x.push_back(i);
    }
    for (std::size_t j = 0; j < cur_y.size(); ++j) {
      if (std::find(keep_y.begin(), keep_y.end(), cur_y[j]) == keep_y.end()) drop_y.push_back(j);
    }
    std::size_t pruned = certify_removal(space, xs.subset(cur_x), ys.subset(cur_y), drop_x, options, where + " pruning");
    pruned += certify_dual_removal(space, xs.subset(keep_x), ys.subset(cur_y), drop_y, options,
                                   where + " pruning");
    if (keep_x.empty()) break;

    const auto pick = induction_pick(dp, xs.subset(keep_x), ys.subset(keep_y));
    std::vector<std::size_t> xs0;
    std::vector<std::size_t> ys0;
    std::vector<std::size_t> rest_x;
    std::vector<std::size_t> rest_y;
    for (std::size_t i : keep_x) (xs[i].linear() == pick->x0 ? xs0 : rest_x).push_back(i);
    for (std::size_t j : keep_y) (ys[j].linear() == pick->y0 ? ys0 : rest_y).push_back(j);
    const Dec2Blocks blocks{pick->x0, pick->y0, xs.subset(xs0), ys.subset(ys0), xs.subset(rest_x), ys.subset(rest_y)};
    Dec2Plan dec2 = prepare_dec2(space, blocks, options, where);
    PlanLevel level{keep_x, keep_y, std::move(xs0), std::move(ys0), pruned, std::move(dec2)};
    plan.levels.push_back(std::move(level));
    cur_x = std::move(rest_x);
    cur_y = std::move(rest_y);
  }
  return plan;
}

DecompositionResult apply_plan(const Distribution& d, const DecompositionPlan& plan) {
  const SpacePtr& space = d.space();
  if (!in_space(d, plan.xs, plan.ys)) throw SupportViolation("distribution is not in the space of the arrangement");
  Distribution current = d;
  std::vector<PairComponent> components;
  for (std::size_t k = 0; k < plan.levels.size(); ++k) {
    const PlanLevel& level = plan.levels[k];
    if (!in_space(current, plan.xs.subset(level.xs), plan.ys.subset(level.ys))) {
      throw SupportViolation("level " + std::to_string(k) + ": thin members do not drop out");
    }
    Dec2Split split = apply_dec2(current, level.dec2);
    const PureAffineSplit block =
        pure_affine_split(split.component0, plan.xs.subset(level.xs0), plan.ys.subset(level.ys0));
    for (const auto& c : block.components) {
      if (!c.d.is_zero()) components.push_back({level.xs0[c.x], level.ys0[c.y], c.d});
    }
    current = std::move(split.remainder);
  }
  if (!current.is_zero()) throw SupportViolation("remainder does not vanish after the last level");

  std::sort(components.begin(), components.end(), [](const PairComponent& a, const PairComponent& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  Distribution sum(space, Side::E);
  std::vector<FieldScalar> coefficients;
  for (const auto& c : components) {
    const Distribution mu = mu_basis(space, plan.xs[c.x], space->to_point(plan.ys[c.y].base()));
    const std::size_t at = c.d.support().front();
    const FieldScalar lambda = c.d[at] / mu[at];
    if (!(lambda * mu == c.d)) throw VerificationFailed("component is not a multiple of its mu basis element");
    coefficients.push_back(lambda);
    sum += c.d;
  }
  if (!(sum == d)) throw VerificationFailed("components do not sum to the input");
  return {d, std::move(components), std::move(current), std::move(coefficients)};
}

DecompositionResult theorem_a_decompose(const Distribution& d, const Arrangement& xs, const Arrangement& ys,
                                        const SearchOptions& options) {
  return apply_plan(d, plan_decomposition(d.space(), xs, ys, options));
}

}  // namespace affrig
