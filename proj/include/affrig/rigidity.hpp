#pragma once

// Constructive side of the rigidity theorem in the finite model: avoiding
// families, multiplier cancellation, elimination of thin members, the split
// of pure affine blocks, the two-block split and the full decomposition into
// perfect-pair components.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affrig/finitemodel.hpp"

namespace affrig {

struct SearchOptions {
  /// Nodes of the deterministic lexicographic search before sampling starts.
  std::uint64_t budget = 200000;
  /// Random tuples tried after the deterministic phase.
  std::uint64_t random_budget = 20000;
  std::uint64_t seed = 0;
  /// Largest coefficient radius of the integer grid search over Q.
  std::uint64_t max_radius = 12;
};

/// u[i] lies in perp(L(ys[i])) on the E side, and every nonzero 0/1
/// combination of the u[i] avoids every forbidden set.
struct AvoidingFamily {
  std::vector<Vector> u;
  std::uint32_t m = 1;
  std::vector<AffineSubspace> forbidden;
};

struct FamilySearch {
  std::optional<AvoidingFamily> family;
  /// The whole candidate space was searched; no family exists.
  bool exhausted = false;
  std::uint64_t nodes = 0;
  bool sampled = false;
  /// Q only: largest coefficient used.
  std::uint64_t radius = 0;
};

/// Searches for a family for `ys` avoiding `forbidden`. Over F_p the search
/// walks the product of the perp(L(Y)) point sets in lexicographic order
/// (first member most significant) and then samples; over Q it grows an
/// integer grid greedily.
FamilySearch find_avoiding_family(const DualPair& dp, const Arrangement& ys, const std::vector<AffineSubspace>& forbidden,
                                  const SearchOptions& options = {});

/// Family whose combinations u avoid x1 - X for all X in xs, so that
/// x1 - u misses the union of xs.
FamilySearch find_avoiding_family(const DualPair& dp, const Arrangement& ys, const Arrangement& xs, const Vector& x1,
                                  const SearchOptions& options = {});

/// Independent re-check of the family invariants.
bool verify_family(const DualPair& dp, const Arrangement& ys, const AvoidingFamily& family);

/// One factor (T_u - c) with c the value of zeta^<u, .> on y.
struct CancelTarget {
  Point u;
  AffineSubspace y;
  FieldScalar c;
};

/// Targets for a family over the finite model: c_Y = zeta^<u_Y, base(Y)>.
std::vector<CancelTarget> make_targets(const SpacePtr& space, const AvoidingFamily& family, const Arrangement& ys);

struct ExpansionTerm {
  std::vector<std::uint8_t> a;
  Point u;
  FieldScalar c;
};

struct CancelResult {
  Distribution d_prime;
  /// All 2^k terms c_a T_{u_a} of the product, in binary order of a.
  std::vector<ExpansionTerm> expansion;
};

/// Applies prod (T_u - c) to d. The operator product, its group-ring
/// expansion and the closed-form coefficients are computed separately and
/// must agree (VerificationFailed otherwise). Throws ConstancyViolation if
/// some u is not orthogonal to L(y).
CancelResult multiplier_cancel(const Distribution& d, const std::vector<CancelTarget>& targets);

struct EliminationReport {
  std::size_t x1_index = 0;
  /// Points of X1 outside every other member.
  std::vector<std::size_t> free_points;
  /// Free points where some basis element is nonzero.
  std::vector<std::size_t> residual_points;
  bool vacuous() const { return free_points.empty(); }
  bool holds() const { return residual_points.empty(); }
};

/// Checks that every basis element vanishes on X1 minus the other members.
/// Throws HypothesisViolated unless (X1, Y) is thin for every Y.
EliminationReport check_elimination(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                    std::size_t x1_index, const std::vector<Distribution>& basis);

struct EliminationCertificate {
  std::size_t x1_index = 0;
  /// (point index, family) for each free point of X1.
  std::vector<std::pair<std::size_t, AvoidingFamily>> families;
  /// Free point for which no family was found.
  std::optional<std::size_t> failed_point;
  bool exhausted = false;
  bool complete() const { return !failed_point.has_value(); }
};

/// Families proving that D vanishes at each free point of X1.
EliminationCertificate elimination_certificate(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                               std::size_t x1_index, const SearchOptions& options = {});

/// Certifies removing xs[remove[0]], xs[remove[1]], ... in that order, each
/// against the members still present, so that the space of (xs, ys) equals
/// the space without them. Returns the number of points certified. Throws
/// ModelTooSmall (naming `where`) if some point has no avoiding family.
std::size_t certify_removal(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                            const std::vector<std::size_t>& remove, const SearchOptions& options,
                            const std::string& where);
/// The same on the Fourier side: removes members of ys thin against all of xs.
std::size_t certify_dual_removal(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                 const std::vector<std::size_t>& remove, const SearchOptions& options,
                                 const std::string& where);

struct PairComponent {
  std::size_t x = 0;
  std::size_t y = 0;
  Distribution d;
};

/// v in perp(X0) with <base(X) - base(X1), v> != 0.
struct SeparationCertificate {
  std::size_t x1 = 0;
  std::size_t x = 0;
  Vector v;
};

struct PureAffineSplit {
  /// perp(X0) is not inside Y0 (or one side is empty); the space is zero.
  bool trivial = false;
  /// One entry per (X, Y), zero entries included.
  std::vector<PairComponent> components;
  std::vector<SeparationCertificate> certificates;
};

/// Splits d in the space of (xs, ys), where xs are cosets of one subspace
/// and ys cosets of one subspace, into its (X, Y) parts.
PureAffineSplit pure_affine_split(const Distribution& d, const Arrangement& xs, const Arrangement& ys);

struct Dec2Blocks {
  LinearSubspace x0;
  LinearSubspace y0;
  Arrangement xs0;
  Arrangement ys0;
  Arrangement xs_rest;
  Arrangement ys_rest;
};

/// The d-independent part of a two-block split.
struct Dec2Plan {
  Dec2Blocks blocks;
  AvoidingFamily family;
  std::vector<CancelTarget> targets;
  FieldScalar c0;
  /// Members of xs0 met by a translate u_a + X' of a rest member.
  Arrangement meet;
  std::uint64_t search_nodes = 0;
  /// Points covered by the elimination certificates of the split.
  std::size_t certified_points = 0;
};

/// Checks the thin hypotheses and finds the family. Throws
/// HypothesisViolated or ModelTooSmall.
Dec2Plan prepare_dec2(const SpacePtr& space, const Dec2Blocks& blocks, const SearchOptions& options = {},
                      const std::string& where = "two-block split");

struct Dec2Split {
  Distribution component0;
  Distribution remainder;
};

/// d = component0 + remainder with component0 in the space of (xs0, ys0) and
/// remainder in the space of (xs_rest, ys_rest). Throws SupportViolation if
/// d or one of the parts fails its support conditions.
Dec2Split apply_dec2(const Distribution& d, const Dec2Plan& plan);
Dec2Split dec2_split(const Distribution& d, const Dec2Blocks& blocks, const SearchOptions& options = {});

struct PlanLevel {
  /// Original indices of the members kept after pruning.
  std::vector<std::size_t> xs;
  std::vector<std::size_t> ys;
  /// Original indices of the block with linear parts (x0, perp(x0)).
  std::vector<std::size_t> xs0;
  std::vector<std::size_t> ys0;
  /// Points covered by the elimination certificates of the pruning.
  std::size_t pruned_points = 0;
  Dec2Plan dec2;
};

struct DecompositionPlan {
  Arrangement xs;
  Arrangement ys;
  std::vector<PlanLevel> levels;
};

/// Throws ThickPairPresent or ModelTooSmall.
DecompositionPlan plan_decomposition(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                                     const SearchOptions& options = {});

struct DecompositionResult {
  Distribution input;
  /// Nonzero components keyed by original (X, Y) indices, sorted.
  std::vector<PairComponent> components;
  Distribution residual;
  /// Per component: the scalar lambda with component = lambda * mu(X, base(Y)).
  std::vector<FieldScalar> mu_coefficients;
};

DecompositionResult apply_plan(const Distribution& d, const DecompositionPlan& plan);
DecompositionResult theorem_a_decompose(const Distribution& d, const Arrangement& xs, const Arrangement& ys,
                                        const SearchOptions& options = {});

}  // namespace affrig
