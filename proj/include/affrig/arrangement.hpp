#pragma once

// Finite families of affine subspaces on one side of a dual pair, and the
// pair-level bookkeeping of the rigidity theorem: thick-pair detection,
// perfect-pair enumeration, pruning of thin members, grouping by linear part
// and the choice of the next block for the induction.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affrig/affine.hpp"

namespace affrig {

class Arrangement {
 public:
  /// Members are deduplicated keeping the first occurrence. Throws
  /// InvalidInput / DimensionMismatch if a member has another side, field or
  /// ambient dimension.
  Arrangement(Side side, const FieldDescriptor& field, std::size_t ambient_dim,
              const std::vector<AffineSubspace>& members = {});

  Side side() const noexcept { return side_; }
  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<AffineSubspace>& members() const noexcept { return members_; }
  const AffineSubspace& operator[](std::size_t i) const { return members_.at(i); }

  std::optional<std::size_t> index_of(const AffineSubspace& x) const;
  /// v lies in the union of the members.
  bool covers(const Vector& v) const;
  Arrangement without(std::size_t index) const;
  Arrangement with(const AffineSubspace& x) const;
  /// Members listed in `indices`, in that order.
  Arrangement subset(const std::vector<std::size_t>& indices) const;

  /// Pairs (i, j) with member i strictly contained in member j.
  std::vector<std::pair<std::size_t, std::size_t>> nested_pairs() const;

  friend bool operator==(const Arrangement& a, const Arrangement& b);

 private:
  Side side_;
  FieldDescriptor field_;
  std::size_t ambient_dim_;
  std::vector<AffineSubspace> members_;
};

/// Indices of a member of xs and a member of ys.
struct MemberPair {
  std::size_t x = 0;
  std::size_t y = 0;
  friend bool operator==(const MemberPair&, const MemberPair&) = default;
};

/// classes[i][j] is the class of (xs[i], ys[j]).
std::vector<std::vector<PairClass>> classify_all(const DualPair& dp, const Arrangement& xs, const Arrangement& ys);

std::optional<MemberPair> has_thick_pair(const DualPair& dp, const Arrangement& xs, const Arrangement& ys);
/// All perfect pairs in row-major input order.
std::vector<MemberPair> perfect_pairs(const DualPair& dp, const Arrangement& xs, const Arrangement& ys);

/// Members of xs (resp. ys) forming at least one non-thin pair.
std::pair<Arrangement, Arrangement> prune_thin(const DualPair& dp, const Arrangement& xs, const Arrangement& ys);

struct LinearGroup {
  LinearSubspace linear;
  std::vector<std::size_t> members;  // indices into the arrangement
};

/// Groups keyed by canonical linear part, in order of first appearance.
std::vector<LinearGroup> group_by_linear_part(const Arrangement& xs);

struct InductionPick {
  LinearSubspace x0;
  LinearSubspace y0;  // perp(x0)
};

/// Picks the linear part of largest dimension (ties: smallest canonical basis)
/// and Y0 = perp(X0), then checks that (X', Y0) and (X0, Y') are thin for all
/// members with other linear parts. Returns nothing iff xs is empty.
/// Throws HypothesisViolated if the check fails.
std::optional<InductionPick> induction_pick(const DualPair& dp, const Arrangement& xs, const Arrangement& ys);

/// All nonempty intersections a ∩ b with a in xs0, b in xs_other, deduplicated.
Arrangement meet_family(const Arrangement& xs0, const Arrangement& xs_other);

}  // namespace affrig
