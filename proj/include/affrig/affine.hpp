#pragma once

// Dual pairs, linear and affine subspaces in canonical form, and the
// thin / perfect / thick classification of a pair (X, Y).

#include <cstddef>
#include <string>
#include <vector>

#include "affrig/exactalg.hpp"

namespace affrig {

/// E is the space the distributions live on, F its dual.
enum class Side { E, F };

inline Side opposite(Side s) { return s == Side::E ? Side::F : Side::E; }
std::string to_string(Side s);

/// E x F -> k, <x, y> = x^T B y with B invertible.
class DualPair {
 public:
  /// Throws InvalidInput if B is not square and invertible or is not over Q or F_p.
  explicit DualPair(ExactMatrix pairing);

  static DualPair standard(const FieldDescriptor& field, std::size_t n);

  const FieldDescriptor& field() const noexcept { return pairing_.field(); }
  std::size_t dim() const noexcept { return pairing_.rows(); }
  const ExactMatrix& pairing() const noexcept { return pairing_; }

  FieldScalar pair(const Vector& x, const Vector& y) const;

  /// The same pairing seen from F: <y, x>' = <x, y>.
  DualPair transposed() const;

 private:
  ExactMatrix pairing_;
};

/// A subspace of k^n stored by the reduced row-echelon form of any generating set.
class LinearSubspace {
 public:
  LinearSubspace() = default;

  static LinearSubspace zero(const FieldDescriptor& field, std::size_t n);
  static LinearSubspace full(const FieldDescriptor& field, std::size_t n);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v with its pivot coordinates cleared by subtracting basis rows; the
  /// canonical representative of v + this.
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const LinearSubspace& other) const;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b);
  /// Dimension first, then the canonical basis rows lexicographically.
  friend int compare(const LinearSubspace& a, const LinearSubspace& b);

  std::string to_string() const;

 private:
  friend LinearSubspace linear_span(const FieldDescriptor&, std::size_t, const std::vector<Vector>&);

  FieldDescriptor field_;
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Throws DimensionMismatch if a vector does not have length `ambient_dim`.
LinearSubspace linear_span(const FieldDescriptor& field, std::size_t ambient_dim, const std::vector<Vector>& vectors);
LinearSubspace subspace_sum(const LinearSubspace& a, const LinearSubspace& b);
LinearSubspace subspace_intersection(const LinearSubspace& a, const LinearSubspace& b);

/// Annihilator of `l`, which lives on `side`, taken on the other side.
LinearSubspace perp(const DualPair& dp, const LinearSubspace& l, Side side);

/// base + linear, with base reduced modulo `linear` (zero at its pivot columns).
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(Side side, const Vector& base, LinearSubspace linear);

  static AffineSubspace point(Side side, const Vector& v);
  static AffineSubspace through_origin(Side side, LinearSubspace linear);
  static AffineSubspace full(Side side, const FieldDescriptor& field, std::size_t n);

  Side side() const noexcept { return side_; }
  const Vector& base() const noexcept { return base_; }
  const LinearSubspace& linear() const noexcept { return linear_; }
  std::size_t dim() const noexcept { return linear_.dim(); }
  std::size_t ambient_dim() const noexcept { return linear_.ambient_dim(); }
  const FieldDescriptor& field() const noexcept { return linear_.field(); }

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b);
  friend int compare(const AffineSubspace& a, const AffineSubspace& b);

  std::string to_string() const;

 private:
  Side side_ = Side::E;
  Vector base_;
  LinearSubspace linear_;
};

enum class PairClass { Thin, Perfect, Thick };

std::string to_string(PairClass c);

/// Compares perp(L(X)) with L(Y).
PairClass classify_pair(const DualPair& dp, const AffineSubspace& x, const AffineSubspace& y);
/// The same classification computed from perp(L(Y)) against L(X).
PairClass classify_pair_dual(const DualPair& dp, const AffineSubspace& x, const AffineSubspace& y);
/// Classification of linear parts alone.
PairClass classify_linear(const DualPair& dp, const LinearSubspace& x_linear, const LinearSubspace& y_linear);

AffineSubspace affine_translate(const Vector& u, const AffineSubspace& x);
std::optional<AffineSubspace> affine_intersection(const AffineSubspace& a, const AffineSubspace& b);
/// {u - v : u in a, v in b}.
AffineSubspace affine_difference(const AffineSubspace& a, const AffineSubspace& b);
bool affine_contains(const AffineSubspace& x, const Vector& v);
/// -x = {-u : u in x}.
AffineSubspace affine_negate(const AffineSubspace& x);
/// a is a subset of b.
bool affine_subset(const AffineSubspace& a, const AffineSubspace& b);

}  // namespace affrig
