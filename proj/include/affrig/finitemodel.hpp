#pragma once

// The finite model E = F = F_p^n. Distributions are Q(zeta_p)-valued
// functions on the p^n points, the character is psi(t) = zeta^t, and the
// Fourier transform is the character sum
//
//   FT(D)(y) = sum_x zeta^<x,y> D(x).
//
// Points are enumerated lexicographically: index = sum_i x_i p^(n-1-i).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "affrig/arrangement.hpp"

namespace affrig {

using Point = std::vector<std::uint32_t>;

class FiniteSpace {
 public:
  /// Largest p^n accepted by the constructor.
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 20;

  /// Throws InvalidInput unless the pairing is over F_p and p^n <= kMaxPoints.
  explicit FiniteSpace(DualPair dp);

  std::uint32_t p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  const DualPair& dual_pair() const noexcept { return dp_; }
  const FieldDescriptor& scalars() const noexcept { return dp_.field(); }
  const FieldDescriptor& values() const noexcept { return values_; }

  Point point(std::size_t index) const;
  std::size_t index(const Point& x) const;
  Vector to_vector(const Point& x) const;
  Point to_point(const Vector& v) const;

  /// <x, y> in [0, p), x on E and y on F.
  std::uint32_t pairing(const Point& x, const Point& y) const;
  /// B y, so that <x, y> = x . (B y).
  Point apply_pairing(const Point& y) const;
  /// B^T x, so that <x, y> = (B^T x) . y.
  Point apply_pairing_transposed(const Point& x) const;

  Point add(const Point& a, const Point& b) const;
  Point sub(const Point& a, const Point& b) const;
  Point neg(const Point& a) const;

  /// Sorted indices of the points of x.
  std::vector<std::size_t> points_of(const AffineSubspace& x) const;
  std::vector<bool> indicator(const AffineSubspace& x) const;
  std::vector<bool> indicator(const Arrangement& xs) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b);

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::size_t size_;
  DualPair dp_;
  FieldDescriptor values_;
  std::vector<std::uint32_t> b_;  // row-major residues of the pairing matrix
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(const DualPair& dp);

class Distribution {
 public:
  /// The zero function on `side`.
  Distribution(SpacePtr space, Side side);
  /// Throws DimensionMismatch / DescriptorMismatch on wrong length or value field.
  Distribution(SpacePtr space, Side side, std::vector<FieldScalar> values);

  static Distribution delta(SpacePtr space, Side side, const Point& x);

  const SpacePtr& space() const noexcept { return space_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<FieldScalar>& values() const noexcept { return values_; }
  const FieldScalar& operator[](std::size_t index) const { return values_[index]; }
  const FieldScalar& at(const Point& x) const;

  std::vector<std::size_t> support() const;
  bool is_zero() const;
  /// Every nonzero value sits on a point where `allowed` is true.
  bool supported_in(const std::vector<bool>& allowed) const;

  Distribution& operator+=(const Distribution& other);
  Distribution& operator-=(const Distribution& other);
  Distribution& operator*=(const FieldScalar& s);
  friend Distribution operator+(Distribution a, const Distribution& b) { return a += b; }
  friend Distribution operator-(Distribution a, const Distribution& b) { return a -= b; }
  friend Distribution operator*(const FieldScalar& s, Distribution d) { return d *= s; }
  friend bool operator==(const Distribution& a, const Distribution& b);

 private:
  void require_compatible(const Distribution& other) const;

  SpacePtr space_;
  Side side_;
  std::vector<FieldScalar> values_;
};

/// E -> F: y |-> sum_x zeta^<x,y> D(x).  F -> E: x |-> sum_y zeta^<x,y> G(y).
Distribution fourier(const Distribution& d);
/// Inverse of `fourier` on either side: p^-n sum zeta^-<x,y> (.).
Distribution fourier_inverse(const Distribution& d);

/// (T_u D)(x) = D(x - u); u lives on the same side as d.
Distribution translate(const Point& u, const Distribution& d);
/// Pointwise product with zeta^<u, .>; u lives on the side opposite to d.
Distribution multiplier(const Point& u, const Distribution& d);

/// zeta^-<x, y0> on the points x of X (an E-side subspace), zero elsewhere.
Distribution mu_basis(const SpacePtr& space, const AffineSubspace& x, const Point& y0);

Distribution restrict(const Distribution& d, const AffineSubspace& x);
Distribution restrict(const Distribution& d, const std::vector<bool>& allowed);

/// d is supported in the union of xs and FT(d) in the union of ys.
bool in_space(const Distribution& d, const Arrangement& xs, const Arrangement& ys);

enum class OracleMethod {
  /// Rows are selected modulo a prime ideal of Z[zeta], the kernel is lifted
  /// by CRT and rational reconstruction, and each vector is checked exactly.
  Modular,
  /// Plain exact elimination over Q(zeta_p). Slow; meant for cross-checks.
  Exact,
};

struct SpaceBasis {
  std::size_t dimension = 0;
  /// Reduced row-echelon basis over the point indices.
  std::vector<Distribution> basis;
  /// Which coordinates carried the unknowns: "support" (values of D on the
  /// union of xs) or "spectrum" (values of FT(D) on the union of ys).
  std::string parametrization;
  std::size_t primes_used = 0;
};

/// All D with supp(D) in the union of xs and supp(FT(D)) in the union of ys,
/// computed as the kernel of the corresponding linear system.
SpaceBasis space_basis(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys,
                       OracleMethod method = OracleMethod::Modular);

/// Reduced row-echelon form of a family of distributions on one side.
std::vector<Distribution> echelon_basis(const std::vector<Distribution>& family);
/// Rank of a family of distributions.
std::size_t family_rank(const std::vector<Distribution>& family);
/// d lies in the span of an echelon basis (as produced by echelon_basis).
bool in_span(const std::vector<Distribution>& echelon, const Distribution& d);

}  // namespace affrig
