#pragma once

// Exact scalars over Q, F_p and Q(zeta_p), and dense matrix algebra with
// canonical reduced row-echelon forms. Nothing here uses floating point.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "affrig/errors.hpp"

namespace affrig {

bool is_prime(std::uint64_t n);

enum class FieldKind { Rationals, PrimeField, Cyclotomic };

class FieldDescriptor {
 public:
  FieldDescriptor() = default;  // Q

  static FieldDescriptor rationals() { return {}; }
  /// Throws InvalidInput unless p is prime.
  static FieldDescriptor prime_field(std::uint32_t p);
  /// Q(zeta_p) in the power basis 1, zeta, ..., zeta^(p-2). Throws unless p is prime.
  static FieldDescriptor cyclotomic(std::uint32_t p);

  FieldKind kind() const noexcept { return kind_; }
  /// The prime, or 0 for Q.
  std::uint32_t p() const noexcept { return p_; }
  bool is_rationals() const noexcept { return kind_ == FieldKind::Rationals; }
  bool is_prime_field() const noexcept { return kind_ == FieldKind::PrimeField; }
  bool is_cyclotomic() const noexcept { return kind_ == FieldKind::Cyclotomic; }

  std::string name() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  FieldDescriptor(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_ = FieldKind::Rationals;
  std::uint32_t p_ = 0;
};

namespace detail {

/// num[0] + num[1] zeta + ... + num[p-2] zeta^(p-2), all over den.
/// Canonical: den > 0 and gcd(den, num...) = 1; zero has den = 1.
struct CyclotomicValue {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

}  // namespace detail

class FieldScalar {
 public:
  /// The zero of `field`.
  explicit FieldScalar(const FieldDescriptor& field = FieldDescriptor::rationals());

  static FieldScalar zero(const FieldDescriptor& field) { return FieldScalar(field); }
  static FieldScalar one(const FieldDescriptor& field) { return from_integer(field, 1); }
  static FieldScalar from_integer(const FieldDescriptor& field, long long value);
  static FieldScalar from_integer(const FieldDescriptor& field, const mpz_class& value);
  /// In F_p the fraction is mapped to num * den^-1; throws InvalidInput if p | den.
  static FieldScalar from_rational(const FieldDescriptor& field, const mpq_class& value);
  /// Cyclotomic element from p-1 power-basis coordinates, or p coordinates
  /// (1, zeta, ..., zeta^(p-1)) which are reduced modulo Phi_p.
  static FieldScalar from_coordinates(std::uint32_t p, const std::vector<mpq_class>& coords);

  const FieldDescriptor& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Q only.
  const mpq_class& rational() const;
  /// F_p only; value in [0, p).
  std::uint32_t residue() const;
  /// Power-basis coordinates for Q(zeta_p) (length p-1); a single coordinate otherwise.
  std::vector<mpq_class> coordinates() const;
  /// Q(zeta_p) elements that happen to be rational, and all of Q, report their value.
  std::optional<mpq_class> as_rational() const;

  FieldScalar inverse() const;
  FieldScalar operator-() const;
  FieldScalar& operator+=(const FieldScalar& other);
  FieldScalar& operator-=(const FieldScalar& other);
  FieldScalar& operator*=(const FieldScalar& other);
  FieldScalar& operator/=(const FieldScalar& other);

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b);

  /// Total order inside one field (value order on Q, residue order on F_p,
  /// lexicographic on cyclotomic coordinates). Used for canonical orderings only.
  friend int compare(const FieldScalar& a, const FieldScalar& b);

  std::string to_string() const;

  /// Raw cyclotomic payload; used by the Fourier engine.
  const detail::CyclotomicValue& cyclotomic_payload() const;
  static FieldScalar from_payload(std::uint32_t p, detail::CyclotomicValue value);

 private:
  void require_same_field(const FieldScalar& other) const;

  FieldDescriptor field_;
  std::variant<mpq_class, std::uint32_t, detail::CyclotomicValue> value_;
};

/// zeta^k in Q(zeta_p); k is taken modulo p.
FieldScalar zeta_pow(const FieldDescriptor& cyclotomic, long long k);
/// Product of two cyclotomic scalars; throws DescriptorMismatch otherwise.
FieldScalar cyc_mul(const FieldScalar& x, const FieldScalar& y);
/// x * zeta^k, computed as a coordinate rotation.
FieldScalar times_zeta_pow(const FieldScalar& x, long long k);

using Vector = std::vector<FieldScalar>;

Vector zero_vector(const FieldDescriptor& field, std::size_t n);
Vector unit_vector(const FieldDescriptor& field, std::size_t n, std::size_t i);
Vector integer_vector(const FieldDescriptor& field, const std::vector<long long>& values);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const FieldScalar& s, const Vector& v);
Vector negate(const Vector& v);
bool is_zero(const Vector& v);
int compare(const Vector& a, const Vector& b);
std::string to_string(const Vector& v);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  /// rows x cols zero matrix.
  ExactMatrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(const FieldDescriptor& field, std::size_t n);
  /// Throws DimensionMismatch if a row length differs from `cols`.
  static ExactMatrix from_rows(const FieldDescriptor& field, std::size_t cols,
                               const std::vector<Vector>& rows);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const FieldScalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  FieldScalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  std::vector<Vector> row_vectors() const;
  ExactMatrix transpose() const;
  /// this * v
  Vector apply(const Vector& v) const;
  /// v^T * this
  Vector apply_left(const Vector& v) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  std::string to_string() const;

 private:
  FieldDescriptor field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldScalar> entries_;
};

struct RrefResult {
  ExactMatrix echelon;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form: leftmost pivot column first, the first nonzero
/// row at or below the current one becomes the pivot row, pivots scaled to 1.
RrefResult rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
bool is_invertible(const ExactMatrix& m);

/// Right null space, one vector per free column f (ascending), with a 1 at f
/// and zeros at the other free columns.
std::vector<Vector> kernel_basis(const ExactMatrix& m);

/// A solution of a x = b with all free variables set to zero, or nothing if
/// the system is inconsistent.
std::optional<Vector> solve_affine(const ExactMatrix& a, const Vector& b);

}  // namespace affrig
