#include <algorithm>
#include <sstream>
#include <utility>

#include "affrig/exactalg.hpp"

namespace affrig {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("F_p requires a prime p, got " + std::to_string(p));
  return {FieldKind::PrimeField, p};
}

FieldDescriptor FieldDescriptor::cyclotomic(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("Q(zeta_p) requires a prime p, got " + std::to_string(p));
  return {FieldKind::Cyclotomic, p};
}

std::string FieldDescriptor::name() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::PrimeField:
      return "F_" + std::to_string(p_);
    case FieldKind::Cyclotomic:
      return "Q(zeta_" + std::to_string(p_) + ")";
  }
  return "?";
}

namespace {

using detail::CyclotomicValue;

std::uint32_t mod_p(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_p(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

void normalize(CyclotomicValue& c) {
  if (sgn(c.den) < 0) {
    c.den = -c.den;
    for (auto& x : c.num) x = -x;
  }
  bool all_zero = true;
  for (const auto& x : c.num) {
    if (sgn(x) != 0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    c.den = 1;
    return;
  }
  if (c.den == 1) return;
  mpz_class g = c.den;
  for (const auto& x : c.num) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  c.den /= g;
  for (auto& x : c.num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Reduce a length-p coefficient vector modulo Phi_p = 1 + z + ... + z^(p-1).
std::vector<mpz_class> reduce_full(std::vector<mpz_class>&& full) {
  const std::size_t p = full.size();
  const mpz_class top = full[p - 1];
  full.pop_back();
  if (sgn(top) != 0) {
    for (auto& x : full) x -= top;
  }
  return std::move(full);
}

CyclotomicValue cyc_zero(std::uint32_t p) {
  CyclotomicValue c;
  c.num.assign(p - 1, 0);
  return c;
}

CyclotomicValue cyc_add(const CyclotomicValue& a, const CyclotomicValue& b, bool subtract) {
  CyclotomicValue r;
  const std::size_t n = a.num.size();
  r.num.resize(n);
  if (a.den == b.den) {
    for (std::size_t i = 0; i < n; ++i) r.num[i] = subtract ? mpz_class(a.num[i] - b.num[i]) : mpz_class(a.num[i] + b.num[i]);
    r.den = a.den;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      r.num[i] = a.num[i] * b.den;
      if (subtract) {
        mpz_submul(r.num[i].get_mpz_t(), b.num[i].get_mpz_t(), a.den.get_mpz_t());
      } else {
        mpz_addmul(r.num[i].get_mpz_t(), b.num[i].get_mpz_t(), a.den.get_mpz_t());
      }
    }
    r.den = a.den * b.den;
  }
  normalize(r);
  return r;
}

CyclotomicValue cyc_product(const CyclotomicValue& a, const CyclotomicValue& b) {
  const std::size_t p1 = a.num.size();
  const std::size_t p = p1 + 1;
  std::vector<mpz_class> full(p, 0);
  for (std::size_t i = 0; i < p1; ++i) {
    if (sgn(a.num[i]) == 0) continue;
    for (std::size_t j = 0; j < p1; ++j) {
      if (sgn(b.num[j]) == 0) continue;
      std::size_t k = i + j;
      if (k >= p) k -= p;
      mpz_addmul(full[k].get_mpz_t(), a.num[i].get_mpz_t(), b.num[j].get_mpz_t());
    }
  }
  CyclotomicValue r;
  r.num = reduce_full(std::move(full));
  r.den = a.den * b.den;
  normalize(r);
  return r;
}

// sigma_k: zeta -> zeta^k.
CyclotomicValue cyc_galois(const CyclotomicValue& a, std::size_t k) {
  const std::size_t p1 = a.num.size();
  const std::size_t p = p1 + 1;
  std::vector<mpz_class> full(p, 0);
  for (std::size_t j = 0; j < p1; ++j) full[(j * k) % p] += a.num[j];
  CyclotomicValue r;
  r.num = reduce_full(std::move(full));
  r.den = a.den;
  normalize(r);
  return r;
}

bool cyc_is_zero(const CyclotomicValue& a) {
  return std::all_of(a.num.begin(), a.num.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

// alpha^-1 = (prod_{k=2}^{p-1} sigma_k(alpha)) / N(alpha).
CyclotomicValue cyc_inverse(const CyclotomicValue& a) {
  const std::size_t p = a.num.size() + 1;
  CyclotomicValue prod = cyc_zero(static_cast<std::uint32_t>(p));
  prod.num[0] = 1;
  for (std::size_t k = 2; k < p; ++k) prod = cyc_product(prod, cyc_galois(a, k));
  CyclotomicValue norm = cyc_product(a, prod);
  for (std::size_t i = 1; i < norm.num.size(); ++i) {
    if (sgn(norm.num[i]) != 0) throw VerificationFailed("cyclotomic norm is not rational");
  }
  // prod / (norm.num[0] / norm.den)
  CyclotomicValue r;
  r.num.resize(prod.num.size());
  for (std::size_t i = 0; i < prod.num.size(); ++i) r.num[i] = prod.num[i] * norm.den;
  r.den = prod.den * norm.num[0];
  normalize(r);
  return r;
}

CyclotomicValue cyc_from_coordinates(std::uint32_t p, const std::vector<mpq_class>& coords) {
  if (coords.size() != p - 1 && coords.size() != p) {
    throw DimensionMismatch("Q(zeta_" + std::to_string(p) + ") element needs " + std::to_string(p - 1) +
                            " coordinates, got " + std::to_string(coords.size()));
  }
  mpz_class common = 1;
  for (const auto& q : coords) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> full(p, 0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    full[i] = coords[i].get_num() * (common / coords[i].get_den());
  }
  CyclotomicValue r;
  r.num = reduce_full(std::move(full));
  r.den = common;
  normalize(r);
  return r;
}

mpq_class canonical(const mpq_class& q) {
  mpq_class r = q;
  r.canonicalize();
  return r;
}

}  // namespace

FieldScalar::FieldScalar(const FieldDescriptor& field) : field_(field) {
  switch (field.kind()) {
    case FieldKind::Rationals:
      value_ = mpq_class(0);
      break;
    case FieldKind::PrimeField:
      value_ = std::uint32_t{0};
      break;
    case FieldKind::Cyclotomic:
      value_ = cyc_zero(field.p());
      break;
  }
}

FieldScalar FieldScalar::from_integer(const FieldDescriptor& field, long long value) {
  return from_integer(field, mpz_class(static_cast<long>(value)));
}

FieldScalar FieldScalar::from_integer(const FieldDescriptor& field, const mpz_class& value) {
  FieldScalar s(field);
  switch (field.kind()) {
    case FieldKind::Rationals:
      s.value_ = mpq_class(value);
      break;
    case FieldKind::PrimeField:
      s.value_ = mod_p(value, field.p());
      break;
    case FieldKind::Cyclotomic: {
      auto c = cyc_zero(field.p());
      c.num[0] = value;
      s.value_ = std::move(c);
      break;
    }
  }
  return s;
}

FieldScalar FieldScalar::from_rational(const FieldDescriptor& field, const mpq_class& value) {
  const mpq_class q = canonical(value);
  FieldScalar s(field);
  switch (field.kind()) {
    case FieldKind::Rationals:
      s.value_ = q;
      break;
    case FieldKind::PrimeField: {
      const std::uint32_t den = mod_p(q.get_den(), field.p());
      if (den == 0) {
        throw InvalidInput("denominator of " + q.get_str() + " is divisible by " + std::to_string(field.p()));
      }
      const std::uint64_t num = mod_p(q.get_num(), field.p());
      s.value_ = static_cast<std::uint32_t>(num * inverse_mod(den, field.p()) % field.p());
      break;
    }
    case FieldKind::Cyclotomic: {
      std::vector<mpq_class> coords(field.p() - 1, mpq_class(0));
      coords[0] = q;
      s.value_ = cyc_from_coordinates(field.p(), coords);
      break;
    }
  }
  return s;
}

FieldScalar FieldScalar::from_coordinates(std::uint32_t p, const std::vector<mpq_class>& coords) {
  FieldScalar s(FieldDescriptor::cyclotomic(p));
  s.value_ = cyc_from_coordinates(p, coords);
  return s;
}

FieldScalar FieldScalar::from_payload(std::uint32_t p, detail::CyclotomicValue value) {
  if (value.num.size() != p - 1) throw DimensionMismatch("cyclotomic payload has wrong length");
  normalize(value);
  FieldScalar s(FieldDescriptor::cyclotomic(p));
  s.value_ = std::move(value);
  return s;
}

const detail::CyclotomicValue& FieldScalar::cyclotomic_payload() const {
  if (!field_.is_cyclotomic()) throw DescriptorMismatch("not a cyclotomic scalar: " + field_.name());
  return std::get<CyclotomicValue>(value_);
}

bool FieldScalar::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::Rationals:
      return sgn(std::get<mpq_class>(value_)) == 0;
    case FieldKind::PrimeField:
      return std::get<std::uint32_t>(value_) == 0;
    case FieldKind::Cyclotomic:
      return cyc_is_zero(std::get<CyclotomicValue>(value_));
  }
  return false;
}

bool FieldScalar::is_one() const { return *this == one(field_); }

const mpq_class& FieldScalar::rational() const {
  if (!field_.is_rationals()) throw DescriptorMismatch("not a rational scalar: " + field_.name());
  return std::get<mpq_class>(value_);
}

std::uint32_t FieldScalar::residue() const {
  if (!field_.is_prime_field()) throw DescriptorMismatch("not a prime-field scalar: " + field_.name());
  return std::get<std::uint32_t>(value_);
}

std::vector<mpq_class> FieldScalar::coordinates() const {
  switch (field_.kind()) {
    case FieldKind::Rationals:
      return {std::get<mpq_class>(value_)};
    case FieldKind::PrimeField:
      return {mpq_class(std::get<std::uint32_t>(value_))};
    case FieldKind::Cyclotomic: {
      const auto& c = std::get<CyclotomicValue>(value_);
      std::vector<mpq_class> out;
      out.reserve(c.num.size());
      for (const auto& x : c.num) out.push_back(canonical(mpq_class(x, c.den)));
      return out;
    }
  }
  return {};
}

std::optional<mpq_class> FieldScalar::as_rational() const {
  switch (field_.kind()) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(value_);
    case FieldKind::PrimeField:
      return std::nullopt;
    case FieldKind::Cyclotomic: {
      const auto& c = std::get<CyclotomicValue>(value_);
      for (std::size_t i = 1; i < c.num.size(); ++i) {
        if (sgn(c.num[i]) != 0) return std::nullopt;
      }
      return canonical(mpq_class(c.num[0], c.den));
    }
  }
  return std::nullopt;
}

void FieldScalar::require_same_field(const FieldScalar& other) const {
  if (!(field_ == other.field_)) {
    throw DescriptorMismatch("field mismatch: " + field_.name() + " vs " + other.field_.name());
  }
}

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero");
  FieldScalar r(field_);
  switch (field_.kind()) {
    case FieldKind::Rationals:
      r.value_ = mpq_class(1) / std::get<mpq_class>(value_);
      break;
    case FieldKind::PrimeField:
      r.value_ = inverse_mod(std::get<std::uint32_t>(value_), field_.p());
      break;
    case FieldKind::Cyclotomic:
      r.value_ = cyc_inverse(std::get<CyclotomicValue>(value_));
      break;
  }
  return r;
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar r(field_);
  switch (field_.kind()) {
    case FieldKind::Rationals:
      r.value_ = mpq_class(-std::get<mpq_class>(value_));
      break;
    case FieldKind::PrimeField: {
      const std::uint32_t v = std::get<std::uint32_t>(value_);
      r.value_ = v == 0 ? 0U : field_.p() - v;
      break;
    }
    case FieldKind::Cyclotomic: {
      CyclotomicValue c = std::get<CyclotomicValue>(value_);
      for (auto& x : c.num) x = -x;
      r.value_ = std::move(c);
      break;
    }
  }
  return r;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& other) {
  require_same_field(other);
  switch (field_.kind()) {
    case FieldKind::Rationals:
      std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
      break;
    case FieldKind::PrimeField: {
      const std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} + std::get<std::uint32_t>(other.value_);
      value_ = static_cast<std::uint32_t>(s % field_.p());
      break;
    }
    case FieldKind::Cyclotomic:
      value_ = cyc_add(std::get<CyclotomicValue>(value_), std::get<CyclotomicValue>(other.value_), false);
      break;
  }
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& other) {
  require_same_field(other);
  switch (field_.kind()) {
    case FieldKind::Rationals:
      std::get<mpq_class>(value_) -= std::get<mpq_class>(other.value_);
      break;
    case FieldKind::PrimeField: {
      const std::uint64_t s =
          std::uint64_t{std::get<std::uint32_t>(value_)} + field_.p() - std::get<std::uint32_t>(other.value_);
      value_ = static_cast<std::uint32_t>(s % field_.p());
      break;
    }
    case FieldKind::Cyclotomic:
      value_ = cyc_add(std::get<CyclotomicValue>(value_), std::get<CyclotomicValue>(other.value_), true);
      break;
  }
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& other) {
  require_same_field(other);
  switch (field_.kind()) {
    case FieldKind::Rationals:
      std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
      break;
    case FieldKind::PrimeField: {
      const std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} * std::get<std::uint32_t>(other.value_);
      value_ = static_cast<std::uint32_t>(s % field_.p());
      break;
    }
    case FieldKind::Cyclotomic:
      value_ = cyc_product(std::get<CyclotomicValue>(value_), std::get<CyclotomicValue>(other.value_));
      break;
  }
  return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& other) {
  require_same_field(other);
  return *this *= other.inverse();
}

bool operator==(const FieldScalar& a, const FieldScalar& b) {
  if (!(a.field_ == b.field_)) return false;
  switch (a.field_.kind()) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    case FieldKind::PrimeField:
      return std::get<std::uint32_t>(a.value_) == std::get<std::uint32_t>(b.value_);
    case FieldKind::Cyclotomic: {
      const auto& x = std::get<detail::CyclotomicValue>(a.value_);
      const auto& y = std::get<detail::CyclotomicValue>(b.value_);
      return x.den == y.den && x.num == y.num;
    }
  }
  return false;
}

int compare(const FieldScalar& a, const FieldScalar& b) {
  a.require_same_field(b);
  switch (a.field_.kind()) {
    case FieldKind::Rationals:
      return cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    case FieldKind::PrimeField: {
      const auto x = std::get<std::uint32_t>(a.value_);
      const auto y = std::get<std::uint32_t>(b.value_);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case FieldKind::Cyclotomic: {
      const auto ca = a.coordinates();
      const auto cb = b.coordinates();
      for (std::size_t i = 0; i < ca.size(); ++i) {
        const int c = cmp(ca[i], cb[i]);
        if (c != 0) return c < 0 ? -1 : 1;
      }
      return 0;
    }
  }
  return 0;
}

std::string FieldScalar::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(value_).get_str();
    case FieldKind::PrimeField:
      return std::to_string(std::get<std::uint32_t>(value_));
    case FieldKind::Cyclotomic: {
      std::ostringstream out;
      bool first = true;
      const auto coords = coordinates();
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (sgn(coords[i]) == 0) continue;
        if (!first) out << (sgn(coords[i]) > 0 ? " + " : " - ");
        if (first && sgn(coords[i]) < 0) out << "-";
        const mpq_class mag = abs(coords[i]);
        if (i == 0) {
          out << mag.get_str();
        } else {
          if (mag != 1) out << mag.get_str() << "*";
          out << "z";
          if (i > 1) out << "^" << i;
        }
        first = false;
      }
      return first ? "0" : out.str();
    }
  }
  return "?";
}

FieldScalar zeta_pow(const FieldDescriptor& cyclotomic, long long k) {
  if (!cyclotomic.is_cyclotomic()) throw DescriptorMismatch("zeta_pow needs Q(zeta_p), got " + cyclotomic.name());
  const std::uint32_t p = cyclotomic.p();
  const std::uint32_t r = mod_p(k, p);
  CyclotomicValue c = cyc_zero(p);
  if (r < p - 1) {
    c.num[r] = 1;
  } else {
    for (auto& x : c.num) x = -1;
  }
  return FieldScalar::from_payload(p, std::move(c));
}

FieldScalar cyc_mul(const FieldScalar& x, const FieldScalar& y) {
  if (!x.field().is_cyclotomic() || !(x.field() == y.field())) {
    throw DescriptorMismatch("cyc_mul needs two elements of the same Q(zeta_p): " + x.field().name() + " vs " +
                             y.field().name());
  }
  return x * y;
}

FieldScalar times_zeta_pow(const FieldScalar& x, long long k) {
  const auto& c = x.cyclotomic_payload();
  const std::uint32_t p = x.field().p();
  const std::uint32_t r = mod_p(k, p);
  if (r == 0) return x;
  std::vector<mpz_class> full(p, 0);
  for (std::size_t j = 0; j + 1 < p; ++j) full[(j + r) % p] = c.num[j];
  CyclotomicValue out;
  out.num = reduce_full(std::move(full));
  out.den = c.den;
  return FieldScalar::from_payload(p, std::move(out));
}

Vector zero_vector(const FieldDescriptor& field, std::size_t n) { return Vector(n, FieldScalar(field)); }

Vector unit_vector(const FieldDescriptor& field, std::size_t n, std::size_t i) {
  Vector v = zero_vector(field, n);
  v.at(i) = FieldScalar::one(field);
  return v;
}

Vector integer_vector(const FieldDescriptor& field, const std::vector<long long>& values) {
  Vector v;
  v.reserve(values.size());
  for (long long x : values) v.push_back(FieldScalar::from_integer(field, x));
  return v;
}

namespace {
void require_same_length(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}
}  // namespace

Vector add(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const FieldScalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

Vector negate(const Vector& v) {
  Vector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(-x);
  return r;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldScalar& x) { return x.is_zero(); });
}

int compare(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string to_string(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

}  // namespace affrig
