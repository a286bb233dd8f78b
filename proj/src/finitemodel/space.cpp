#include <algorithm>
#include <utility>

#include "affrig/finitemodel.hpp"

namespace affrig {

FiniteSpace::FiniteSpace(DualPair dp)
    : p_(dp.field().p()), n_(dp.dim()), size_(1), dp_(std::move(dp)) {
  if (!dp_.field().is_prime_field()) throw InvalidInput("the finite model needs a pairing over F_p");
  for (std::size_t i = 0; i < n_; ++i) {
    size_ *= p_;
    if (size_ > kMaxPoints) throw InvalidInput("p^n exceeds " + std::to_string(kMaxPoints) + " points");
  }
  values_ = FieldDescriptor::cyclotomic(p_);
  b_.resize(n_ * n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) b_[r * n_ + c] = dp_.pairing()(r, c).residue();
  }
}

SpacePtr make_space(const DualPair& dp) { return std::make_shared<const FiniteSpace>(dp); }

Point FiniteSpace::point(std::size_t index) const {
  Point x(n_);
  for (std::size_t i = n_; i-- > 0;) {
    x[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return x;
}

std::size_t FiniteSpace::index(const Point& x) const {
  if (x.size() != n_) throw DimensionMismatch("point has the wrong dimension");
  std::size_t idx = 0;
  for (std::uint32_t c : x) idx = idx * p_ + (c % p_);
  return idx;
}

Vector FiniteSpace::to_vector(const Point& x) const {
  Vector v;
  v.reserve(x.size());
  for (std::uint32_t c : x) v.push_back(FieldScalar::from_integer(scalars(), static_cast<long long>(c)));
  return v;
}

Point FiniteSpace::to_point(const Vector& v) const {
  if (v.size() != n_) throw DimensionMismatch("vector has the wrong dimension");
  Point x;
  x.reserve(n_);
  for (const auto& c : v) x.push_back(c.residue());
  return x;
}

std::uint32_t FiniteSpace::pairing(const Point& x, const Point& y) const {
  std::uint64_t s = 0;
  for (std::size_t r = 0; r < n_; ++r) {
    if (x[r] == 0) continue;
    std::uint64_t row = 0;
    for (std::size_t c = 0; c < n_; ++c) row += std::uint64_t{b_[r * n_ + c]} * y[c];
    s += (row % p_) * x[r];
  }
  return static_cast<std::uint32_t>(s % p_);
}

Point FiniteSpace::apply_pairing(const Point& y) const {
  Point z(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < n_; ++c) s += std::uint64_t{b_[r * n_ + c]} * y[c];
    z[r] = static_cast<std::uint32_t>(s % p_);
  }
  return z;
}

Point FiniteSpace::apply_pairing_transposed(const Point& x) const {
  Point z(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::uint64_t s = 0;
    for (std::size_t r = 0; r < n_; ++r) s += std::uint64_t{b_[r * n_ + c]} * x[r];
    z[c] = static_cast<std::uint32_t>(s % p_);
  }
  return z;
}

Point FiniteSpace::add(const Point& a, const Point& b) const {
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

Point FiniteSpace::sub(const Point& a, const Point& b) const {
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

Point FiniteSpace::neg(const Point& a) const {
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = (p_ - a[i]) % p_;
  return r;
}

std::vector<std::size_t> FiniteSpace::points_of(const AffineSubspace& x) const {
  if (x.ambient_dim() != n_ || !(x.field() == scalars())) {
    throw DimensionMismatch("affine subspace does not live in this finite space");
  }
  const Point base = to_point(x.base());
  std::vector<Point> gens;
  for (const auto& g : x.linear().basis()) gens.push_back(to_point(g));
  const std::size_t d = gens.size();
  std::vector<std::uint32_t> coeff(d, 0);
  std::vector<std::size_t> out;
  while (true) {
    Point pt = base;
    for (std::size_t i = 0; i < d; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) pt[j] = (pt[j] + coeff[i] * gens[i][j]) % p_;
    }
    out.push_back(index(pt));
    std::size_t k = 0;
    while (k < d && ++coeff[k] == p_) coeff[k++] = 0;
    if (k == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> FiniteSpace::indicator(const AffineSubspace& x) const {
  std::vector<bool> in(size_, false);
  for (std::size_t i : points_of(x)) in[i] = true;
  return in;
}

std::vector<bool> FiniteSpace::indicator(const Arrangement& xs) const {
  std::vector<bool> in(size_, false);
  for (const auto& m : xs.members()) {
    for (std::size_t i : points_of(m)) in[i] = true;
  }
  return in;
}

bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
  return a.p_ == b.p_ && a.n_ == b.n_ && a.b_ == b.b_;
}

Distribution::Distribution(SpacePtr space, Side side)
    : space_(std::move(space)), side_(side), values_(space_->size(), FieldScalar(space_->values())) {}

Distribution::Distribution(SpacePtr space, Side side, std::vector<FieldScalar> values)
    : space_(std::move(space)), side_(side), values_(std::move(values)) {
  if (values_.size() != space_->size()) {
    throw DimensionMismatch("distribution needs " + std::to_string(space_->size()) + " values, got " +
                            std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (!(v.field() == space_->values())) throw DescriptorMismatch("distribution value over " + v.field().name());
  }
}

Distribution Distribution::delta(SpacePtr space, Side side, const Point& x) {
  Distribution d(std::move(space), side);
  d.values_[d.space_->index(x)] = FieldScalar::one(d.space_->values());
  return d;
}

const FieldScalar& Distribution::at(const Point& x) const { return values_[space_->index(x)]; }

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_zero()) s.push_back(i);
  }
  return s;
}

bool Distribution::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const FieldScalar& v) { return v.is_zero(); });
}

bool Distribution::supported_in(const std::vector<bool>& allowed) const {
  if (allowed.size() != values_.size()) throw DimensionMismatch("support mask has the wrong size");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!allowed[i] && !values_[i].is_zero()) return false;
  }
  return true;
}

void Distribution::require_compatible(const Distribution& other) const {
  if (side_ != other.side_) throw InvalidInput("distributions live on different sides");
  if (space_ != other.space_ && !(*space_ == *other.space_)) {
    throw InvalidInput("distributions live on different finite spaces");
  }
}

Distribution& Distribution::operator+=(const Distribution& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!other.values_[i].is_zero()) values_[i] += other.values_[i];
  }
  return *this;
}

Distribution& Distribution::operator-=(const Distribution& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!other.values_[i].is_zero()) values_[i] -= other.values_[i];
  }
  return *this;
}

Distribution& Distribution::operator*=(const FieldScalar& s) {
  for (auto& v : values_) {
    if (!v.is_zero()) v *= s;
  }
  return *this;
}

bool operator==(const Distribution& a, const Distribution& b) {
  if (a.side_ != b.side_) return false;
  if (a.space_ != b.space_ && !(*a.space_ == *b.space_)) return false;
  return a.values_ == b.values_;
}

Distribution translate(const Point& u, const Distribution& d) {
  const auto& sp = *d.space();
  std::vector<FieldScalar> out(sp.size(), FieldScalar(sp.values()));
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (d[i].is_zero()) continue;
    out[sp.index(sp.add(sp.point(i), u))] = d[i];
  }
  return Distribution(d.space(), d.side(), std::move(out));
}

Distribution multiplier(const Point& u, const Distribution& d) {
  const auto& sp = *d.space();
  std::vector<FieldScalar> out = d.values();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (out[i].is_zero()) continue;
    const Point pt = sp.point(i);
    const std::uint32_t e = d.side() == Side::F ? sp.pairing(u, pt) : sp.pairing(pt, u);
    out[i] = times_zeta_pow(out[i], e);
  }
  return Distribution(d.space(), d.side(), std::move(out));
}

Distribution mu_basis(const SpacePtr& space, const AffineSubspace& x, const Point& y0) {
  if (x.side() != Side::E) throw InvalidInput("mu_basis expects an E-side subspace");
  std::vector<FieldScalar> out(space->size(), FieldScalar(space->values()));
  for (std::size_t i : space->points_of(x)) {
    out[i] = zeta_pow(space->values(), -static_cast<long long>(space->pairing(space->point(i), y0)));
  }
  return Distribution(space, Side::E, std::move(out));
}

Distribution restrict(const Distribution& d, const std::vector<bool>& allowed) {
  if (allowed.size() != d.size()) throw DimensionMismatch("restriction mask has the wrong size");
  std::vector<FieldScalar> out = d.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!allowed[i]) out[i] = FieldScalar(d.space()->values());
  }
  return Distribution(d.space(), d.side(), std::move(out));
}

Distribution restrict(const Distribution& d, const AffineSubspace& x) {
  if (x.side() != d.side()) throw InvalidInput("restriction to a subspace on the other side");
  return restrict(d, d.space()->indicator(x));
}

bool in_space(const Distribution& d, const Arrangement& xs, const Arrangement& ys) {
  if (d.side() != Side::E) throw InvalidInput("in_space expects an E-side distribution");
  const auto& sp = *d.space();
  if (!d.supported_in(sp.indicator(xs))) return false;
  return fourier(d).supported_in(sp.indicator(ys));
}

}  // namespace affrig
