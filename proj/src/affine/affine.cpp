#include "affrig/affine.hpp"

#include <utility>

namespace affrig {

std::string to_string(Side s) { return s == Side::E ? "E" : "F"; }

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::Thin:
      return "Thin";
    case PairClass::Perfect:
      return "Perfect";
    case PairClass::Thick:
      return "Thick";
  }
  return "?";
}

DualPair::DualPair(ExactMatrix pairing) : pairing_(std::move(pairing)) {
  if (pairing_.field().is_cyclotomic()) throw InvalidInput("pairing must be over Q or F_p");
  if (pairing_.rows() != pairing_.cols()) throw InvalidInput("pairing matrix must be square");
  if (!is_invertible(pairing_)) throw InvalidInput("pairing matrix is singular");
}

DualPair DualPair::standard(const FieldDescriptor& field, std::size_t n) {
  return DualPair(ExactMatrix::identity(field, n));
}

FieldScalar DualPair::pair(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("pairing: vector length mismatch");
  const Vector by = pairing_.apply(y);
  FieldScalar s(field());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) s += x[i] * by[i];
  }
  return s;
}

DualPair DualPair::transposed() const { return DualPair(pairing_.transpose()); }

LinearSubspace LinearSubspace::zero(const FieldDescriptor& field, std::size_t n) { return linear_span(field, n, {}); }

LinearSubspace LinearSubspace::full(const FieldDescriptor& field, std::size_t n) {
  return linear_span(field, n, ExactMatrix::identity(field, n).row_vectors());
}

LinearSubspace linear_span(const FieldDescriptor& field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) {
      throw DimensionMismatch("generator of length " + std::to_string(v.size()) + " in a space of dimension " +
                              std::to_string(ambient_dim));
    }
  }
  LinearSubspace s;
  s.field_ = field;
  s.ambient_dim_ = ambient_dim;
  if (vectors.empty()) return s;
  const RrefResult r = rref(ExactMatrix::from_rows(field, ambient_dim, vectors));
  for (std::size_t i = 0; i < r.rank; ++i) s.basis_.push_back(r.echelon.row(i));
  s.pivots_ = r.pivots;
  return s;
}

Vector LinearSubspace::reduce(const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("reduce: vector length mismatch");
  Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const FieldScalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
      if (!basis_[i][j].is_zero()) r[j] -= c * basis_[i][j];
    }
  }
  return r;
}

bool LinearSubspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool LinearSubspace::contains(const LinearSubspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("contains: ambient dimensions differ");
  if (other.dim() > dim()) return false;
  for (const auto& v : other.basis_) {
    if (!contains(v)) return false;
  }
  return true;
}

bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
  return a.field_ == b.field_ && a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
}

int compare(const LinearSubspace& a, const LinearSubspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const int c = compare(a.basis_[i], b.basis_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string LinearSubspace::to_string() const {
  std::string s = "span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i > 0) s += ", ";
    s += affrig::to_string(basis_[i]);
  }
  return s + "}";
}

namespace {

void require_same_ambient(const LinearSubspace& a, const LinearSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field())) {
    throw DimensionMismatch("subspaces live in different spaces");
  }
}

void require_same_space(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.side() != b.side()) throw InvalidInput("affine subspaces live on different sides");
  require_same_ambient(a.linear(), b.linear());
}

}  // namespace

LinearSubspace subspace_sum(const LinearSubspace& a, const LinearSubspace& b) {
  require_same_ambient(a, b);
  std::vector<Vector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return linear_span(a.field(), a.ambient_dim(), gens);
}

LinearSubspace subspace_intersection(const LinearSubspace& a, const LinearSubspace& b) {
  require_same_ambient(a, b);
  const std::size_t n = a.ambient_dim();
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da == 0 || db == 0) return LinearSubspace::zero(a.field(), n);
  // sum alpha_i a_i - sum beta_j b_j = 0
  ExactMatrix m(a.field(), n, da + db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.basis()[i][r];
  }
  for (std::size_t j = 0; j < db; ++j) {
    for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.basis()[j][r];
  }
  std::vector<Vector> gens;
  for (const auto& k : kernel_basis(m)) {
    Vector v = zero_vector(a.field(), n);
    for (std::size_t i = 0; i < da; ++i) {
      if (!k[i].is_zero()) v = add(v, scale(k[i], a.basis()[i]));
    }
    gens.push_back(std::move(v));
  }
  return linear_span(a.field(), n, gens);
}

LinearSubspace perp(const DualPair& dp, const LinearSubspace& l, Side side) {
  if (l.ambient_dim() != dp.dim() || !(l.field() == dp.field())) {
    throw DimensionMismatch("perp: subspace does not live in the dual pair's spaces");
  }
  const std::size_t n = dp.dim();
  if (l.dim() == 0) return LinearSubspace::full(dp.field(), n);
  // E side: rows l_i^T B; F side: rows l_i^T B^T.
  const ExactMatrix& b = dp.pairing();
  ExactMatrix rows(dp.field(), l.dim(), n);
  for (std::size_t i = 0; i < l.dim(); ++i) {
    const Vector r = side == Side::E ? b.apply_left(l.basis()[i]) : b.apply(l.basis()[i]);
    for (std::size_t c = 0; c < n; ++c) rows(i, c) = r[c];
  }
  return linear_span(dp.field(), n, kernel_basis(rows));
}

AffineSubspace::AffineSubspace(Side side, const Vector& base, LinearSubspace linear)
    : side_(side), linear_(std::move(linear)) {
  if (base.size() != linear_.ambient_dim()) throw DimensionMismatch("affine base point has the wrong length");
  base_ = linear_.reduce(base);
}

AffineSubspace AffineSubspace::point(Side side, const Vector& v) {
  if (v.empty()) return AffineSubspace(side, v, LinearSubspace::zero(FieldDescriptor::rationals(), 0));
  return AffineSubspace(side, v, LinearSubspace::zero(v.front().field(), v.size()));
}

AffineSubspace AffineSubspace::through_origin(Side side, LinearSubspace linear) {
  const Vector origin = zero_vector(linear.field(), linear.ambient_dim());
  return AffineSubspace(side, origin, std::move(linear));
}

AffineSubspace AffineSubspace::full(Side side, const FieldDescriptor& field, std::size_t n) {
  return through_origin(side, LinearSubspace::full(field, n));
}

bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
  return a.side_ == b.side_ && a.linear_ == b.linear_ && a.base_ == b.base_;
}

int compare(const AffineSubspace& a, const AffineSubspace& b) {
  const int c = compare(a.linear_, b.linear_);
  if (c != 0) return c;
  return compare(a.base_, b.base_);
}

std::string AffineSubspace::to_string() const {
  if (linear_.dim() == 0) return "{" + affrig::to_string(base_) + "}";
  if (is_zero(base_)) return linear_.to_string();
  return affrig::to_string(base_) + " + " + linear_.to_string();
}

PairClass classify_linear(const DualPair& dp, const LinearSubspace& x_linear, const LinearSubspace& y_linear) {
  const LinearSubspace annihilator = perp(dp, x_linear, Side::E);
  if (!y_linear.contains(annihilator)) return PairClass::Thin;
  return annihilator.dim() == y_linear.dim() ? PairClass::Perfect : PairClass::Thick;
}

PairClass classify_pair(const DualPair& dp, const AffineSubspace& x, const AffineSubspace& y) {
  if (x.side() != Side::E || y.side() != Side::F) throw InvalidInput("classify_pair expects X on E and Y on F");
  return classify_linear(dp, x.linear(), y.linear());
}

PairClass classify_pair_dual(const DualPair& dp, const AffineSubspace& x, const AffineSubspace& y) {
  if (x.side() != Side::E || y.side() != Side::F) throw InvalidInput("classify_pair expects X on E and Y on F");
  const LinearSubspace annihilator = perp(dp, y.linear(), Side::F);
  if (!x.linear().contains(annihilator)) return PairClass::Thin;
  return annihilator.dim() == x.linear().dim() ? PairClass::Perfect : PairClass::Thick;
}

AffineSubspace affine_translate(const Vector& u, const AffineSubspace& x) {
  return AffineSubspace(x.side(), add(u, x.base()), x.linear());
}

std::optional<AffineSubspace> affine_intersection(const AffineSubspace& a, const AffineSubspace& b) {
  require_same_space(a, b);
  const std::size_t n = a.ambient_dim();
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  // base_a + sum alpha_i a_i = base_b + sum beta_j b_j
  ExactMatrix m(a.field(), n, da + db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.linear().basis()[i][r];
  }
  for (std::size_t j = 0; j < db; ++j) {
    for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.linear().basis()[j][r];
  }
  const auto sol = solve_affine(m, sub(b.base(), a.base()));
  if (!sol) return std::nullopt;
  Vector pt = a.base();
  for (std::size_t i = 0; i < da; ++i) {
    if (!(*sol)[i].is_zero()) pt = add(pt, scale((*sol)[i], a.linear().basis()[i]));
  }
  return AffineSubspace(a.side(), pt, subspace_intersection(a.linear(), b.linear()));
}

AffineSubspace affine_difference(const AffineSubspace& a, const AffineSubspace& b) {
  require_same_space(a, b);
  return AffineSubspace(a.side(), sub(a.base(), b.base()), subspace_sum(a.linear(), b.linear()));
}

bool affine_contains(const AffineSubspace& x, const Vector& v) {
  if (v.size() != x.ambient_dim()) throw DimensionMismatch("affine_contains: vector length mismatch");
  return x.linear().contains(sub(v, x.base()));
}

AffineSubspace affine_negate(const AffineSubspace& x) { return AffineSubspace(x.side(), negate(x.base()), x.linear()); }

bool affine_subset(const AffineSubspace& a, const AffineSubspace& b) {
  require_same_space(a, b);
  return b.linear().contains(a.linear()) && affine_contains(b, a.base());
}

}  // namespace affrig
