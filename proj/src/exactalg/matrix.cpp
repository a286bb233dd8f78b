#include <sstream>
#include <utility>

#include "affrig/exactalg.hpp"

namespace affrig {

ExactMatrix::ExactMatrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, FieldScalar(field)) {}

ExactMatrix ExactMatrix::identity(const FieldDescriptor& field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldScalar::one(field);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const FieldDescriptor& field, std::size_t cols, const std::vector<Vector>& rows) {
  ExactMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionMismatch("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                              ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) throw DescriptorMismatch("matrix entry over " + rows[r][c].field().name());
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Vector ExactMatrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vector> ExactMatrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vector ExactMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector product: length mismatch");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero() && !(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

Vector ExactMatrix::apply_left(const Vector& v) const {
  if (v.size() != rows_) throw DimensionMismatch("vector-matrix product: length mismatch");
  Vector out = zero_vector(field_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r].is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero()) out[c] += v[r] * (*this)(r, c);
    }
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field_ == b.field_)) throw DescriptorMismatch("matrix product over different fields");
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  ExactMatrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) out << ", ";
    out << affrig::to_string(row(r));
  }
  out << "]";
  return out.str();
}

RrefResult rref(const ExactMatrix& m) {
  RrefResult result{m, 0, {}};
  ExactMatrix& a = result.echelon;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (!a(r, col).is_zero()) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a(found, c), a(pivot_row, c));
    }
    if (!a(pivot_row, col).is_one()) {
      const FieldScalar inv = a(pivot_row, col).inverse();
      for (std::size_t c = col; c < cols; ++c) {
        if (!a(pivot_row, c).is_zero()) a(pivot_row, c) *= inv;
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a(r, col).is_zero()) continue;
      const FieldScalar factor = a(r, col);
      for (std::size_t c = col; c < cols; ++c) {
        if (!a(pivot_row, c).is_zero()) a(r, c) -= factor * a(pivot_row, c);
      }
    }
    result.pivots.push_back(col);
    ++pivot_row;
  }
  result.rank = result.pivots.size();
  return result;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

bool is_invertible(const ExactMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.field(), m.cols());
    v[free] = FieldScalar::one(m.field());
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.echelon(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve_affine(const ExactMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_affine: right-hand side length mismatch");
  ExactMatrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const RrefResult r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vector x = zero_vector(a.field(), a.cols());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.echelon(i, a.cols());
  return x;
}

}  // namespace affrig
