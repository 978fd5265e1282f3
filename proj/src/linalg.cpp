#include "leonard/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "leonard/error.hpp"

namespace leonard {

// ---------------------------------------------------------------------------
// ExactVector

ExactVector::ExactVector(const FieldSpec& field, std::size_t dim)
    : field_(field), entries_(dim, FieldElement::zero(field)) {}

ExactVector::ExactVector(std::vector<FieldElement> entries)
    : field_(entries.empty() ? FieldSpec::rationals() : entries.front().field()),
      entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!(e.field() == field_)) throw Error(ErrorKind::FieldMismatch, "vector entries from different fields");
  }
}

ExactVector ExactVector::from_integers(const FieldSpec& field, std::initializer_list<long long> values) {
  std::vector<FieldElement> entries;
  for (long long v : values) entries.push_back(FieldElement::from_integer(field, v));
  ExactVector out(field, 0);
  out.entries_ = std::move(entries);
  return out;
}

bool ExactVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

bool ExactVector::proportional_to(const ExactVector& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (!(entries_[i] * other[j] == entries_[j] * other[i])) return false;
    }
  }
  return true;
}

bool operator==(const ExactVector& lhs, const ExactVector& rhs) {
  return lhs.field_ == rhs.field_ && lhs.entries_ == rhs.entries_;
}

std::string ExactVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i != 0) out += ", ";
    out += entries_[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(const FieldSpec& field, std::size_t dim)
    : field_(field), dim_(dim), entries_(dim * dim, FieldElement::zero(field)) {}

ExactMatrix ExactMatrix::identity(const FieldSpec& field, std::size_t dim) {
  ExactMatrix m(field, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = FieldElement::one(field);
  return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<FieldElement>& diag) {
  if (diag.empty()) throw Error(ErrorKind::DimensionMismatch, "empty diagonal");
  ExactMatrix m(diag.front().field(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (!(diag[i].field() == m.field_)) throw Error(ErrorKind::FieldMismatch, "diagonal entries from different fields");
    m(i, i) = diag[i];
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(const FieldSpec& field, const std::vector<std::vector<FieldElement>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::DimensionMismatch, "matrix has no rows");
  ExactMatrix m(field, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                                    std::to_string(rows[i].size()) + " entries, expected " +
                                                    std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!(rows[i][j].field() == field)) throw Error(ErrorKind::FieldMismatch, "matrix entry from another field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

ExactMatrix ExactMatrix::from_integers(const FieldSpec& field,
                                       std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<FieldElement>> converted;
  for (const auto& row : rows) {
    auto& out = converted.emplace_back();
    for (long long v : row) out.push_back(FieldElement::from_integer(field, v));
  }
  return from_rows(field, converted);
}

ExactMatrix ExactMatrix::from_columns(const std::vector<ExactVector>& columns) {
  if (columns.empty()) throw Error(ErrorKind::DimensionMismatch, "no columns");
  ExactMatrix m(columns.front().field(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].dim() != columns.size()) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < columns.size(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

ExactVector ExactMatrix::column(std::size_t col) const {
  ExactVector v(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, col);
  return v;
}

void ExactMatrix::require_compatible(const ExactMatrix& rhs) const {
  if (!(field_ == rhs.field_)) throw Error(ErrorKind::FieldMismatch, "matrices over different fields");
  if (dim_ != rhs.dim_) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
  require_compatible(rhs);
  ExactMatrix out = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += rhs.entries_[k];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const {
  require_compatible(rhs);
  ExactMatrix out = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] -= rhs.entries_[k];
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  require_compatible(rhs);
  ExactMatrix out(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (!(field_ == v.field())) throw Error(ErrorKind::FieldMismatch, "matrix and vector over different fields");
  if (v.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from matrix dimension");
  ExactVector out(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

ExactMatrix ExactMatrix::scaled(const FieldElement& s) const {
  ExactMatrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

ExactMatrix ExactMatrix::shifted(const FieldElement& lambda) const {
  ExactMatrix out = *this;
  for (std::size_t i = 0; i < dim_; ++i) out(i, i) -= lambda;
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

namespace {

template <typename Keep>
bool zero_outside(const ExactMatrix& m, Keep keep) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (!keep(i, j) && !m(i, j).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

bool ExactMatrix::is_diagonal() const {
  return zero_outside(*this, [](std::size_t i, std::size_t j) { return i == j; });
}

bool ExactMatrix::is_tridiagonal() const {
  return zero_outside(*this, [](std::size_t i, std::size_t j) { return i <= j + 1 && j <= i + 1; });
}

bool ExactMatrix::is_irreducible_tridiagonal() const {
  if (!is_tridiagonal()) return false;
  for (std::size_t i = 1; i < dim_; ++i) {
    if ((*this)(i, i - 1).is_zero() || (*this)(i - 1, i).is_zero()) return false;
  }
  return true;
}

bool ExactMatrix::is_upper_triangular() const {
  return zero_outside(*this, [](std::size_t i, std::size_t j) { return i <= j; });
}

bool ExactMatrix::is_lower_triangular() const {
  return zero_outside(*this, [](std::size_t i, std::size_t j) { return i >= j; });
}

bool operator==(const ExactMatrix& lhs, const ExactMatrix& rhs) {
  return lhs.field_ == rhs.field_ && lhs.dim_ == rhs.dim_ && lhs.entries_ == rhs.entries_;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i == 0 ? "[" : ", [");
    for (std::size_t j = 0; j < dim_; ++j) os << (j == 0 ? "" : ", ") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Determinants

FieldElement determinant_bareiss(const ExactMatrix& m) {
  const std::size_t n = m.dim();
  ExactMatrix a = m;
  FieldElement prev = FieldElement::one(m.field());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return FieldElement::zero(m.field());
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = FieldElement::zero(m.field());
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

namespace {

FieldElement cofactor_expand(const ExactMatrix& m, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  FieldElement total = FieldElement::zero(m.field());
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& entry = m(rows[0], cols[c]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k != c) sub_cols.push_back(cols[k]);
    }
    FieldElement term = entry * cofactor_expand(m, sub_rows, sub_cols);
    if (c % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace

FieldElement determinant_cofactor(const ExactMatrix& m) {
  if (m.dim() > kMaxCofactorDim) {
    throw Error(ErrorKind::DimensionTooLarge,
                "cofactor expansion limited to dim <= " + std::to_string(kMaxCofactorDim));
  }
  std::vector<std::size_t> idx(m.dim());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return cofactor_expand(m, idx, idx);
}

// ---------------------------------------------------------------------------
// Row reduction, kernels, inverses

RowEchelon row_reduce(const ExactMatrix& m) {
  const std::size_t n = m.dim();
  RowEchelon out{m, {}};
  auto& a = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(row, j), a(pivot, j));
    const FieldElement scale = a(row, col).inv();
    for (std::size_t j = col; j < n; ++j) a(row, j) *= scale;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const FieldElement factor = a(i, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const ExactMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  const auto echelon = row_reduce(m);
  const std::size_t n = m.dim();
  std::vector<bool> is_pivot(n, false);
  for (auto c : echelon.pivots) is_pivot[c] = true;

  std::vector<ExactVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ExactVector v(m.field(), n);
    v[free] = FieldElement::one(m.field());
    for (std::size_t r = 0; r < echelon.pivots.size(); ++r) {
      v[echelon.pivots[r]] = -echelon.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactVector eigenvector_for(const ExactMatrix& m, const FieldElement& lambda) {
  auto basis = kernel_basis(m.shifted(lambda));
  if (basis.empty()) throw Error(ErrorKind::NotAnEigenvalue, lambda.to_string() + " is not an eigenvalue");
  if (basis.size() > 1) {
    throw Error(ErrorKind::DegenerateEigenspace,
                "eigenspace of " + lambda.to_string() + " has dimension " + std::to_string(basis.size()));
  }
  ExactVector v = std::move(basis.front());
  std::size_t lead = 0;
  while (v[lead].is_zero()) ++lead;
  const FieldElement scale = v[lead].inv();
  for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= scale;
  return v;
}

ExactMatrix inverse(const ExactMatrix& m) {
  const std::size_t n = m.dim();
  ExactMatrix a = m;
  ExactMatrix inv = ExactMatrix::identity(m.field(), n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularBasisMatrix, "matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(pivot, j));
      std::swap(inv(col, j), inv(pivot, j));
    }
    const FieldElement scale = a(col, col).inv();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const FieldElement factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

ExactMatrix change_basis(const ExactMatrix& m, const ExactMatrix& p) { return inverse(p) * m * p; }

}  // namespace leonard
