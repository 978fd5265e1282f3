#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "leonard/field.hpp"

namespace leonard {

class ExactVector {
 public:
  ExactVector(const FieldSpec& field, std::size_t dim);
  explicit ExactVector(std::vector<FieldElement> entries);
  static ExactVector from_integers(const FieldSpec& field, std::initializer_list<long long> values);

  std::size_t dim() const noexcept { return entries_.size(); }
  const FieldSpec& field() const noexcept { return field_; }
  FieldElement& operator[](std::size_t i) { return entries_[i]; }
  const FieldElement& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<FieldElement>& entries() const noexcept { return entries_; }

  bool is_zero() const;
  /// Componentwise proportionality without division: v_i w_j = v_j w_i for all i, j.
  bool proportional_to(const ExactVector& other) const;

  friend bool operator==(const ExactVector&, const ExactVector&);

  /// "(1, 0, 1)"
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<FieldElement> entries_;
};

/// Dense square matrix over one field, rows and columns indexed from 0.
class ExactMatrix {
 public:
  ExactMatrix(const FieldSpec& field, std::size_t dim);
  static ExactMatrix identity(const FieldSpec& field, std::size_t dim);
  static ExactMatrix diagonal(const std::vector<FieldElement>& diag);
  /// Rows must be square and nonempty; entries must share `field`.
  static ExactMatrix from_rows(const FieldSpec& field, const std::vector<std::vector<FieldElement>>& rows);
  static ExactMatrix from_integers(const FieldSpec& field,
                                   std::initializer_list<std::initializer_list<long long>> rows);
  /// Columns are the given vectors.
  static ExactMatrix from_columns(const std::vector<ExactVector>& columns);

  std::size_t dim() const noexcept { return dim_; }
  const FieldSpec& field() const noexcept { return field_; }

  FieldElement& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const FieldElement& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ExactVector column(std::size_t col) const;

  ExactMatrix operator+(const ExactMatrix& rhs) const;
  ExactMatrix operator-(const ExactMatrix& rhs) const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  ExactVector operator*(const ExactVector& v) const;
  ExactMatrix scaled(const FieldElement& s) const;
  /// M - lambda I
  ExactMatrix shifted(const FieldElement& lambda) const;

  bool is_zero() const;
  bool is_diagonal() const;
  bool is_tridiagonal() const;
  /// Tridiagonal with every sub- and superdiagonal entry nonzero.
  bool is_irreducible_tridiagonal() const;
  bool is_upper_triangular() const;
  bool is_lower_triangular() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&);

  /// "[[0, -2], [2, 0]]"
  std::string to_string() const;

 private:
  void require_compatible(const ExactMatrix& rhs) const;

  FieldSpec field_;
  std::size_t dim_;
  std::vector<FieldElement> entries_;
};

/// Fraction-free (Bareiss) elimination, first-nonzero pivoting.
FieldElement determinant_bareiss(const ExactMatrix& m);

/// Laplace expansion along the first row; refuses dim > kMaxCofactorDim.
inline constexpr std::size_t kMaxCofactorDim = 8;
FieldElement determinant_cofactor(const ExactMatrix& m);

struct RowEchelon {
  ExactMatrix reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};
RowEchelon row_reduce(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Basis of {v : Mv = 0}, one vector per free column of the reduced form; the
/// free coordinate is set to 1. Empty iff M is invertible.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

/// Nonzero vector spanning ker(M - lambda I), scaled so its first nonzero entry is 1.
/// Throws NotAnEigenvalue or DegenerateEigenspace.
ExactVector eigenvector_for(const ExactMatrix& m, const FieldElement& lambda);

/// Throws SingularBasisMatrix.
ExactMatrix inverse(const ExactMatrix& m);

/// P^{-1} M P, the matrix of the same map in the basis given by P's columns.
ExactMatrix change_basis(const ExactMatrix& m, const ExactMatrix& p);

/// Coefficients c_0..c_n of det(x I - M), lowest degree first (monic).
std::vector<FieldElement> characteristic_polynomial(const ExactMatrix& m);

FieldElement evaluate_polynomial(const std::vector<FieldElement>& coeffs, const FieldElement& x);

/// Eigenvalues of M when its characteristic polynomial splits into distinct
/// linear factors over the field, in ascending order (numeric over Q, by
/// residue over F_p). Throws RepeatedEigenvalue, SpectrumNotSplit, or
/// SpectrumUnavailable (prime fields with p >= 2^22).
std::vector<FieldElement> split_spectrum(const ExactMatrix& m);

}  // namespace leonard
