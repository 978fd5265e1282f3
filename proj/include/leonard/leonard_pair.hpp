#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leonard/field.hpp"
#include "leonard/linalg.hpp"
#include "leonard/report.hpp"

namespace leonard {

/// (theta_i; theta*_i; phi_i; varphi_i). `first_split[i-1]` holds phi_i, and
/// likewise for `second_split`, so both have length d.
struct ParameterArray {
  std::size_t d = 0;
  Sequence theta;
  Sequence theta_star;
  Sequence first_split;
  Sequence second_split;

  const FieldSpec& field() const { return theta.front().field(); }

  /// Scalar invariants: lengths, distinct eigenvalues, nonzero split
  /// sequences, and (d >= 3) a common beta for theta and theta*. Throws
  /// InvalidParameterArray naming the violated invariant.
  void validate() const;

  friend bool operator==(const ParameterArray&, const ParameterArray&) = default;
};

enum class BasisTag { split, dual_eigenbasis, primal_eigenbasis, other };

std::string_view basis_tag_name(BasisTag tag);
/// Throws ParseError for unknown names.
BasisTag parse_basis_tag(std::string_view name);

/// A pair (A, A*) written in one basis. The optional spectra are known
/// eigenvalue sequences; when present their order is the reference order used
/// to pick among the standard orderings.
struct LeonardPairMatrices {
  BasisTag basis_tag = BasisTag::other;
  ExactMatrix A;
  ExactMatrix A_star;
  std::optional<Sequence> spectrum_A;
  std::optional<Sequence> spectrum_A_star;

  /// Throws DimensionMismatch / FieldMismatch.
  LeonardPairMatrices(BasisTag tag, ExactMatrix a, ExactMatrix a_star);

  std::size_t d() const { return A.dim() - 1; }
  const FieldSpec& field() const { return A.field(); }
};

/// a_0..a_d, b_0..b_{d-1}, c_1..c_d (stored at c[0]..c[d-1]), and the
/// eigenvalues of the diagonal partner in basis order.
struct TridiagonalData {
  std::size_t d = 0;
  Sequence a;
  Sequence b;
  Sequence c;
  Sequence eigenvalues_of_diagonal_partner;

  const FieldElement& b_at(std::size_t i) const { return b.at(i); }
  /// c_i for 1 <= i <= d.
  const FieldElement& c_at(std::size_t i) const { return c.at(i - 1); }
  const FieldElement& eig(std::size_t i) const { return eigenvalues_of_diagonal_partner.at(i); }
};

enum class SplitKind { first, second };

/// Lower-bidiagonal A (subdiagonal 1) and upper-bidiagonal A*. `second`
/// reverses theta and uses the second split sequence.
LeonardPairMatrices build_split_form(const ParameterArray& pa, SplitKind which);

/// Rewrites the pair in an A*-eigenbasis ordered by the standard theta*
/// ordering. Throws RepeatedEigenvalue / SpectrumNotSplit when the spectrum is
/// unusable and NotTridiagonalizable when no ordering makes A irreducible
/// tridiagonal.
std::pair<LeonardPairMatrices, TridiagonalData> dual_eigenbasis_form(const LeonardPairMatrices& m);
/// As above with the theta* ordering given explicitly (no ordering search).
std::pair<LeonardPairMatrices, TridiagonalData> dual_eigenbasis_form(const LeonardPairMatrices& m,
                                                                     const Sequence& theta_star_order);

/// Mirror image: A diagonal, A* irreducible tridiagonal; data holds a*, b*, c*, theta.
std::pair<LeonardPairMatrices, TridiagonalData> primal_eigenbasis_form(const LeonardPairMatrices& m);
std::pair<LeonardPairMatrices, TridiagonalData> primal_eigenbasis_form(const LeonardPairMatrices& m,
                                                                       const Sequence& theta_order);

/// Every eigenvalue ordering of A* (dual) or A (primal) for which the partner
/// becomes irreducible tridiagonal. Throws like dual_eigenbasis_form on an
/// unusable spectrum; returns an empty list when no ordering works.
std::vector<Sequence> dual_standard_orderings(const LeonardPairMatrices& m);
std::vector<Sequence> primal_standard_orderings(const LeonardPairMatrices& m);

/// Outcome of checking both conditions of the Leonard pair definition.
struct PairValidation {
  bool passed = false;
  std::vector<Sequence> theta_star_orderings;
  std::vector<Sequence> theta_orderings;
  /// The orderings chosen as standard (first element earliest in the reference order).
  Sequence theta_star;
  Sequence theta;
  /// "ErrorName: detail" for each failed condition.
  std::vector<std::string> failures;

  CheckRow as_row() const;
};

PairValidation validate_leonard_pair(const LeonardPairMatrices& m);

/// Single-row report ("leonard_pair") with the orderings found.
VerificationReport verify_leonard_pair(const LeonardPairMatrices& m);

/// Reads theta, theta*, phi and varphi off split bases built from an
/// A*-eigenvector. Throws NotLeonardPair, SplitBasisDegenerate,
/// NotUpperBidiagonal, InvalidParameterArray.
ParameterArray extract_parameter_array(const LeonardPairMatrices& m);

/// A A* - A* A in the pair's basis.
ExactMatrix commutator(const LeonardPairMatrices& m);

/// a_i = 0, b_i = d - i, c_i = i, A* = diag(d - 2i). Throws FieldTooSmall when
/// the field cannot hold d + 1 distinct values d - 2i.
LeonardPairMatrices krawtchouk_pair(std::size_t d, const FieldSpec& field);

/// Deterministic enumeration of Leonard parameter arrays over a small prime
/// field, up to `limit` results. Throws SearchGuard for Q or d outside 1..4.
inline constexpr std::size_t kMaxSearchDiameter = 4;
std::vector<ParameterArray> search_parameter_arrays(std::size_t d, const FieldSpec& field, std::size_t limit);

std::string sequence_to_string(const Sequence& s);

}  // namespace leonard
