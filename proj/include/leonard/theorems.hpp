#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "leonard/field.hpp"
#include "leonard/leonard_pair.hpp"
#include "leonard/linalg.hpp"
#include "leonard/qbracket.hpp"
#include "leonard/report.hpp"

namespace leonard {

// Closed forms for the commutator B = AA* - A*A of a Leonard pair. Functions
// taking TridiagonalData expect the dual-eigenbasis data (a_i, b_i, c_i,
// theta*_i); the *_star variants take the primal-eigenbasis data (a*_i, b*_i,
// c*_i, theta_i). Determinant formulas throw EvenD for even d, null-vector
// formulas throw OddD for odd d.

/// det(B) by the continuant recurrence over the predicted tridiagonal
/// entries of B: f_r = B_rr f_{r-1} - B_{r,r-1} B_{r-1,r} f_{r-2}.
FieldElement det_commutator_recursive(const TridiagonalData& t);

/// prod over odd i of b_{i-1} c_i (theta*_{i-1} - theta*_i)^2.
FieldElement rhs_det1(const TridiagonalData& t);
/// prod over odd i of b*_{i-1} c*_i (theta_{i-1} - theta_i)^2.
FieldElement rhs_det1_star(const TridiagonalData& t_star);

/// Null vector of B in the dual eigenbasis; gamma_0 = 1, odd entries zero.
ExactVector gamma_vector(const TridiagonalData& t);
/// Null vector of B in the primal eigenbasis.
ExactVector gamma_star_vector(const TridiagonalData& t_star);

/// B in the dual eigenbasis as predicted entrywise from t:
/// (i, i-1) -> c_i (theta*_{i-1} - theta*_i), (i-1, i) -> b_{i-1} (theta*_i - theta*_{i-1}).
ExactMatrix predicted_commutator(const TridiagonalData& t);

/// (lambda - theta*_0) ... (lambda - theta*_{i-1}).
FieldElement tau_star_eval(std::size_t i, const FieldElement& lambda, const Sequence& theta_star);
/// (lambda - theta*_d) ... (lambda - theta*_{d-i+1}).
FieldElement eta_star_eval(std::size_t i, const FieldElement& lambda, const Sequence& theta_star);

/// b_{i-1} c_i expressed through the split sequences, 1 <= i <= d.
FieldElement bc_product(const ParameterArray& pa, std::size_t i);

/// prod over 0 <= l < k <= m of (theta*_{2l+1} - theta*_{2k}) / (theta*_{2l} - theta*_{2k+1}), m = (d-1)/2.
FieldElement psi(const Sequence& theta_star, std::size_t d);

/// The theta*-only factor of det(B) once b_{i-1} c_i is rewritten with bc_product.
FieldElement eq_left_eval(const ParameterArray& pa);

/// (-1)^{(d+1)/2} prod over odd i of phi_i varphi_i / [i]_q^2. Propagates BracketVanished.
FieldElement rhs_det2(const ParameterArray& pa, const BetaContext& ctx);

/// Index tuples (i, j, r, s) with i < j, r < s, i + j = r + s odd.
struct IndexTuple {
  std::size_t i, j, r, s;
};
std::vector<IndexTuple> admissible_ratio_tuples(std::size_t d);

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t ratio_samples = 100;
  /// beta for d <= 2; ignored when the eigenvalues determine it.
  std::optional<FieldElement> beta;
};

/// Full pipeline: Leonard-pair check, then every closed form against the
/// linear-algebra oracles. Never throws for mathematical failures; they
/// become report rows.
VerificationReport verify_all(const LeonardPairMatrices& m, const VerifyOptions& options = {});

/// verify_all on the first split form of `pa`, additionally requiring that
/// the parameter array extracted from it is `pa` itself.
VerificationReport verify_parameter_array(const ParameterArray& pa, const VerifyOptions& options = {});

}  // namespace leonard
