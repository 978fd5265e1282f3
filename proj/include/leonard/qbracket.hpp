#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "leonard/field.hpp"

namespace leonard {

/// beta, with beta = q^2 + q^-2. For d >= 3 it is forced by the eigenvalue
/// sequence; for d <= 2 it is a free choice and `derived` is false.
struct BetaContext {
  std::size_t d = 0;
  FieldElement beta;
  bool derived = false;

  std::string source() const { return derived ? "derived from eigenvalue sequence" : "chosen (d <= 2)"; }
};

/// beta + 1 = (x_{i-2} - x_{i+1}) / (x_{i-1} - x_i), required equal for
/// 2 <= i <= d-1. Throws NotEnoughTerms for d < 3, RatioInconsistent naming
/// the first i whose ratio differs (or whose denominator vanishes).
BetaContext beta_of(const Sequence& eigs);

/// beta_of for d >= 3; otherwise `chosen` (default 2).
BetaContext beta_context_for(const Sequence& eigs, const std::optional<FieldElement>& chosen = std::nullopt);

/// [n]_q for odd n >= 1 from [n+2] = beta [n] - [n-2], [-1] = -1, [1] = 1.
/// Throws EvenIndexUnsupported for even n, IndexOutOfRange for n < 1.
FieldElement q_bracket_odd(long n, const BetaContext& ctx);

/// Throws BracketVanished naming the first odd i <= d with [i]_q = 0.
void assert_odd_brackets_nonzero(std::size_t d, const BetaContext& ctx);

}  // namespace leonard
