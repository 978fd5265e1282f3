#include "leonard/qbracket.hpp"

#include "leonard/error.hpp"

namespace leonard {

BetaContext beta_of(const Sequence& eigs) {
  if (eigs.size() < 4) {
    throw Error(ErrorKind::NotEnoughTerms, "beta needs d >= 3, got d = " + std::to_string(eigs.size() - 1));
  }
  const std::size_t d = eigs.size() - 1;
  std::optional<FieldElement> ratio;
  for (std::size_t i = 2; i + 1 <= d; ++i) {
    const FieldElement den = eigs[i - 1] - eigs[i];
    if (den.is_zero()) {
      throw Error(ErrorKind::RatioInconsistent, "zero denominator at i = " + std::to_string(i));
    }
    FieldElement r = (eigs[i - 2] - eigs[i + 1]) / den;
    if (!ratio) {
      ratio = r;
    } else if (!(r == *ratio)) {
      throw Error(ErrorKind::RatioInconsistent, "ratio at i = " + std::to_string(i) + " is " + r.to_string() +
                                                    ", expected " + ratio->to_string());
    }
  }
  return BetaContext{d, *ratio - FieldElement::one(ratio->field()), true};
}

BetaContext beta_context_for(const Sequence& eigs, const std::optional<FieldElement>& chosen) {
  if (eigs.size() >= 4) return beta_of(eigs);
  const FieldSpec& field = eigs.front().field();
  return BetaContext{eigs.size() - 1, chosen.value_or(FieldElement::from_integer(field, 2)), false};
}

FieldElement q_bracket_odd(long n, const BetaContext& ctx) {
  if (n % 2 == 0) throw Error(ErrorKind::EvenIndexUnsupported, "[" + std::to_string(n) + "]_q needs q itself");
  if (n < 1) throw Error(ErrorKind::IndexOutOfRange, "bracket index " + std::to_string(n) + " < 1");
  const FieldSpec& field = ctx.beta.field();
  FieldElement prev = -FieldElement::one(field);  // [-1]
  FieldElement cur = FieldElement::one(field);    // [1]
  for (long k = 1; k < n; k += 2) {
    FieldElement next = ctx.beta * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void assert_odd_brackets_nonzero(std::size_t d, const BetaContext& ctx) {
  for (std::size_t i = 1; i <= d; i += 2) {
    if (q_bracket_odd(static_cast<long>(i), ctx).is_zero()) {
      throw Error(ErrorKind::BracketVanished, "[" + std::to_string(i) + "]_q = 0 with beta = " + ctx.beta.to_string());
    }
  }
}

}  // namespace leonard
