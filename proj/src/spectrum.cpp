// Characteristic polynomials and exact recovery of split spectra.

#include <algorithm>
#include <cstdint>
#include <utility>

#include "leonard/error.hpp"
#include "leonard/linalg.hpp"

namespace leonard {

namespace {

using Poly = std::vector<FieldElement>;

Poly multiply_by_linear(const Poly& p, const FieldElement& root) {
  // (x - root) * p
  Poly out(p.size() + 1, FieldElement::zero(root.field()));
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k + 1] += p[k];
    out[k] -= root * p[k];
  }
  return out;
}

// Quotient of p by (x - root); assumes root is a root.
Poly divide_by_linear(const Poly& p, const FieldElement& root) {
  const std::size_t n = p.size() - 1;
  Poly q(n, FieldElement::zero(root.field()));
  FieldElement carry = FieldElement::zero(root.field());
  for (std::size_t k = n; k-- > 0;) {
    carry = p[k + 1] + carry * root;
    q[k] = carry;
  }
  return q;
}

unsigned multiplicity(Poly p, const FieldElement& root) {
  unsigned count = 0;
  while (p.size() > 1 && evaluate_polynomial(p, root).is_zero()) {
    p = divide_by_linear(p, root);
    ++count;
  }
  return count;
}

// --- Rational-root isolation over Q --------------------------------------

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

QPoly derivative(const QPoly& p) {
  QPoly d(p.size() > 1 ? p.size() - 1 : 1, mpq_class(0));
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long>(k);
  return d;
}

QPoly remainder(QPoly num, const QPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  while (num.size() - 1 >= dd && !(num.size() == 1 && sgn(num[0]) == 0)) {
    const mpq_class factor = num.back() / den.back();
    const std::size_t shift = num.size() - 1 - dd;
    for (std::size_t k = 0; k <= dd; ++k) num[k + shift] -= factor * den[k];
    num.pop_back();
    trim(num);
    if (num.size() - 1 < dd) break;
  }
  return num;
}

bool is_zero_poly(const QPoly& p) { return p.size() == 1 && sgn(p[0]) == 0; }

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, derivative(p)};
  trim(seq[1]);
  while (!is_zero_poly(seq.back()) && seq.back().size() > 1) {
    QPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (is_zero_poly(r)) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_variations(const std::vector<QPoly>& seq, const mpq_class& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Integer roots of the monic integer polynomial g in (lo, hi]; a non-integer
// real root surfaces as a unit interval with no integer root and sets `split`.
void isolate(const QPoly& g, const std::vector<QPoly>& seq, const mpz_class& lo, const mpz_class& hi,
             int v_lo, int v_hi, std::vector<mpz_class>& roots, bool& split) {
  if (v_lo - v_hi <= 0) return;
  if (hi - lo == 1) {
    if (sgn(eval(g, mpq_class(hi))) == 0) {
      roots.push_back(hi);
    } else {
      split = false;
    }
    return;
  }
  mpz_class mid = lo + (hi - lo) / 2;
  int v_mid = sign_variations(seq, mpq_class(mid));
  isolate(g, seq, lo, mid, v_lo, v_mid, roots, split);
  isolate(g, seq, mid, hi, v_mid, v_hi, roots, split);
}

std::vector<FieldElement> rational_roots(const Poly& f) {
  const FieldSpec field = f.front().field();
  const std::size_t n = f.size() - 1;

  mpz_class denom = 1;
  for (const auto& c : f) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.rational().get_den_mpz_t());

  // g(y) = D^n f(y / D) is monic with integer coefficients; its roots are D r.
  QPoly g(n + 1);
  mpz_class power = 1;  // D^(n-k)
  for (std::size_t k = n + 1; k-- > 0;) {
    g[k] = f[k].rational() * mpq_class(power);
    power *= denom;
  }

  mpz_class bound = 1;
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class mag = abs(g[k].get_num());
    if (mag + 1 > bound) bound = mag + 1;
  }
  bound += 1;

  const auto seq = sturm_sequence(g);
  std::vector<mpz_class> roots;
  bool split = true;
  const mpz_class lo = -bound;
  isolate(g, seq, lo, bound, sign_variations(seq, mpq_class(lo)), sign_variations(seq, mpq_class(bound)), roots,
          split);

  std::vector<FieldElement> out;
  for (const auto& y : roots) {
    out.push_back(FieldElement::from_integer(field, y) / FieldElement::from_integer(field, denom));
  }
  return out;
}

constexpr std::uint64_t kMaxEnumeratedModulus = std::uint64_t{1} << 22;

}  // namespace

FieldElement evaluate_polynomial(const std::vector<FieldElement>& coeffs, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

std::vector<FieldElement> characteristic_polynomial(const ExactMatrix& m) {
  const std::size_t n = m.dim();
  const FieldSpec& field = m.field();

  // Similarity reduction to upper Hessenberg form.
  ExactMatrix h = m;
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t target = col + 1;
    std::size_t pivot = target;
    while (pivot < n && h(pivot, col).is_zero()) ++pivot;
    if (pivot == n) continue;
    if (pivot != target) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(pivot, j), h(target, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, pivot), h(i, target));
    }
    const FieldElement inv_pivot = h(target, col).inv();
    for (std::size_t row = target + 1; row < n; ++row) {
      const FieldElement u = h(row, col) * inv_pivot;
      if (u.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) h(row, j) -= u * h(target, j);
      for (std::size_t i = 0; i < n; ++i) h(i, target) += u * h(i, row);
    }
  }

  // p_k = det(x I - H_k) for the leading k x k block.
  std::vector<Poly> p;
  p.push_back({FieldElement::one(field)});
  for (std::size_t k = 1; k <= n; ++k) {
    Poly next = multiply_by_linear(p[k - 1], h(k - 1, k - 1));
    FieldElement t = FieldElement::one(field);
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      const FieldElement coeff = h(k - i - 1, k - 1) * t;
      if (coeff.is_zero()) continue;
      for (std::size_t c = 0; c < p[k - i - 1].size(); ++c) next[c] -= coeff * p[k - i - 1][c];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

std::vector<FieldElement> split_spectrum(const ExactMatrix& m) {
  const auto f = characteristic_polynomial(m);
  const FieldSpec& field = m.field();
  std::vector<FieldElement> roots;
  if (field.is_prime()) {
    if (field.modulus() >= kMaxEnumeratedModulus) {
      throw Error(ErrorKind::SpectrumUnavailable,
                  "eigenvalue enumeration needs p < 2^22; supply the spectrum or a triangular basis");
    }
    for (std::uint64_t r = 0; r < field.modulus(); ++r) {
      auto x = FieldElement::from_integer(field, static_cast<long long>(r));
      if (evaluate_polynomial(f, x).is_zero()) roots.push_back(x);
    }
  } else {
    roots = rational_roots(f);
  }
  for (const auto& r : roots) {
    if (multiplicity(f, r) > 1) {
      throw Error(ErrorKind::RepeatedEigenvalue, "eigenvalue " + r.to_string() + " is repeated");
    }
  }
  if (roots.size() != m.dim()) {
    throw Error(ErrorKind::SpectrumNotSplit, "characteristic polynomial has only " + std::to_string(roots.size()) +
                                                 " distinct roots in the field, need " + std::to_string(m.dim()));
  }
  return roots;
}

}  // namespace leonard
