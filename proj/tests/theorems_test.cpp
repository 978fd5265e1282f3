#include <random>

#include "doctest.h"
#include "leonard/error.hpp"
#include "leonard/theorems.hpp"
#include "oracles.hpp"

using namespace leonard;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

FieldElement q(const char* text) { return FieldElement::parse(kQ, text); }

Sequence ints(const FieldSpec& f, std::initializer_list<long long> values) {
  Sequence s;
  for (auto v : values) s.push_back(FieldElement::from_integer(f, v));
  return s;
}

TridiagonalData dual_data(const LeonardPairMatrices& m) { return dual_eigenbasis_form(m).second; }
TridiagonalData primal_data(const LeonardPairMatrices& m) { return primal_eigenbasis_form(m).second; }

FieldElement split_product(const ParameterArray& pa) {
  auto acc = FieldElement::one(pa.field());
  for (std::size_t i = 1; i <= pa.d; i += 2) acc = acc * pa.first_split[i - 1] * pa.second_split[i - 1];
  return acc;
}

/// Affine images a A + b, a* A* + b* of the built-in pair are Leonard pairs too.
LeonardPairMatrices affine_krawtchouk(std::size_t d, const FieldSpec& f, long a, long b, long as, long bs) {
  const auto k = krawtchouk_pair(d, f);
  const auto id = ExactMatrix::identity(f, d + 1);
  return LeonardPairMatrices(BasisTag::other,
                             k.A.scaled(FieldElement::from_integer(f, a)) + id.scaled(FieldElement::from_integer(f, b)),
                             k.A_star.scaled(FieldElement::from_integer(f, as)) +
                                 id.scaled(FieldElement::from_integer(f, bs)));
}

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected " << error_name(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("determinant closed forms at diameter one") {
  TridiagonalData t{1, ints(kQ, {0, 0}), ints(kQ, {1}), ints(kQ, {1}), ints(kQ, {1, -1})};
  CHECK(det_commutator_recursive(t).to_string() == "4");
  CHECK(rhs_det1(t).to_string() == "4");
}

TEST_CASE("determinant closed forms on the built-in family") {
  const auto k3 = krawtchouk_pair(3, kQ);
  CHECK(det_commutator_recursive(dual_data(k3)).to_string() == "144");
  CHECK(rhs_det1(dual_data(k3)).to_string() == "144");
  CHECK(rhs_det1_star(primal_data(k3)).to_string() == "144");
  const auto pa3 = extract_parameter_array(k3);
  CHECK(rhs_det2(pa3, beta_context_for(pa3.theta)).to_string() == "144");
  const auto pa1 = extract_parameter_array(krawtchouk_pair(1, kQ));
  CHECK(rhs_det2(pa1, beta_context_for(pa1.theta)).to_string() == "4");

  const auto k5 = krawtchouk_pair(5, kQ);
  const auto det5 = oracle::det(commutator(k5));
  CHECK(det_commutator_recursive(dual_data(k5)) == det5);
  CHECK(rhs_det1_star(primal_data(k5)) == rhs_det1(dual_data(k5)));

  const auto k2 = krawtchouk_pair(2, kQ);
  expect_error(ErrorKind::EvenD, [&] { rhs_det1(dual_data(k2)); });
  expect_error(ErrorKind::EvenD, [&] { rhs_det1_star(primal_data(k2)); });
  const auto pa2 = extract_parameter_array(k2);
  expect_error(ErrorKind::EvenD, [&] { rhs_det2(pa2, beta_context_for(pa2.theta)); });
  expect_error(ErrorKind::EvenD, [&] { psi(pa2.theta_star, 2); });
  expect_error(ErrorKind::EvenD, [&] { eq_left_eval(pa2); });
}

TEST_CASE("null vectors") {
  const auto k2 = krawtchouk_pair(2, kQ);
  CHECK(gamma_vector(dual_data(k2)) == ExactVector::from_integers(kQ, {1, 0, 1}));
  CHECK(gamma_star_vector(primal_data(k2)) == ExactVector::from_integers(kQ, {1, 0, 1}));
  for (std::size_t d : {2u, 4u, 6u}) {
    const auto k = krawtchouk_pair(d, kQ);
    const auto [dual, t] = dual_eigenbasis_form(k);
    const auto g = gamma_vector(t);
    CHECK(g[0].is_one());
    CHECK(g[1].is_zero());
    CHECK((commutator(dual) * g).is_zero());
    const auto [primal, ts] = primal_eigenbasis_form(k);
    const auto gs = gamma_star_vector(ts);
    CHECK(gs[1].is_zero());
    CHECK((commutator(primal) * gs).is_zero());
  }
  expect_error(ErrorKind::OddD, [] { gamma_vector(dual_data(krawtchouk_pair(3, kQ))); });
  expect_error(ErrorKind::OddD, [] { gamma_star_vector(primal_data(krawtchouk_pair(3, kQ))); });
}

TEST_CASE("tau and eta polynomials") {
  const auto ts = ints(kQ, {3, 1, -1, -3});
  CHECK(tau_star_eval(0, q("5"), ts).is_one());
  CHECK(eta_star_eval(0, q("5"), ts).is_one());
  CHECK(tau_star_eval(2, ts[2], ts).to_string() == "8");
  CHECK(eta_star_eval(2, ts[1], ts).to_string() == "8");
  for (std::size_t i = 0; i <= 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(tau_star_eval(i, ts[j], ts).is_zero());
      CHECK(eta_star_eval(i, ts[3 - j], ts).is_zero());
    }
  }
}

TEST_CASE("b c products from split sequences") {
  const auto pa1 = extract_parameter_array(krawtchouk_pair(1, kQ));
  CHECK(bc_product(pa1, 1).is_one());
  const auto k5 = krawtchouk_pair(5, kQ);
  const auto pa5 = extract_parameter_array(k5);
  const auto t5 = dual_data(k5);
  for (std::size_t i = 1; i <= 5; ++i) CHECK(bc_product(pa5, i) == t5.b_at(i - 1) * t5.c_at(i));
}

TEST_CASE("psi and the left-hand factor") {
  CHECK(psi(ints(kQ, {1, -1}), 1).is_one());
  CHECK(psi(ints(kQ, {3, 1, -1, -3}), 3).to_string() == "1/3");
  CHECK(psi(ints(kQ, {5, 3, 1, -1, -3, -5}), 5).to_string() == "1/15");
  CHECK(eq_left_eval(extract_parameter_array(krawtchouk_pair(1, kQ))).to_string() == "-1");
  CHECK(eq_left_eval(extract_parameter_array(krawtchouk_pair(3, kQ))).to_string() == "1/9");
  for (std::size_t d = 1; d <= 9; d += 2) {
    const auto k = krawtchouk_pair(d, kQ);
    const auto pa = extract_parameter_array(k);
    const long m = static_cast<long>((d - 1) / 2);
    const auto p = psi(pa.theta_star, d);
    const auto sign = FieldElement::from_integer(kQ, m % 2 == 0 ? -1 : 1);
    CHECK(eq_left_eval(pa) == sign * p * p);
    CHECK(determinant_bareiss(commutator(k)) == split_product(pa) * eq_left_eval(pa));
    const auto ctx = beta_context_for(pa.theta_star);
    auto brackets = FieldElement::one(kQ);
    for (long i = 1; i <= static_cast<long>(d); i += 2) brackets = brackets * q_bracket_odd(i, ctx);
    CHECK((p * brackets).is_one());
  }
}

TEST_CASE("commutator structure is predicted entrywise") {
  std::mt19937_64 rng(13);
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto moved = [&] {
      const auto k = affine_krawtchouk(d, kQ, 3, -1, -2, 5);
      const auto p = oracle::random_invertible(kQ, d + 1, rng);
      return LeonardPairMatrices(BasisTag::other, change_basis(k.A, p), change_basis(k.A_star, p));
    }();
    const auto [dual, t] = dual_eigenbasis_form(moved);
    const auto predicted = predicted_commutator(t);
    CHECK(predicted == commutator(dual));
    CHECK(predicted.is_tridiagonal());
    for (std::size_t i = 0; i <= d; ++i) CHECK(predicted(i, i).is_zero());
  }
}

TEST_CASE("admissible index tuples") {
  for (std::size_t d = 1; d <= 7; ++d) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = i + 1; j <= d; ++j)
        for (std::size_t r = 0; r <= d; ++r)
          for (std::size_t s = r + 1; s <= d; ++s)
            if (i + j == r + s && (i + j) % 2 == 1) ++expected;
    const auto tuples = admissible_ratio_tuples(d);
    CHECK(tuples.size() == expected);
    for (const auto& t : tuples) {
      CHECK(t.i < t.j);
      CHECK(t.r < t.s);
      CHECK(t.i + t.j == t.r + t.s);
      CHECK((t.i + t.j) % 2 == 1);
    }
  }
}

TEST_CASE("eigenvalue ratios follow from the three-term recurrence") {
  // Any sequence x_{i+1} = (beta+1)(x_i - x_{i-1}) + x_{i-2} has
  // (x_i - x_j)/(x_r - x_s) = [j-i]/[s-r] whenever i + j = r + s is odd.
  std::mt19937_64 rng(29);
  for (const auto& field : {kQ, FieldSpec::prime(101)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t d = 3 + trial % 5;
      const auto beta = oracle::random_element(field, rng);
      Sequence x{oracle::random_element(field, rng), oracle::random_element(field, rng),
                 oracle::random_element(field, rng)};
      const auto one = FieldElement::one(field);
      while (x.size() <= d) {
        const std::size_t n = x.size();
        x.push_back((beta + one) * (x[n - 1] - x[n - 2]) + x[n - 3]);
      }
      const BetaContext ctx{d, beta, false};
      for (const auto& t : admissible_ratio_tuples(d)) {
        const auto lhs = (x[t.i] - x[t.j]) * oracle::bracket_value(static_cast<long>(t.s - t.r), beta);
        const auto rhs = (x[t.r] - x[t.s]) * q_bracket_odd(static_cast<long>(t.j - t.i), ctx);
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("full verification of the built-in family") {
  const auto r3 = verify_all(krawtchouk_pair(3, kQ));
  CHECK(r3.passed());
  for (const auto& row : r3.checks) {
    const bool even_only = row.name == "span_gamma" || row.name == "span_gamma_star";
    CHECK_MESSAGE(row.status == (even_only ? CheckStatus::skipped : CheckStatus::pass), row.name);
  }
  CHECK(r3.find("det1")->left_value == "144");

  const auto r4 = verify_all(krawtchouk_pair(4, kQ));
  CHECK(r4.passed());
  CHECK(r4.find("rank")->left_value == "1");
  for (const char* name : {"det1", "det1s", "det_recursive", "det2", "psi_prop2", "eq_left_lemma1"}) {
    CHECK(r4.find(name)->status == CheckStatus::skipped);
  }
  CHECK(r4.find("span_gamma")->status == CheckStatus::pass);
  CHECK(r4.find("span_gamma_star")->status == CheckStatus::pass);
}

TEST_CASE("gate failure skips everything downstream") {
  auto broken = krawtchouk_pair(3, kQ);
  broken.A(1, 2) = FieldElement::zero(kQ);
  const auto r = verify_all(broken);
  CHECK_FALSE(r.passed());
  REQUIRE(r.checks.size() == kCheckNames.size());
  CHECK(r.checks.front().name == "leonard_pair");
  CHECK(r.checks.front().status == CheckStatus::fail);
  CHECK(r.checks.front().detail.find("NotTridiagonalizable") != std::string::npos);
  for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i].status == CheckStatus::skipped);
}

TEST_CASE("full verification on transformed and searched pairs") {
  std::mt19937_64 rng(31);
  for (std::size_t d = 1; d <= 7; ++d) {
    const auto k = affine_krawtchouk(d, kQ, -2, 3, 5, -7);
    const auto p = oracle::random_invertible(kQ, d + 1, rng);
    const LeonardPairMatrices moved(BasisTag::other, change_basis(k.A, p), change_basis(k.A_star, p));
    const auto r = verify_all(moved);
    CHECK_MESSAGE(r.passed(), "d = " << d);
  }
  for (std::size_t d = 1; d <= 4; ++d) {
    for (const auto& pa : search_parameter_arrays(d, FieldSpec::prime(13), 3)) {
      const auto r = verify_parameter_array(pa);
      CHECK_MESSAGE(r.passed(), "d = " << d);
      for (const auto& row : r.checks) CHECK(row.status != CheckStatus::fail);
    }
  }
}

TEST_CASE("verification is deterministic for a fixed seed") {
  const auto k = krawtchouk_pair(5, kQ);
  const auto a = verify_all(k, VerifyOptions{7});
  const auto b = verify_all(k, VerifyOptions{7});
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].detail == b.checks[i].detail);
}

TEST_CASE("a parameter array must reproduce itself") {
  auto pa = extract_parameter_array(krawtchouk_pair(3, kQ));
  CHECK(verify_parameter_array(pa).passed());
}
