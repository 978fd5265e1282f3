#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "leonard/error.hpp"
#include "leonard/leonard_pair.hpp"
#include "leonard/linalg.hpp"
#include "oracles.hpp"

using namespace leonard;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

ExactMatrix mat(std::initializer_list<std::initializer_list<long long>> rows, const FieldSpec& f = kQ) {
  return ExactMatrix::from_integers(f, rows);
}

Sequence ints(const FieldSpec& f, std::initializer_list<long long> values) {
  Sequence s;
  for (auto v : values) s.push_back(FieldElement::from_integer(f, v));
  return s;
}

ParameterArray krawtchouk_d1_array() {
  return ParameterArray{1, ints(kQ, {1, -1}), ints(kQ, {1, -1}), ints(kQ, {-2}), ints(kQ, {2})};
}

std::set<std::string> as_strings(const std::vector<Sequence>& orderings) {
  std::set<std::string> out;
  for (const auto& s : orderings) out.insert(sequence_to_string(s));
  return out;
}

ExactMatrix permutation_matrix(const FieldSpec& f, const std::vector<std::size_t>& perm) {
  ExactMatrix p(f, perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) p(perm[k], k) = FieldElement::one(f);
  return p;
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

bool failure_mentions(const PairValidation& v, const std::string& name) {
  return std::any_of(v.failures.begin(), v.failures.end(),
                     [&](const std::string& f) { return f.find(name) != std::string::npos; });
}

}  // namespace

TEST_CASE("split form of a diameter-one array") {
  const auto pa = krawtchouk_d1_array();
  const auto first = build_split_form(pa, SplitKind::first);
  CHECK(first.basis_tag == BasisTag::split);
  CHECK(first.A == mat({{1, 0}, {1, -1}}));
  CHECK(first.A_star == mat({{1, -2}, {0, -1}}));
  const auto second = build_split_form(pa, SplitKind::second);
  CHECK(second.A == mat({{-1, 0}, {1, 1}}));
  CHECK(second.A_star == mat({{1, 2}, {0, -1}}));
}

TEST_CASE("parameter array invariants") {
  auto pa = ParameterArray{2, ints(kQ, {2, 0, -2}), ints(kQ, {2, 0, -2}), ints(kQ, {1, 0}), ints(kQ, {1, 1})};
  expect_error(ErrorKind::InvalidParameterArray, [&] { pa.validate(); });
  expect_error(ErrorKind::InvalidParameterArray, [&] { build_split_form(pa, SplitKind::first); });
  pa.first_split = ints(kQ, {1, 1});
  pa.theta = ints(kQ, {2, 2, -2});
  expect_error(ErrorKind::InvalidParameterArray, [&] { pa.validate(); });
  pa.theta = ints(kQ, {2, 0});
  expect_error(ErrorKind::InvalidParameterArray, [&] { pa.validate(); });
  // d = 3 with theta and theta* of different beta.
  auto pb = ParameterArray{3, ints(kQ, {3, 1, -1, -3}), ints(kQ, {0, 1, 3, 8}), ints(kQ, {1, 1, 1}),
                           ints(kQ, {1, 1, 1})};
  expect_error(ErrorKind::InvalidParameterArray, [&] { pb.validate(); });
}

TEST_CASE("dual eigenbasis of the split form") {
  const auto split = build_split_form(krawtchouk_d1_array(), SplitKind::first);
  const auto [dual, t] = dual_eigenbasis_form(split);
  CHECK(dual.basis_tag == BasisTag::dual_eigenbasis);
  CHECK(dual.A == mat({{0, 1}, {1, 0}}));
  CHECK(dual.A_star == mat({{1, 0}, {0, -1}}));
  CHECK(t.b_at(0).is_one());
  CHECK(t.c_at(1).is_one());
  CHECK(t.a[0].is_zero());
}

TEST_CASE("eigenbasis forms are fixed points on matching input") {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto k = krawtchouk_pair(d, kQ);
    const auto [dual, t] = dual_eigenbasis_form(k);
    CHECK(dual.A == k.A);
    CHECK(dual.A_star == k.A_star);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(t.b_at(i) == FieldElement::from_integer(kQ, static_cast<long long>(d - i)));
      CHECK(t.c_at(i + 1) == FieldElement::from_integer(kQ, static_cast<long long>(i + 1)));
    }
    const auto [primal, ts] = primal_eigenbasis_form(primal_eigenbasis_form(k).first);
    CHECK(primal.A.is_diagonal());
    CHECK(primal.A_star.is_irreducible_tridiagonal());
    const auto again = primal_eigenbasis_form(primal).first;
    CHECK(again.A == primal.A);
    CHECK(again.A_star == primal.A_star);
  }
}

TEST_CASE("self-dual family has matching primal and dual data up to scaling") {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto k = krawtchouk_pair(d, kQ);
    const auto t = dual_eigenbasis_form(k).second;
    const auto ts = primal_eigenbasis_form(k).second;
    CHECK(t.eigenvalues_of_diagonal_partner == ts.eigenvalues_of_diagonal_partner);
    CHECK(t.a == ts.a);
    for (std::size_t i = 1; i <= d; ++i) CHECK(t.b_at(i - 1) * t.c_at(i) == ts.b_at(i - 1) * ts.c_at(i));
  }
}

TEST_CASE("degenerate or non-Leonard pairs are rejected") {
  // A* = 0 has a single eigenvalue.
  const auto k = krawtchouk_pair(2, kQ);
  const LeonardPairMatrices zero_star(BasisTag::other, k.A, ExactMatrix(kQ, 3));
  expect_error(ErrorKind::RepeatedEigenvalue, [&] { dual_eigenbasis_form(zero_star); });

  // Commuting diagonal pair.
  const auto diag = ExactMatrix::diagonal(ints(kQ, {0, 1, 2, 3}));
  const LeonardPairMatrices commuting(BasisTag::other, diag, diag);
  const auto v = validate_leonard_pair(commuting);
  CHECK_FALSE(v.passed);
  CHECK(failure_mentions(v, "NotTridiagonalizable"));
  CHECK(verify_leonard_pair(commuting).checks.front().status == CheckStatus::fail);
  expect_error(ErrorKind::NotTridiagonalizable, [&] { primal_eigenbasis_form(commuting); });

  // b_0 = 0 injected.
  auto broken = krawtchouk_pair(3, kQ);
  broken.A(0, 1) = FieldElement::zero(kQ);
  const auto vb = validate_leonard_pair(broken);
  CHECK_FALSE(vb.passed);
  CHECK(failure_mentions(vb, "NotTridiagonalizable"));
  expect_error(ErrorKind::NotTridiagonalizable, [&] { dual_eigenbasis_form(broken); });
  expect_error(ErrorKind::NotLeonardPair, [&] { extract_parameter_array(broken); });

  expect_error(ErrorKind::DimensionMismatch,
               [] { LeonardPairMatrices(BasisTag::other, ExactMatrix(kQ, 2), ExactMatrix(kQ, 3)); });
  expect_error(ErrorKind::FieldMismatch, [] {
    LeonardPairMatrices(BasisTag::other, ExactMatrix(kQ, 2), ExactMatrix(FieldSpec::prime(5), 2));
  });
}

TEST_CASE("ordering search agrees with brute-force permutations") {
  std::mt19937_64 rng(41);
  for (const auto& field : {kQ, FieldSpec::prime(11)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + trial % 3;  // d = 1..3
      const auto diag_vals = [&] {
        Sequence s;
        for (std::size_t i = 0; i < n; ++i) s.push_back(FieldElement::from_integer(field, 3 * static_cast<long long>(i) - 2));
        return s;
      }();
      // Random sparse A; symmetric zero pattern in half the trials.
      ExactMatrix a(field, n);
      std::bernoulli_distribution keep(0.55);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (i == k || keep(rng)) a(i, k) = oracle::random_element(field, rng);
        }
      }
      if (trial % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < i; ++k)
            a(i, k) = a(k, i).is_zero() ? FieldElement::zero(field) : a(k, i) + a(k, i);
      }
      const auto diag = ExactMatrix::diagonal(diag_vals);
      const LeonardPairMatrices dual_side(BasisTag::other, a, diag);
      CHECK(as_strings(dual_standard_orderings(dual_side)) == as_strings(oracle::tridiagonal_orderings(a, diag_vals)));
      const LeonardPairMatrices primal_side(BasisTag::other, diag, a);
      CHECK(as_strings(primal_standard_orderings(primal_side)) ==
            as_strings(oracle::tridiagonal_orderings(a, diag_vals)));
    }
  }
}

TEST_CASE("orderings survive a random change of basis") {
  std::mt19937_64 rng(7);
  for (std::size_t d = 1; d <= 4; ++d) {
    const auto k = krawtchouk_pair(d, kQ);
    const auto p = oracle::random_invertible(kQ, d + 1, rng);
    const LeonardPairMatrices moved(BasisTag::other, change_basis(k.A, p), change_basis(k.A_star, p));
    const auto v = validate_leonard_pair(moved);
    REQUIRE(v.passed);
    CHECK(v.theta_star_orderings.size() == 2);
    CHECK(v.theta_orderings.size() == 2);
    // No hint: the reference order is ascending, so the ordering starts at -d.
    CHECK(v.theta_star.front() == FieldElement::from_integer(kQ, -static_cast<long long>(d)));
    const auto [dual, t] = dual_eigenbasis_form(moved);
    CHECK(dual.A.is_irreducible_tridiagonal());
    CHECK(dual.A_star.is_diagonal());
    // Permuted dual eigenbasis: the reverse ordering is the other standard one.
    std::vector<std::size_t> rev(d + 1);
    for (std::size_t i = 0; i <= d; ++i) rev[i] = d - i;
    const auto pr = permutation_matrix(kQ, rev);
    CHECK(change_basis(dual.A, pr).is_irreducible_tridiagonal());
  }
}

TEST_CASE("parameter array of the diameter-one pair") {
  const auto pa = extract_parameter_array(krawtchouk_pair(1, kQ));
  CHECK(pa.theta == ints(kQ, {1, -1}));
  CHECK(pa.theta_star == ints(kQ, {1, -1}));
  CHECK(pa.first_split == ints(kQ, {-2}));
  CHECK(pa.second_split == ints(kQ, {2}));
  CHECK(-(pa.first_split[0] * pa.second_split[0]) == determinant_bareiss(commutator(krawtchouk_pair(1, kQ))));
}

TEST_CASE("split form is similar to the pair through the split basis") {
  for (const auto& field : {kQ, FieldSpec::prime(17)}) {
    for (std::size_t d = 1; d <= 6; ++d) {
      const auto k = krawtchouk_pair(d, field);
      const auto pa = extract_parameter_array(k);
      CHECK_NOTHROW(pa.validate());
      const auto split = build_split_form(pa, SplitKind::first);
      // u_0 = theta*_0 eigenvector of A*, u_i = (A - theta_{i-1}) u_{i-1}.
      std::vector<ExactVector> u{eigenvector_for(k.A_star, pa.theta_star[0])};
      for (std::size_t i = 1; i <= d; ++i) u.push_back(k.A.shifted(pa.theta[i - 1]) * u.back());
      const auto basis = ExactMatrix::from_columns(u);
      CHECK(change_basis(k.A, basis) == split.A);
      CHECK(change_basis(k.A_star, basis) == split.A_star);
      CHECK(extract_parameter_array(split) == pa);
      // The second split form describes the same pair.
      const auto second = build_split_form(pa, SplitKind::second);
      CHECK(validate_leonard_pair(second).passed);
      CHECK(determinant_bareiss(commutator(second)) == determinant_bareiss(commutator(k)));
    }
  }
}

TEST_CASE("commutator") {
  const auto k = krawtchouk_pair(2, kQ);
  CHECK(commutator(LeonardPairMatrices(BasisTag::other, k.A, k.A)).is_zero());
  CHECK(commutator(krawtchouk_pair(1, kQ)) == mat({{0, -2}, {2, 0}}));
  CHECK(commutator(k) == mat({{0, -4, 0}, {2, 0, -2}, {0, 4, 0}}));
}

TEST_CASE("built-in family") {
  const auto k1 = krawtchouk_pair(1, kQ);
  CHECK(k1.A == mat({{0, 1}, {1, 0}}));
  CHECK(k1.A_star == mat({{1, 0}, {0, -1}}));
  CHECK(verify_leonard_pair(krawtchouk_pair(3, kQ)).passed());
  CHECK(verify_leonard_pair(krawtchouk_pair(3, FieldSpec::prime(11))).passed());
  expect_error(ErrorKind::FieldTooSmall, [] { krawtchouk_pair(3, FieldSpec::prime(3)); });
  expect_error(ErrorKind::FieldTooSmall, [] { krawtchouk_pair(1, FieldSpec::prime(2)); });
  expect_error(ErrorKind::IndexOutOfRange, [] { krawtchouk_pair(0, kQ); });
}

TEST_CASE("parameter-array search") {
  const auto f5 = FieldSpec::prime(5);
  const auto d1 = search_parameter_arrays(1, f5, 1000);
  CHECK_FALSE(d1.empty());
  std::set<std::string> seen;
  for (const auto& pa : d1) {
    CHECK(extract_parameter_array(build_split_form(pa, SplitKind::first)) == pa);
    seen.insert(sequence_to_string(pa.theta) + sequence_to_string(pa.theta_star) + sequence_to_string(pa.first_split));
  }
  CHECK(seen.size() == d1.size());
  CHECK(search_parameter_arrays(1, f5, 3).size() == 3);
  CHECK(search_parameter_arrays(1, f5, 0).empty());

  const auto f13 = FieldSpec::prime(13);
  const auto d3 = search_parameter_arrays(3, f13, 5);
  CHECK_FALSE(d3.empty());
  CHECK(d3.size() <= 5);
  for (const auto& pa : d3) {
    CHECK(verify_leonard_pair(build_split_form(pa, SplitKind::first)).passed());
  }
  // Deterministic.
  CHECK(search_parameter_arrays(3, f13, 5) == d3);

  expect_error(ErrorKind::SearchGuard, [] { search_parameter_arrays(1, kQ, 1); });
  expect_error(ErrorKind::SearchGuard, [] { search_parameter_arrays(5, FieldSpec::prime(13), 1); });
}
