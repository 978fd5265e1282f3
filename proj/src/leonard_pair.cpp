#include "leonard/leonard_pair.hpp"

#include <algorithm>

#include "leonard/error.hpp"
#include "leonard/qbracket.hpp"

namespace leonard {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParameterArray, what); }

bool all_distinct(const Sequence& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return false;
    }
  }
  return true;
}

Sequence reversed(Sequence s) {
  std::reverse(s.begin(), s.end());
  return s;
}

// Lower-bidiagonal A and upper-bidiagonal A* of a split basis.
LeonardPairMatrices split_matrices(const Sequence& theta, const Sequence& theta_star, const Sequence& splits) {
  const FieldSpec& field = theta.front().field();
  const std::size_t n = theta.size();
  ExactMatrix a(field, n);
  ExactMatrix a_star(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = theta[i];
    a_star(i, i) = theta_star[i];
    if (i > 0) {
      a(i, i - 1) = FieldElement::one(field);
      a_star(i - 1, i) = splits[i - 1];
    }
  }
  LeonardPairMatrices m(BasisTag::split, std::move(a), std::move(a_star));
  m.spectrum_A = theta;
  m.spectrum_A_star = theta_star;
  return m;
}

// Eigenvalues of x: the hint, else the diagonal of a triangular x, else the
// exact split spectrum. Always mutually distinct.
Sequence reference_spectrum(const ExactMatrix& x, const std::optional<Sequence>& hint) {
  Sequence eigs;
  if (hint) {
    if (hint->size() != x.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "spectrum has " + std::to_string(hint->size()) + " values for dim " +
                                                    std::to_string(x.dim()));
    }
    eigs = *hint;
  } else if (x.is_upper_triangular() || x.is_lower_triangular()) {
    for (std::size_t i = 0; i < x.dim(); ++i) eigs.push_back(x(i, i));
  } else {
    return split_spectrum(x);
  }
  if (!all_distinct(eigs)) throw Error(ErrorKind::RepeatedEigenvalue, "eigenvalues " + sequence_to_string(eigs));
  return eigs;
}

struct Eigenbasis {
  Sequence eigenvalues;  // in column order of `basis`
  ExactMatrix basis;
  ExactMatrix partner;   // the other matrix written in `basis`
};

Eigenbasis diagonalize(const ExactMatrix& x, const ExactMatrix& y, const Sequence& eigs) {
  std::vector<ExactVector> columns;
  columns.reserve(eigs.size());
  for (const auto& lambda : eigs) columns.push_back(eigenvector_for(x, lambda));
  ExactMatrix basis = ExactMatrix::from_columns(columns);
  ExactMatrix partner = change_basis(y, basis);
  return Eigenbasis{eigs, std::move(basis), std::move(partner)};
}

// Orderings of the basis that make `t` irreducible tridiagonal: the two
// traversals of its nonzero pattern when that pattern is a path. The first
// returned ordering starts at the lower-indexed endpoint.
std::vector<std::vector<std::size_t>> path_orderings(const ExactMatrix& t, std::string* why) {
  const std::size_t n = t.dim();
  std::vector<std::vector<std::size_t>> adjacent(n);
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool upper = !t(i, j).is_zero();
      const bool lower = !t(j, i).is_zero();
      if (upper != lower) {
        if (why) *why = "entry (" + std::to_string(upper ? i : j) + "," + std::to_string(upper ? j : i) +
                        ") is nonzero but its transpose partner is zero";
        return {};
      }
      if (upper) {
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
        ++edges;
      }
    }
  }
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacent[i].size() > 2) {
      if (why) *why = "basis vector " + std::to_string(i) + " couples to " + std::to_string(adjacent[i].size()) +
                      " others";
      return {};
    }
    if (adjacent[i].size() <= 1) ends.push_back(i);
  }
  if (edges != n - 1 || ends.size() != 2) {
    if (why) *why = "off-diagonal pattern is not a single path (" + std::to_string(edges) + " couplings)";
    return {};
  }
  auto walk = [&](std::size_t start) {
    std::vector<std::size_t> order{start};
    std::size_t prev = n, cur = start;
    while (order.size() < n) {
      std::size_t next = adjacent[cur][0] == prev && adjacent[cur].size() > 1 ? adjacent[cur][1] : adjacent[cur][0];
      if (next == prev) break;
      order.push_back(next);
      prev = std::exchange(cur, next);
    }
    return order;
  };
  auto first = walk(ends[0]);
  if (first.size() != n) {
    if (why) *why = "off-diagonal pattern is disconnected";
    return {};
  }
  return {first, walk(ends[1])};
}

Sequence permuted(const Sequence& s, const std::vector<std::size_t>& order) {
  Sequence out;
  for (auto k : order) out.push_back(s[k]);
  return out;
}

ExactMatrix permuted(const ExactMatrix& m, const std::vector<std::size_t>& order) {
  ExactMatrix out(m.field(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(order[i], order[j]);
  }
  return out;
}

TridiagonalData tridiagonal_data(const ExactMatrix& t, const Sequence& eigs) {
  TridiagonalData data;
  data.d = t.dim() - 1;
  for (std::size_t i = 0; i <= data.d; ++i) {
    data.a.push_back(t(i, i));
    if (i < data.d) data.b.push_back(t(i, i + 1));
    if (i > 0) data.c.push_back(t(i, i - 1));
  }
  data.eigenvalues_of_diagonal_partner = eigs;
  return data;
}

enum class Side { dual, primal };

// Side::dual diagonalizes A*, Side::primal diagonalizes A.
const ExactMatrix& diagonalized(const LeonardPairMatrices& m, Side side) {
  return side == Side::dual ? m.A_star : m.A;
}
const ExactMatrix& tridiagonalized(const LeonardPairMatrices& m, Side side) {
  return side == Side::dual ? m.A : m.A_star;
}
const std::optional<Sequence>& hint_for(const LeonardPairMatrices& m, Side side) {
  return side == Side::dual ? m.spectrum_A_star : m.spectrum_A;
}

std::pair<LeonardPairMatrices, TridiagonalData> assemble(const LeonardPairMatrices& m, Side side,
                                                         const ExactMatrix& tri, const Sequence& eigs) {
  ExactMatrix diag = ExactMatrix::diagonal(eigs);
  TridiagonalData data = tridiagonal_data(tri, eigs);
  if (side == Side::dual) {
    LeonardPairMatrices out(BasisTag::dual_eigenbasis, tri, std::move(diag));
    out.spectrum_A = m.spectrum_A;
    out.spectrum_A_star = eigs;
    return {std::move(out), std::move(data)};
  }
  LeonardPairMatrices out(BasisTag::primal_eigenbasis, std::move(diag), tri);
  out.spectrum_A = eigs;
  out.spectrum_A_star = m.spectrum_A_star;
  return {std::move(out), std::move(data)};
}

std::pair<LeonardPairMatrices, TridiagonalData> eigenbasis_form(const LeonardPairMatrices& m, Side side) {
  const auto eigs = reference_spectrum(diagonalized(m, side), hint_for(m, side));
  const auto view = diagonalize(diagonalized(m, side), tridiagonalized(m, side), eigs);
  std::string why;
  const auto orders = path_orderings(view.partner, &why);
  if (orders.empty()) {
    throw Error(ErrorKind::NotTridiagonalizable,
                std::string(side == Side::dual ? "A" : "A*") + " in every eigenbasis ordering of " +
                    (side == Side::dual ? "A*" : "A") + ": " + why);
  }
  return assemble(m, side, permuted(view.partner, orders.front()), permuted(eigs, orders.front()));
}

std::pair<LeonardPairMatrices, TridiagonalData> eigenbasis_form(const LeonardPairMatrices& m, Side side,
                                                                const Sequence& order) {
  const auto& x = diagonalized(m, side);
  if (order.size() != x.dim()) throw Error(ErrorKind::DimensionMismatch, "ordering length differs from dim");
  if (!all_distinct(order)) throw Error(ErrorKind::RepeatedEigenvalue, "ordering " + sequence_to_string(order));
  const auto view = diagonalize(x, tridiagonalized(m, side), order);
  if (!view.partner.is_irreducible_tridiagonal()) {
    throw Error(ErrorKind::NotTridiagonalizable, std::string(side == Side::dual ? "A" : "A*") +
                                                     " is not irreducible tridiagonal for ordering " +
                                                     sequence_to_string(order));
  }
  return assemble(m, side, view.partner, order);
}

// Standard orderings of one side; on failure the list is empty and `why`
// holds "ErrorName: detail".
std::vector<Sequence> side_orderings(const LeonardPairMatrices& m, Side side, std::string* why) {
  try {
    const auto eigs = reference_spectrum(diagonalized(m, side), hint_for(m, side));
    const auto view = diagonalize(diagonalized(m, side), tridiagonalized(m, side), eigs);
    std::string reason;
    std::vector<Sequence> out;
    for (const auto& order : path_orderings(view.partner, &reason)) out.push_back(permuted(eigs, order));
    if (out.empty() && why) {
      *why = Error(ErrorKind::NotTridiagonalizable, std::string(side == Side::dual ? "A" : "A*") +
                                                        " in every eigenbasis ordering of " +
                                                        (side == Side::dual ? "A*" : "A") + ": " + reason)
                 .what();
    }
    return out;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return {};
  }
}

std::vector<Sequence> standard_orderings(const LeonardPairMatrices& m, Side side) {
  const auto eigs = reference_spectrum(diagonalized(m, side), hint_for(m, side));
  const auto view = diagonalize(diagonalized(m, side), tridiagonalized(m, side), eigs);
  std::vector<Sequence> out;
  for (const auto& order : path_orderings(view.partner, nullptr)) out.push_back(permuted(eigs, order));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void ParameterArray::validate() const {
  if (d == 0) invalid("d must be positive");
  if (theta.size() != d + 1) invalid("theta has " + std::to_string(theta.size()) + " entries, expected d+1");
  if (theta_star.size() != d + 1) invalid("theta_star has " + std::to_string(theta_star.size()) + " entries, expected d+1");
  if (first_split.size() != d) invalid("first_split has " + std::to_string(first_split.size()) + " entries, expected d");
  if (second_split.size() != d) invalid("second_split has " + std::to_string(second_split.size()) + " entries, expected d");
  const FieldSpec& f = field();
  for (const auto* seq : {&theta, &theta_star, &first_split, &second_split}) {
    for (const auto& x : *seq) {
      if (!(x.field() == f)) invalid("scalars from different fields");
    }
  }
  if (!all_distinct(theta)) invalid("theta values are not distinct");
  if (!all_distinct(theta_star)) invalid("theta_star values are not distinct");
  for (std::size_t i = 0; i < d; ++i) {
    if (first_split[i].is_zero()) invalid("first split phi_" + std::to_string(i + 1) + " is zero");
    if (second_split[i].is_zero()) invalid("second split varphi_" + std::to_string(i + 1) + " is zero");
  }
  if (d >= 3) {
    try {
      const auto b = beta_of(theta);
      const auto b_star = beta_of(theta_star);
      if (!(b.beta == b_star.beta)) {
        invalid("beta from theta (" + b.beta.to_string() + ") differs from beta from theta_star (" +
                b_star.beta.to_string() + ")");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidParameterArray) throw;
      invalid(std::string("eigenvalue recurrence: ") + e.what());
    }
  }
}

std::string_view basis_tag_name(BasisTag tag) {
  switch (tag) {
    case BasisTag::split: return "split";
    case BasisTag::dual_eigenbasis: return "dual_eigenbasis";
    case BasisTag::primal_eigenbasis: return "primal_eigenbasis";
    case BasisTag::other: return "other";
  }
  return "other";
}

BasisTag parse_basis_tag(std::string_view name) {
  for (auto tag : {BasisTag::split, BasisTag::dual_eigenbasis, BasisTag::primal_eigenbasis, BasisTag::other}) {
    if (basis_tag_name(tag) == name) return tag;
  }
  throw Error(ErrorKind::ParseError, "unknown basis_tag '" + std::string(name) + "'");
}

LeonardPairMatrices::LeonardPairMatrices(BasisTag tag, ExactMatrix a, ExactMatrix a_star)
    : basis_tag(tag), A(std::move(a)), A_star(std::move(a_star)) {
  if (A.dim() != A_star.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "A is " + std::to_string(A.dim()) + "x" + std::to_string(A.dim()) +
                                                  ", A_star is " + std::to_string(A_star.dim()) + "x" +
                                                  std::to_string(A_star.dim()));
  }
  if (!(A.field() == A_star.field())) throw Error(ErrorKind::FieldMismatch, "A and A_star over different fields");
}

LeonardPairMatrices build_split_form(const ParameterArray& pa, SplitKind which) {
  pa.validate();
  if (which == SplitKind::first) return split_matrices(pa.theta, pa.theta_star, pa.first_split);
  return split_matrices(reversed(pa.theta), pa.theta_star, pa.second_split);
}

std::pair<LeonardPairMatrices, TridiagonalData> dual_eigenbasis_form(const LeonardPairMatrices& m) {
  return eigenbasis_form(m, Side::dual);
}

std::pair<LeonardPairMatrices, TridiagonalData> dual_eigenbasis_form(const LeonardPairMatrices& m,
                                                                     const Sequence& theta_star_order) {
  return eigenbasis_form(m, Side::dual, theta_star_order);
}

std::pair<LeonardPairMatrices, TridiagonalData> primal_eigenbasis_form(const LeonardPairMatrices& m) {
  return eigenbasis_form(m, Side::primal);
}

std::pair<LeonardPairMatrices, TridiagonalData> primal_eigenbasis_form(const LeonardPairMatrices& m,
                                                                       const Sequence& theta_order) {
  return eigenbasis_form(m, Side::primal, theta_order);
}

std::vector<Sequence> dual_standard_orderings(const LeonardPairMatrices& m) {
  return standard_orderings(m, Side::dual);
}

std::vector<Sequence> primal_standard_orderings(const LeonardPairMatrices& m) {
  return standard_orderings(m, Side::primal);
}

CheckRow PairValidation::as_row() const {
  CheckRow row;
  row.name = "leonard_pair";
  row.status = passed ? CheckStatus::pass : CheckStatus::fail;
  row.left_value = std::to_string((theta_star_orderings.empty() ? 0 : 1) + (theta_orderings.empty() ? 0 : 1));
  row.right_value = "2";
  if (passed) {
    row.detail = std::to_string(theta_star_orderings.size()) + " theta* orderings, " +
                 std::to_string(theta_orderings.size()) + " theta orderings; standard theta* = " +
                 sequence_to_string(theta_star) + ", theta = " + sequence_to_string(theta);
  } else {
    for (const auto& f : failures) row.detail += (row.detail.empty() ? "" : "; ") + f;
  }
  return row;
}

PairValidation validate_leonard_pair(const LeonardPairMatrices& m) {
  PairValidation out;
  auto attempt = [&](Side side, std::vector<Sequence>& orders) {
    std::string why;
    orders = side_orderings(m, side, &why);
    if (orders.empty()) out.failures.push_back(std::string(side == Side::dual ? "(i) " : "(ii) ") + why);
  };
  attempt(Side::dual, out.theta_star_orderings);
  attempt(Side::primal, out.theta_orderings);
  out.passed = !out.theta_star_orderings.empty() && !out.theta_orderings.empty();
  if (out.passed) {
    out.theta_star = out.theta_star_orderings.front();
    out.theta = out.theta_orderings.front();
  }
  return out;
}

VerificationReport verify_leonard_pair(const LeonardPairMatrices& m) {
  const auto validation = validate_leonard_pair(m);
  VerificationReport report;
  report.subject = "pair in basis '" + std::string(basis_tag_name(m.basis_tag)) + "', d = " + std::to_string(m.d());
  report.field = m.field().to_string();
  if (validation.passed) {
    report.theta_star_ordering = sequence_to_string(validation.theta_star);
    report.theta_ordering = sequence_to_string(validation.theta);
  }
  report.checks.push_back(validation.as_row());
  return report;
}

namespace {

// phi_1..phi_d read off A* in the split basis u_0 = (A*-eigenvector for
// theta*_0), u_i = (A - theta_{i-1}) u_{i-1}.
Sequence split_sequence(const LeonardPairMatrices& m, const Sequence& theta, const Sequence& theta_star) {
  const std::size_t n = m.A.dim();
  std::vector<ExactVector> basis{eigenvector_for(m.A_star, theta_star[0])};
  for (std::size_t i = 1; i < n; ++i) {
    ExactVector next = m.A.shifted(theta[i - 1]) * basis.back();
    if (next.is_zero()) {
      throw Error(ErrorKind::SplitBasisDegenerate, "u_" + std::to_string(i) + " = 0 for theta = " +
                                                       sequence_to_string(theta));
    }
    basis.push_back(std::move(next));
  }
  ExactMatrix p = ExactMatrix::from_columns(basis);
  if (rank(p) != n) {
    throw Error(ErrorKind::SplitBasisDegenerate, "split vectors are dependent for theta = " + sequence_to_string(theta));
  }
  const ExactMatrix p_inv = inverse(p);
  const ExactMatrix a_split = p_inv * m.A * p;
  const ExactMatrix a_star_split = p_inv * m.A_star * p;

  const FieldElement one = FieldElement::one(m.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool a_ok = i == j ? a_split(i, j) == theta[i] : (i == j + 1 ? a_split(i, j) == one : a_split(i, j).is_zero());
      const bool s_ok = i == j ? a_star_split(i, j) == theta_star[i] : (j == i + 1 || a_star_split(i, j).is_zero());
      if (!a_ok || !s_ok) {
        throw Error(ErrorKind::NotUpperBidiagonal, "split basis for theta = " + sequence_to_string(theta) +
                                                       " fails at entry (" + std::to_string(i) + "," +
                                                       std::to_string(j) + ")");
      }
    }
  }
  Sequence phi;
  for (std::size_t i = 1; i < n; ++i) phi.push_back(a_star_split(i - 1, i));
  return phi;
}

}  // namespace

ParameterArray extract_parameter_array(const LeonardPairMatrices& m) {
  const auto validation = validate_leonard_pair(m);
  if (!validation.passed) {
    std::string why;
    for (const auto& f : validation.failures) why += (why.empty() ? "" : "; ") + f;
    throw Error(ErrorKind::NotLeonardPair, why.empty() ? "no standard ordering" : why);
  }
  const Sequence& theta_star = validation.theta_star;
  Sequence theta = validation.theta;
  Sequence phi;
  try {
    phi = split_sequence(m, theta, theta_star);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotUpperBidiagonal) throw;
    theta = reversed(theta);
    phi = split_sequence(m, theta, theta_star);
  }
  ParameterArray pa{m.d(), theta, theta_star, std::move(phi), split_sequence(m, reversed(theta), theta_star)};
  pa.validate();
  return pa;
}

ExactMatrix commutator(const LeonardPairMatrices& m) { return m.A * m.A_star - m.A_star * m.A; }

LeonardPairMatrices krawtchouk_pair(std::size_t d, const FieldSpec& field) {
  if (d == 0) throw Error(ErrorKind::IndexOutOfRange, "d must be positive");
  if (field.is_prime() && (field.modulus() <= d || field.modulus() == 2)) {
    throw Error(ErrorKind::FieldTooSmall, "eigenvalues d - 2i collide in " + field.to_string() + " for d = " +
                                              std::to_string(d));
  }
  const auto n = static_cast<long long>(d);
  ExactMatrix a(field, d + 1);
  Sequence eigs;
  for (long long i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (i < n) a(k, k + 1) = FieldElement::from_integer(field, n - i);
    if (i > 0) a(k, k - 1) = FieldElement::from_integer(field, i);
    eigs.push_back(FieldElement::from_integer(field, n - 2 * i));
  }
  LeonardPairMatrices m(BasisTag::dual_eigenbasis, std::move(a), ExactMatrix::diagonal(eigs));
  m.spectrum_A = eigs;
  m.spectrum_A_star = eigs;
  return m;
}

namespace {

// Odometer over tuples of residues in [lo, p).
bool advance(std::vector<std::uint64_t>& digits, std::uint64_t lo, std::uint64_t p) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < p) return true;
    digits[k] = lo;
  }
  return false;
}

Sequence to_sequence(const FieldSpec& field, const std::vector<std::uint64_t>& digits) {
  Sequence out;
  for (auto v : digits) out.push_back(FieldElement::from_integer(field, static_cast<long long>(v)));
  return out;
}

// Eigenvalue sequences of length d+1 with distinct entries. For d >= 3 they
// follow x_{i+1} = x_{i-2} - (beta + 1)(x_{i-1} - x_i) from three seeds.
std::vector<Sequence> candidate_sequences(std::size_t d, const FieldSpec& field, const FieldElement* beta) {
  std::vector<Sequence> out;
  const std::size_t seeds = beta ? 3 : d + 1;
  std::vector<std::uint64_t> digits(seeds, 0);
  do {
    Sequence s = to_sequence(field, digits);
    if (beta) {
      const FieldElement ratio = *beta + FieldElement::one(field);
      while (s.size() < d + 1) {
        const std::size_t i = s.size() - 1;
        s.push_back(s[i - 2] - ratio * (s[i - 1] - s[i]));
      }
    }
    if (all_distinct(s)) out.push_back(std::move(s));
  } while (advance(digits, 0, field.modulus()));
  return out;
}

}  // namespace

std::vector<ParameterArray> search_parameter_arrays(std::size_t d, const FieldSpec& field, std::size_t limit) {
  if (!field.is_prime()) throw Error(ErrorKind::SearchGuard, "search runs over prime fields only");
  if (d == 0 || d > kMaxSearchDiameter) {
    throw Error(ErrorKind::SearchGuard, "search needs 1 <= d <= " + std::to_string(kMaxSearchDiameter));
  }
  std::vector<ParameterArray> found;
  if (limit == 0 || field.modulus() <= d) return found;

  std::vector<std::optional<FieldElement>> betas;
  if (d >= 3) {
    for (std::uint64_t b = 0; b < field.modulus(); ++b) {
      betas.emplace_back(FieldElement::from_integer(field, static_cast<long long>(b)));
    }
  } else {
    betas.emplace_back(std::nullopt);
  }

  for (const auto& beta : betas) {
    const auto sequences = candidate_sequences(d, field, beta ? &*beta : nullptr);
    for (const auto& theta : sequences) {
      for (const auto& theta_star : sequences) {
        std::vector<std::uint64_t> digits(d, 1);
        do {
          const Sequence phi = to_sequence(field, digits);
          const auto m = split_matrices(theta, theta_star, phi);
          // Condition (i) fails for most candidates; skip the rest of the check then.
          if (side_orderings(m, Side::dual, nullptr).empty()) continue;
          if (!validate_leonard_pair(m).passed) continue;
          try {
            auto pa = extract_parameter_array(m);
            if (pa.theta == theta && pa.theta_star == theta_star && pa.first_split == phi) {
              found.push_back(std::move(pa));
              if (found.size() == limit) return found;
            }
          } catch (const Error&) {
            // Leonard-shaped but with a vanishing split value; not a parameter array.
          }
        } while (advance(digits, 1, field.modulus()));
      }
    }
  }
  return found;
}

std::string sequence_to_string(const Sequence& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].to_string();
  return out + ")";
}

}  // namespace leonard
