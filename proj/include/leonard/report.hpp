#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace leonard {

enum class CheckStatus { pass, fail, skipped };

std::string_view status_name(CheckStatus status);

struct CheckRow {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string left_value;
  std::string right_value;
  std::string detail;
};

/// Published check names, in report order.
inline constexpr std::array<std::string_view, 14> kCheckNames = {
    "leonard_pair", "rank",    "det1",         "det1s",          "det_recursive", "det2",
    "span_gamma",   "span_gamma_star", "lemB_structure", "bc_product", "psi_prop2",  "eq_left_lemma1",
    "cor1_ratios",  "brackets_nonzero",
};

bool is_check_name(std::string_view name);

struct VerificationReport {
  std::string subject;
  std::string field;
  /// Serialized beta and where it came from ("derived from theta*", "default").
  std::string beta;
  std::string beta_source;
  std::string normalization;
  std::string theta_star_ordering;
  std::string theta_ordering;
  std::vector<CheckRow> checks;

  /// No row has status fail.
  bool passed() const;
  /// nullptr when absent.
  const CheckRow* find(std::string_view name) const;
};

}  // namespace leonard
