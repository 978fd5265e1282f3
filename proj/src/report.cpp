#include "leonard/report.hpp"

#include <algorithm>

namespace leonard {

std::string_view status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

bool is_check_name(std::string_view name) {
  return std::find(kCheckNames.begin(), kCheckNames.end(), name) != kCheckNames.end();
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckRow& row) { return row.status == CheckStatus::fail; });
}

const CheckRow* VerificationReport::find(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckRow& row) { return row.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

}  // namespace leonard
