#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "leonard/field.hpp"
#include "leonard/leonard_pair.hpp"
#include "leonard/report.hpp"
#include "leonard/theorems.hpp"

namespace leonard::cli {

using Json = nlohmann::ordered_json;

/// Exit statuses of the `leonard_lab` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct FamilySpec {
  std::string name;
  std::size_t d = 0;
};

/// One verification input: a field plus exactly one subject variant.
struct SubjectSpec {
  FieldSpec field = FieldSpec::rationals();
  std::variant<FamilySpec, LeonardPairMatrices, ParameterArray> subject;
};

// JSON schema. Scalars are strings in the canonical serialization; integers
// are accepted on input. Parse failures throw Error(ParseError) whose detail
// starts with the JSON path of the offending field.
Json field_to_json(const FieldSpec& field);
FieldSpec field_from_json(const Json& j, const std::string& path = "field");

Json parameter_array_to_json(const ParameterArray& pa);
ParameterArray parameter_array_from_json(const Json& j, const FieldSpec& field,
                                         const std::string& path = "parameter_array");

Json matrix_to_json(const ExactMatrix& m);

SubjectSpec subject_from_json(const Json& j, const std::string& path = "$");
/// {"field": ..., "parameter_array": {...}}
Json subject_to_json(const FieldSpec& field, const ParameterArray& pa);

Json report_to_json(const VerificationReport& report);
/// Fixed-width table: check, status, lhs, rhs.
std::string report_to_text(const VerificationReport& report);

/// Builds the pair (families: FieldTooSmall etc. propagate) and runs the full
/// verification; parameter arrays are validated first.
VerificationReport verify_subject(const SubjectSpec& spec, const VerifyOptions& options);

/// Keeps the named rows (and always the leonard_pair gate).
VerificationReport filter_checks(VerificationReport report, const std::vector<std::string>& names);

/// Entry point of the command-line tool; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leonard::cli
