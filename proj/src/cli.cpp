#include "leonard/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "leonard/error.hpp"

namespace leonard::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, path + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(path + "." + key, "missing");
  return *it;
}

FieldElement scalar_from_json(const Json& j, const FieldSpec& field, const std::string& path) {
  try {
    if (j.is_string()) return FieldElement::parse(field, j.get<std::string>());
    if (j.is_number_integer()) return FieldElement::from_integer(field, j.get<long long>());
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
  parse_fail(path, "expected a scalar string such as \"-1/2\"");
}

Sequence sequence_from_json(const Json& j, const FieldSpec& field, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of scalars");
  Sequence out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(scalar_from_json(j[i], field, path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json sequence_to_json(const Sequence& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(x.to_string());
  return out;
}

ExactMatrix matrix_from_json(const Json& j, const FieldSpec& field, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a nonempty array of rows");
  std::vector<Sequence> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    rows.push_back(sequence_from_json(j[i], field, row_path));
    if (rows.back().size() != j.size()) {
      parse_fail(row_path, "has " + std::to_string(rows.back().size()) + " entries, expected " +
                               std::to_string(j.size()) + " (square matrix)");
    }
  }
  return ExactMatrix::from_rows(field, rows);
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    parse_fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

Json field_to_json(const FieldSpec& field) {
  if (field.is_rationals()) return "Q";
  Json j = Json::object();
  j["p"] = field.modulus();
  return j;
}

FieldSpec field_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
    if (j.is_object() && j.contains("p") && j.size() == 1) {
      const auto& p = j["p"];
      if (p.is_number_unsigned()) return FieldSpec::prime(p.get<std::uint64_t>());
    }
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
  parse_fail(path, "expected \"Q\" or {\"p\": <prime>}");
}

Json parameter_array_to_json(const ParameterArray& pa) {
  Json j = Json::object();
  j["d"] = pa.d;
  j["theta"] = sequence_to_json(pa.theta);
  j["theta_star"] = sequence_to_json(pa.theta_star);
  j["first_split"] = sequence_to_json(pa.first_split);
  j["second_split"] = sequence_to_json(pa.second_split);
  return j;
}

ParameterArray parameter_array_from_json(const Json& j, const FieldSpec& field, const std::string& path) {
  ParameterArray pa;
  pa.d = size_from_json(member(j, "d", path), path + ".d");
  pa.theta = sequence_from_json(member(j, "theta", path), field, path + ".theta");
  pa.theta_star = sequence_from_json(member(j, "theta_star", path), field, path + ".theta_star");
  pa.first_split = sequence_from_json(member(j, "first_split", path), field, path + ".first_split");
  pa.second_split = sequence_from_json(member(j, "second_split", path), field, path + ".second_split");
  return pa;
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(m(i, k).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

SubjectSpec subject_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected a subject object");
  SubjectSpec spec;
  spec.field = field_from_json(member(j, "field", path), path + ".field");
  const int variants = static_cast<int>(j.contains("family")) + static_cast<int>(j.contains("matrices")) +
                       static_cast<int>(j.contains("parameter_array"));
  if (variants != 1) {
    parse_fail(path, "exactly one of \"family\", \"matrices\", \"parameter_array\" is required");
  }
  if (j.contains("family")) {
    const std::string fpath = path + ".family";
    const auto& f = j["family"];
    const auto& name = member(f, "name", fpath);
    if (!name.is_string()) parse_fail(fpath + ".name", "expected a string");
    FamilySpec family{name.get<std::string>(), size_from_json(member(f, "d", fpath), fpath + ".d")};
    if (family.name != "krawtchouk") parse_fail(fpath + ".name", "unknown family '" + family.name + "'");
    spec.subject = family;
  } else if (j.contains("matrices")) {
    const std::string mpath = path + ".matrices";
    const auto& mj = j["matrices"];
    auto a = matrix_from_json(member(mj, "A", mpath), spec.field, mpath + ".A");
    auto a_star = matrix_from_json(member(mj, "A_star", mpath), spec.field, mpath + ".A_star");
    BasisTag tag = BasisTag::other;
    if (mj.contains("basis_tag")) {
      try {
        tag = parse_basis_tag(mj["basis_tag"].is_string() ? mj["basis_tag"].get<std::string>() : "");
      } catch (const Error& e) {
        parse_fail(mpath + ".basis_tag", e.what());
      }
    }
    if (a.dim() != a_star.dim()) {
      parse_fail(mpath + ".A_star", "dimension " + std::to_string(a_star.dim()) + " differs from A (" +
                                        std::to_string(a.dim()) + ")");
    }
    if (a.dim() < 2) parse_fail(mpath + ".A", "need dimension >= 2 (d >= 1)");
    spec.subject = LeonardPairMatrices(tag, std::move(a), std::move(a_star));
  } else {
    spec.subject = parameter_array_from_json(j["parameter_array"], spec.field, path + ".parameter_array");
  }
  return spec;
}

Json subject_to_json(const FieldSpec& field, const ParameterArray& pa) {
  Json j = Json::object();
  j["field"] = field_to_json(field);
  j["parameter_array"] = parameter_array_to_json(pa);
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json j = Json::object();
  j["subject"] = report.subject;
  j["field"] = report.field;
  j["passed"] = report.passed();
  Json beta = Json::object();
  beta["value"] = report.beta;
  beta["source"] = report.beta_source;
  j["beta"] = beta;
  Json orderings = Json::object();
  orderings["theta_star"] = report.theta_star_ordering;
  orderings["theta"] = report.theta_ordering;
  j["orderings"] = orderings;
  j["normalization"] = report.normalization;
  Json checks = Json::array();
  for (const auto& row : report.checks) {
    Json r = Json::object();
    r["name"] = row.name;
    r["status"] = std::string(status_name(row.status));
    r["left_value"] = row.left_value;
    r["right_value"] = row.right_value;
    r["detail"] = row.detail;
    checks.push_back(std::move(r));
  }
  j["checks"] = checks;
  return j;
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "subject: " << report.subject << "\n";
  os << "field:   " << report.field << "\n";
  if (!report.beta.empty()) os << "beta:    " << report.beta << " (" << report.beta_source << ")\n";
  if (!report.theta_star_ordering.empty()) {
    os << "theta*:  " << report.theta_star_ordering << "\n";
    os << "theta:   " << report.theta_ordering << "\n";
  }
  os << std::left << std::setw(18) << "check" << std::setw(9) << "status" << std::setw(28) << "lhs"
     << "rhs\n";
  os << std::string(80, '-') << "\n";
  for (const auto& row : report.checks) {
    os << std::left << std::setw(18) << row.name << std::setw(9) << status_name(row.status) << std::setw(28)
       << row.left_value << ' ' << row.right_value << "\n";
    if (row.status == CheckStatus::fail && !row.detail.empty()) os << "    " << row.detail << "\n";
  }
  os << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerificationReport verify_subject(const SubjectSpec& spec, const VerifyOptions& options) {
  if (const auto* family = std::get_if<FamilySpec>(&spec.subject)) {
    auto report = verify_all(krawtchouk_pair(family->d, spec.field), options);
    report.subject = "family " + family->name + ", d = " + std::to_string(family->d);
    return report;
  }
  if (const auto* m = std::get_if<LeonardPairMatrices>(&spec.subject)) return verify_all(*m, options);
  const auto& pa = std::get<ParameterArray>(spec.subject);
  pa.validate();
  return verify_parameter_array(pa, options);
}

VerificationReport filter_checks(VerificationReport report, const std::vector<std::string>& names) {
  if (names.empty()) return report;
  std::erase_if(report.checks, [&](const CheckRow& row) {
    return row.name != "leonard_pair" && std::find(names.begin(), names.end(), row.name) == names.end();
  });
  return report;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t seed_from_env() {
  const char* raw = std::getenv("LEONARD_LAB_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  std::string text(raw);
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) || text.size() > 19) {
    throw Error(ErrorKind::ParseError, "LEONARD_LAB_SEED: expected a nonnegative integer, got '" + text + "'");
  }
  return std::stoull(text);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "--input: cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "--input: " + std::string(e.what()));
  }
}

struct VerifyArgs {
  std::string input;
  std::string family;
  std::size_t d = 0;
  std::string field;
  std::string report = "text";
  std::string checks;
};

struct SearchArgs {
  std::size_t d = 0;
  std::string field;
  std::size_t limit = 1;
  std::string out;
};

int do_verify(const VerifyArgs& args, std::ostream& out) {
  VerifyOptions options;
  options.seed = seed_from_env();

  const auto names = split_list(args.checks);
  for (const auto& n : names) {
    if (!is_check_name(n)) throw Error(ErrorKind::ParseError, "--checks: unknown check '" + n + "'");
  }

  std::vector<SubjectSpec> subjects;
  bool batch = false;
  if (!args.input.empty()) {
    if (!args.family.empty()) throw Error(ErrorKind::ParseError, "--input and --family are exclusive");
    const Json j = read_json_file(args.input);
    if (j.is_array()) {
      batch = true;
      for (std::size_t i = 0; i < j.size(); ++i) subjects.push_back(subject_from_json(j[i], "$[" + std::to_string(i) + "]"));
    } else {
      subjects.push_back(subject_from_json(j));
    }
  } else {
    if (args.family.empty()) throw Error(ErrorKind::ParseError, "one of --input or --family is required");
    if (args.family != "krawtchouk") throw Error(ErrorKind::ParseError, "--family: unknown family '" + args.family + "'");
    if (args.field.empty()) throw Error(ErrorKind::ParseError, "--field is required with --family");
    subjects.push_back(SubjectSpec{FieldSpec::parse(args.field), FamilySpec{args.family, args.d}});
  }

  // Preconditions (family construction, array validation) surface before any report is printed.
  for (const auto& s : subjects) {
    if (const auto* f = std::get_if<FamilySpec>(&s.subject)) krawtchouk_pair(f->d, s.field);
    if (const auto* pa = std::get_if<ParameterArray>(&s.subject)) pa->validate();
  }

  std::vector<std::future<VerificationReport>> pending;
  for (const auto& s : subjects) {
    pending.push_back(std::async(std::launch::async, [&s, &options, &names] {
      return filter_checks(verify_subject(s, options), names);
    }));
  }
  std::vector<VerificationReport> reports;
  for (auto& p : pending) reports.push_back(p.get());

  const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (args.report == "json") {
    if (batch) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      out << arr.dump(2) << "\n";
    } else {
      out << report_to_json(reports.front()).dump(2) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << report_to_text(reports[i]);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

int do_search(const SearchArgs& args, std::ostream& out) {
  const FieldSpec field = FieldSpec::parse(args.field);
  const auto arrays = search_parameter_arrays(args.d, field, args.limit);
  Json arr = Json::array();
  for (const auto& pa : arrays) arr.push_back(subject_to_json(field, pa));
  if (args.out.empty()) {
    out << arr.dump(2) << "\n";
  } else {
    std::ofstream file(args.out);
    if (!file) throw Error(ErrorKind::ParseError, "--out: cannot write '" + args.out + "'");
    file << arr.dump(2) << "\n";
    out << "wrote " << arrays.size() << " parameter arrays to " << args.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of determinant and null-space identities for Leonard pairs", "leonard_lab"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "verify one subject (or a batch file) and report every check");
  verify->add_option("--input", verify_args.input, "JSON subject file (object or array of objects)");
  verify->add_option("--family", verify_args.family, "built-in family name (krawtchouk)");
  verify->add_option("--d", verify_args.d, "diameter d for --family");
  verify->add_option("--field", verify_args.field, "Q or p=<prime>");
  verify->add_option("--report", verify_args.report, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--checks", verify_args.checks, "comma-separated check names to report");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "enumerate Leonard parameter arrays over a prime field");
  search->add_option("--d", search_args.d, "diameter d (1..4)")->required();
  search->add_option("--field", search_args.field, "p=<prime>")->required();
  search->add_option("--limit", search_args.limit, "maximum number of arrays");
  search->add_option("--out", search_args.out, "output file (default stdout)");

  std::vector<std::string> argv_storage{"leonard_lab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return do_verify(verify_args, out);
    return do_search(search_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace leonard::cli
