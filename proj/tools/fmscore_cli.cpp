// Command-line front end: single tests, batch CSV processing, and Monte
// Carlo simulations, all with machine-readable JSON on stdout.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmscore/ci.hpp"
#include "fmscore/errors.hpp"
#include "fmscore/inference.hpp"
#include "fmscore/sim.hpp"
#include "fmscore/types.hpp"
#include "fmscore/version.hpp"

namespace {

using namespace fmscore;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

// Every double goes out with 17 significant digits so documents are
// byte-stable and round-trip exactly.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

struct TestInputs {
  std::int64_t r1 = 0;
  std::int64_t n1 = 0;
  std::int64_t r2 = 0;
  std::int64_t n2 = 0;
  double margin = 0.0;
  double level = 0.95;
  std::string alternative;
};

std::string test_result_json(const TestInputs& in, const TestResult& res,
                             const ConfidenceInterval& ci,
                             std::optional<std::int64_t> row) {
  std::string s = "{";
  if (row) {
    s += "\"row\":" + fmt(*row) + ",";
  }
  s += "\"inputs\":{\"r1\":" + fmt(in.r1) + ",\"n1\":" + fmt(in.n1) +
       ",\"r2\":" + fmt(in.r2) + ",\"n2\":" + fmt(in.n2) +
       ",\"margin\":" + fmt(in.margin) + ",\"level\":" + fmt(in.level) +
       ",\"alternative\":" + quoted(in.alternative) + "},";
  s += "\"mle\":{\"p1d\":" + fmt(res.mle.p1d) + ",\"p2d\":" + fmt(res.mle.p2d) +
       ",\"case\":" + quoted(to_string(res.mle.case_tag)) + "},";
  s += "\"v0\":" + fmt(res.v0) + ",\"z\":" + fmt(res.z) +
       ",\"p_lower\":" + fmt(res.p_lower) + ",\"p_upper\":" + fmt(res.p_upper) +
       ",\"p_two_sided\":" + fmt(res.p_two_sided) + ",";
  s += "\"ci\":{\"lower\":" + fmt(ci.lower) + ",\"upper\":" + fmt(ci.upper) +
       ",\"method_lower\":" + quoted(to_string(ci.method_lower)) +
       ",\"method_upper\":" + quoted(to_string(ci.method_upper)) + "}}";
  return s;
}

std::string sim_result_json(const SimResult& res) {
  std::string s = "{";
  s += "\"replicates_run\":" + fmt(res.replicates_run) +
       ",\"rejections\":" + fmt(res.rejections) +
       ",\"ci_covered\":" + fmt(res.ci_covered) +
       ",\"failures\":" + fmt(res.failures) +
       ",\"rejection_rate\":" + fmt(res.rejection_rate) +
       ",\"coverage_rate\":" + fmt(res.coverage_rate) +
       ",\"extreme_case_counts\":{";
  for (int i = 0; i < kCaseTagCount; ++i) {
    if (i > 0) s += ",";
    const CaseTag tag = static_cast<CaseTag>(i);
    s += quoted(to_string(tag)) + ":" + fmt(res.case_count(tag));
  }
  s += "},\"failure_examples\":[";
  for (std::size_t i = 0; i < res.failure_examples.size(); ++i) {
    if (i > 0) s += ",";
    const FailureRecord& f = res.failure_examples[i];
    s += "{\"replicate\":" + fmt(f.replicate) + ",\"r1\":" + fmt(f.r1) +
         ",\"r2\":" + fmt(f.r2) + ",\"error\":" + quoted(f.code) + "}";
  }
  s += "]}";
  return s;
}

std::string row_error_json(std::int64_t row, const std::string& code,
                           const std::string& message) {
  return "{\"row\":" + fmt(row) + ",\"error\":" + quoted(code) +
         ",\"message\":" + quoted(message) + "}";
}

Alternative parse_alternative(const std::string& name) {
  if (name == "two-sided") return Alternative::TwoSided;
  if (name == "greater") return Alternative::Greater;
  if (name == "less") return Alternative::Less;
  throw OutOfDomain("alternative must be one of two-sided|greater|less");
}

void check_level_flag(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw OutOfDomain("level must lie in (0, 1), got " + std::to_string(level));
  }
}

std::string run_single(const TestInputs& in, std::optional<std::int64_t> row) {
  parse_alternative(in.alternative);
  check_level_flag(in.level);
  const TrialCounts counts = validate_counts(in.r1, in.n1, in.r2, in.n2);
  const Margin margin(in.margin);
  const TestResult res = z_statistic(counts, margin);
  const ConfidenceInterval ci = confidence_interval(counts, in.level);
  return test_result_json(in, res, ci, row);
}

int cmd_test(const TestInputs& in) {
  std::cout << run_single(in, std::nullopt) << "\n";
  return kExitOk;
}

// --- batch ------------------------------------------------------------

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

// Locale-independent numeric parsing; rejects anything but plain decimal
// (and exponent) notation, with no trailing junk.
bool parse_int(const std::string& s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

int cmd_batch(const std::string& path, const std::string& alternative) {
  parse_alternative(alternative);
  std::ifstream file(path);
  if (!file) {
    std::cerr << "error: cannot open input file '" << path << "'\n";
    return kExitInput;
  }
  std::string header;
  if (!std::getline(file, header)) {
    std::cerr << "error: empty input file (missing header)\n";
    return kExitInput;
  }
  const std::vector<std::string> head = split_csv(header);
  bool has_level = false;
  if (head == std::vector<std::string>{"r1", "n1", "r2", "n2", "margin"}) {
    has_level = false;
  } else if (head == std::vector<std::string>{"r1", "n1", "r2", "n2", "margin",
                                              "level"}) {
    has_level = true;
  } else {
    std::cerr << "error: header must be r1,n1,r2,n2,margin[,level]\n";
    return kExitInput;
  }

  std::string line;
  std::int64_t row = 0;
  while (std::getline(file, line)) {
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_csv(line);
    const std::size_t expected = has_level ? 6 : 5;
    TestInputs in;
    in.alternative = alternative;
    if (fields.size() != expected) {
      std::cout << row_error_json(row, "ParseError",
                                  "expected " + std::to_string(expected) +
                                      " fields, got " +
                                      std::to_string(fields.size()))
                << "\n";
      ++row;
      continue;
    }
    if (!parse_int(fields[0], in.r1) || !parse_int(fields[1], in.n1) ||
        !parse_int(fields[2], in.r2) || !parse_int(fields[3], in.n2) ||
        !parse_double(fields[4], in.margin) ||
        (has_level && !parse_double(fields[5], in.level))) {
      std::cout << row_error_json(row, "ParseError", "non-numeric field")
                << "\n";
      ++row;
      continue;
    }
    try {
      std::cout << run_single(in, row) << "\n";
    } catch (const Error& e) {
      std::cout << row_error_json(row, e.code(), e.what()) << "\n";
    }
    ++row;
  }
  return kExitOk;
}

// --- simulate ----------------------------------------------------------

struct SimFlags {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double margin = 0.0;
  double level = 0.95;
  std::string alternative;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  int threads = 0;
};

int cmd_simulate(const SimFlags& flags) {
  if (flags.threads > 0) {
    set_thread_count(flags.threads);
  }
  const SimConfig config{
      flags.n1,
      flags.n2,
      flags.p1,
      flags.p2,
      Margin(flags.margin),
      flags.level,
      parse_alternative(flags.alternative),
      flags.replicates,
      flags.seed,
  };
  const SimResult res = simulate(config);
  std::cout << sim_result_json(res) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score test for the difference of two binomial proportions"};
  app.set_version_flag("--version", std::string("fmscore ") + kVersion);
  app.require_subcommand(0, 1);

  TestInputs test_in;
  CLI::App* test = app.add_subcommand(
      "test", "Run a single hypothesis test with confidence interval");
  test->add_option("--r1", test_in.r1, "Responders in group 1")->required();
  test->add_option("--n1", test_in.n1, "Size of group 1")->required();
  test->add_option("--r2", test_in.r2, "Responders in group 2")->required();
  test->add_option("--n2", test_in.n2, "Size of group 2")->required();
  test->add_option("--margin", test_in.margin, "Null difference p1 - p2")
      ->required();
  test->add_option("--alternative", test_in.alternative,
                   "Alternative hypothesis: two-sided|greater|less")
      ->required();
  test->add_option("--level", test_in.level,
                   "Two-sided confidence level (default 0.95)");

  std::string batch_path;
  std::string batch_alt;
  CLI::App* batch = app.add_subcommand(
      "batch", "Process a CSV of trials, one JSON line per row");
  batch->add_option("--input", batch_path, "CSV with header r1,n1,r2,n2,margin[,level]")
      ->required();
  batch->add_option("--alternative", batch_alt,
                    "Alternative hypothesis: two-sided|greater|less")
      ->required();

  SimFlags sim_flags;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo operating characteristics");
  sim->add_option("--n1", sim_flags.n1, "Size of group 1")->required();
  sim->add_option("--n2", sim_flags.n2, "Size of group 2")->required();
  sim->add_option("--p1", sim_flags.p1, "True response probability, group 1")
      ->required();
  sim->add_option("--p2", sim_flags.p2, "True response probability, group 2")
      ->required();
  sim->add_option("--margin", sim_flags.margin, "Null difference p1 - p2")
      ->required();
  sim->add_option("--level", sim_flags.level, "Confidence level (default 0.95)");
  sim->add_option("--alternative", sim_flags.alternative,
                  "Alternative hypothesis: two-sided|greater|less")
      ->required();
  sim->add_option("--replicates", sim_flags.replicates, "Number of replicates")
      ->required();
  sim->add_option("--seed", sim_flags.seed, "RNG seed")->required();
  sim->add_option("--threads", sim_flags.threads,
                  "Worker threads (0 = library default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (test->parsed()) {
      return cmd_test(test_in);
    }
    if (batch->parsed()) {
      return cmd_batch(batch_path, batch_alt);
    }
    if (sim->parsed()) {
      return cmd_simulate(sim_flags);
    }
    std::cerr << "error: a subcommand is required (test|batch|simulate)\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
