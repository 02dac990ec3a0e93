#include "skein/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "skein/bracket.hpp"
#include "skein/error.hpp"
#include "skein/glue.hpp"

namespace skein {

namespace {

enum class Format { text, json };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  Format format = Format::text;
  int word_cutoff = 4;
  bool oracle = false;
  int jobs = 1;
};

// Thrown for problems with flags or caps; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cap_from_env(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    std::size_t used = 0;
    int cap = std::stoi(v, &used);
    if (used != std::string(v).size() || cap < 0) throw std::invalid_argument(v);
    return cap;
  } catch (const std::exception&) {
    throw UsageError(std::string("environment variable ") + name + " is not a non-negative integer");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SkeinVector parse_vector(const std::string& text, std::optional<int> n) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto second = text.find_first_not_of(" \t\r\n", first + 1);
    if (second != std::string::npos && text[second] == '"') {
      try {
        return SkeinVector::from_json(nlohmann::json::parse(text));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("vector JSON: ") + e.what());
      }
    }
  }
  return SkeinVector::parse(text, n);
}

void print_vector(std::ostream& out, const SkeinVector& v, Format f) {
  if (f == Format::json)
    out << v.to_json().dump() << "\n";
  else
    out << v.to_string() << "\n";
}

int cmd_bracket(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto d = parse_tangle(read_input(cfg.inputs.at(0)));
  if (!d.is_closed()) {
    err << "error: diagram has " << d.endpoint_count() << " endpoints; bracket needs a closed diagram\n";
    return kExitInputError;
  }
  LaurentPoly value = kauffman_bracket(d);
  std::string oracle_status = "off";
  if (cfg.oracle) {
    const int cap = cap_from_env("SKEIN_MAX_ORACLE_CROSSINGS", kDefaultOracleMaxCrossings);
    if (d.crossing_count() > cap)
      throw UsageError("oracle cap exceeded: " + std::to_string(d.crossing_count()) + " crossings > " +
                       std::to_string(cap) + " (set SKEIN_MAX_ORACLE_CROSSINGS to raise)");
    LaurentPoly check = state_sum_oracle(d, cfg.jobs, std::max(cap, kOracleMaxCrossings));
    if (check != value)
      throw InconsistencyError("oracle mismatch: recursive " + value.to_string() + ", state sum " + check.to_string());
    oracle_status = "agree";
  }
  if (cfg.format == Format::json) {
    out << nlohmann::json{{"bracket", value.to_string()},
                          {"terms", value.to_json()},
                          {"crossings", d.crossing_count()},
                          {"oracle", oracle_status}}
               .dump()
        << "\n";
  } else {
    out << value.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  print_vector(out, reduce(parse_tangle(read_input(cfg.inputs.at(0)))), cfg.format);
  return kExitOk;
}

int cmd_act(const RunConfig& cfg, const std::string& side_name, const std::string& view_name, std::optional<int> n,
            std::ostream& out) {
  SkeinVector v = parse_vector(read_input(cfg.inputs.at(1)), n);
  const Side side = side_name == "right" ? Side::right : Side::left;
  if (side == Side::right && view_name == "disk") throw UsageError("the right action acts in rectangle view only");
  const bool disk = side == Side::left && view_name != "rectangle";  // right defaults to rectangle
  const int strands = disk ? 2 * v.n() : v.n();
  FramedBraidWord w = parse_braid(cfg.inputs.at(0), strands);
  print_vector(out, side == Side::left ? act(w, v) : act_right(v, w), cfg.format);
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg, std::optional<int> n, std::ostream& out) {
  auto t = annular_trace(parse_vector(read_input(cfg.inputs.at(0)), n));
  if (cfg.format == Format::json)
    out << t.to_json().dump() << "\n";
  else
    out << t.to_string() << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& relations, int n_max, const CheckOptions& base,
               std::ostream& out) {
  const int cap = cap_from_env("SKEIN_MAX_VERIFY_N", kDefaultVerifyMaxN);
  if (n_max < 0) throw UsageError("--n-max must be non-negative");
  if (n_max > cap)
    throw UsageError("cap exceeded: --n-max " + std::to_string(n_max) + " > " + std::to_string(cap) +
                     " (set SKEIN_MAX_VERIFY_N to raise)");
  CheckOptions options = base;
  options.word_cutoff = cfg.word_cutoff;
  options.jobs = cfg.jobs;
  const bool all = relations == "all";
  std::vector<RelationCheck> checks;
  for (int n = 1; n <= n_max; ++n) {
    if (all || relations == "braiding") checks.push_back(verify_braiding(n, options));
    if (all || relations == "bigon") checks.push_back(verify_bigon(n));
    if (all || relations == "conjugation") checks.push_back(verify_conjugation(n, options));
  }
  bool passed = true;
  for (const auto& c : checks) passed = passed && c.passed();
  if (cfg.format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    out << nlohmann::json{{"relations", relations},
                          {"n_max", n_max},
                          {"word_cutoff", cfg.word_cutoff},
                          {"checks", arr},
                          {"passed", passed}}
               .dump()
        << "\n";
  } else {
    for (const auto& c : checks) {
      out << "relation=" << c.relation << " n=" << c.n << " mode=" << (c.exhaustive ? "exhaustive" : "sampled")
          << " cases=" << c.cases << " failures=" << c.failures << " status=" << (c.passed() ? "pass" : "fail");
      if (!c.witness.empty()) out << " witness=\"" << c.witness << "\"";
      out << "\n";
    }
    out << "result=" << (passed ? "pass" : "fail") << "\n";
  }
  return passed ? kExitOk : kExitVerificationFailed;
}

int cmd_quotient(const RunConfig& cfg, int n_max, const std::string& model, const std::string& matrix_out,
                 std::ostream& out) {
  if (model != "two-ball") throw UsageError("unknown model '" + model + "' (only two-ball is implemented)");
  const int cap = cap_from_env("SKEIN_MAX_QUOTIENT_N", kDefaultQuotientMaxN);
  if (n_max < 0) throw UsageError("--n-max must be non-negative");
  if (n_max > cap)
    throw UsageError("cap exceeded: --n-max " + std::to_string(n_max) + " > " + std::to_string(cap) +
                     " (set SKEIN_MAX_QUOTIENT_N to raise)");
  QuotientOptions o;
  o.n_max = n_max;
  o.word_cutoff = cfg.word_cutoff;
  o.jobs = cfg.jobs;
  o.keep_rows = !matrix_out.empty();
  QuotientReport r = quotient_report(o);
  if (!matrix_out.empty()) {
    std::ofstream f(matrix_out);
    if (!f) throw UsageError("cannot write " + matrix_out);
    f << r.matrix_json().dump() << "\n";
  }
  if (cfg.format == Format::json) {
    out << r.to_json().dump() << "\n";
    return kExitOk;
  }
  out << "model=two-ball\n"
      << "n_max=" << r.n_max << "\n"
      << "word_cutoff=" << r.word_cutoff << "\n"
      << "columns=" << r.columns.size() << "\n"
      << "words=" << r.words << "\n"
      << "braiding_rows=" << r.braiding_rows << "\n"
      << "bigon_rows=" << r.bigon_rows << "\n";
  for (std::size_t i = 0; i < r.braiding_ranks.size(); ++i)
    out << "braiding_rank_n" << i + 1 << "=" << r.braiding_ranks[i] << "\n";
  out << "rows_in_pairing_kernel=" << (r.rows_in_pairing_kernel ? "true" : "false") << "\n"
      << "relation_rank=" << r.relation_rank << "\n";
  for (const auto& [a, k] : r.evaluated_ranks) out << "relation_rank_at_A=" << a.str() << " " << k << "\n";
  out << "rank=" << r.rank << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kauffman bracket skein computations"};
  app.name(args.empty() ? "skein" : args[0]);
  app.require_subcommand(1);

  RunConfig cfg;
  bool json = false;
  app.add_flag("--json", json, "JSON output")->configurable(false);
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.fallthrough();

  auto* bracket = app.add_subcommand("bracket", "Kauffman bracket of a closed diagram");
  std::string diagram_path;
  bracket->add_option("file", diagram_path, "diagram file, - for stdin")->required();
  bracket->add_flag("--oracle", cfg.oracle, "cross-check with the exhaustive state sum");

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a tangle to the crossingless basis");
  std::string tangle_path;
  reduce_cmd->add_option("file", tangle_path, "tangle file, - for stdin")->required();

  auto* act_cmd = app.add_subcommand("act", "apply a framed braid word to a skein vector");
  std::string word, vector_path, side = "left", view;
  std::optional<int> act_n;
  act_cmd->add_option("word", word, "braid word, e.g. \"s1 t2^-1\"; e for the empty word")->required();
  act_cmd->add_option("file", vector_path, "vector file (text or JSON), - for stdin")->required();
  act_cmd->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
  act_cmd->add_option("--view", view, "disk (2n strands, default for left) or rectangle (n strands)")
      ->check(CLI::IsMember({"disk", "rectangle"}));
  act_cmd->add_option("--n", act_n, "arc count, needed only for the zero vector");

  auto* trace_cmd = app.add_subcommand("trace", "annular closure of a rectangle-view vector");
  std::string trace_path;
  std::optional<int> trace_n;
  trace_cmd->add_option("file", trace_path, "vector file, - for stdin")->required();
  trace_cmd->add_option("--n", trace_n, "arc count, needed only for the zero vector");

  auto* verify = app.add_subcommand("verify", "check braiding, bigon and conjugation relations");
  std::string relations = "all";
  int verify_n = 2;
  CheckOptions check_options;
  verify->add_option("--relations", relations, "braiding, bigon, conjugation or all")
      ->check(CLI::IsMember({"braiding", "bigon", "conjugation", "all"}));
  verify->add_option("--n-max", verify_n, "largest arc count");
  verify->add_option("--word-cutoff", cfg.word_cutoff, "longest braid word")->check(CLI::PositiveNumber);
  verify->add_option("--samples", check_options.samples, "random instances above the exhaustive range")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", check_options.seed, "seed for sampled checks");

  auto* quotient = app.add_subcommand("quotient", "rank of the relation quotient");
  int quotient_n = 2;
  std::string model = "two-ball", matrix_out;
  quotient->add_option("--n-max", quotient_n, "largest arc count");
  quotient->add_option("--model", model, "gluing model")->capture_default_str();
  quotient->add_option("--word-cutoff", cfg.word_cutoff, "longest braid word")->check(CLI::PositiveNumber);
  quotient->add_option("--matrix-out", matrix_out, "write the relation matrix as JSON");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("skein");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  cfg.format = json ? Format::json : Format::text;

  try {
    if (bracket->parsed()) {
      cfg.command = "bracket";
      cfg.inputs = {diagram_path};
      return cmd_bracket(cfg, out, err);
    }
    if (reduce_cmd->parsed()) {
      cfg.command = "reduce";
      cfg.inputs = {tangle_path};
      return cmd_reduce(cfg, out);
    }
    if (act_cmd->parsed()) {
      cfg.command = "act";
      cfg.inputs = {word, vector_path};
      return cmd_act(cfg, side, view, act_n, out);
    }
    if (trace_cmd->parsed()) {
      cfg.command = "trace";
      cfg.inputs = {trace_path};
      return cmd_trace(cfg, trace_n, out);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, relations, verify_n, check_options, out);
    }
    if (quotient->parsed()) {
      cfg.command = "quotient";
      return cmd_quotient(cfg, quotient_n, model, matrix_out, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistency;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "error: no command\n";
  return kExitInputError;
}

}  // namespace skein
