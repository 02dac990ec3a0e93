#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "skein/cli.hpp"
#include "support/testkit.hpp"

using namespace skein;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "skein");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return testkit::data_path(rel); }

struct EnvGuard {
  std::string name;
  EnvGuard(std::string n, const char* value) : name(std::move(n)) { setenv(name.c_str(), value, 1); }
  ~EnvGuard() { unsetenv(name.c_str()); }
};
}  // namespace

TEST_CASE("bracket command") {
  auto r = run({"bracket", data("corpus/02_unknot.pd")});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "-A^2 - A^-2\n");
  CHECK(run({"bracket", data("corpus/01_empty.pd")}).out == "1\n");
  r = run({"bracket", "--oracle", data("corpus/10_trefoil.pd")});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "A^7 + A^3 + A^-1 - A^-9\n");

  r = run({"bracket", data("cli/malformed.pd")});
  CHECK(r.code == kExitInputError);
  CHECK(r.out.empty());
  CHECK(r.err.find("line 2") != std::string::npos);

  r = run({"bracket", data("cli/matching.pd")});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("closed") != std::string::npos);

  CHECK(run({"bracket", data("no/such/file.pd")}).code == kExitInputError);

  r = run({"--json", "bracket", "--oracle", data("corpus/08_hopf.pd")});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["bracket"] == "A^6 + A^2 + A^-2 + A^-6");
  CHECK(j["crossings"] == 2);
  CHECK(j["oracle"] == "agree");
}

TEST_CASE("oracle cap from the environment") {
  EnvGuard cap("SKEIN_MAX_ORACLE_CROSSINGS", "2");
  CHECK(run({"bracket", "--oracle", data("corpus/08_hopf.pd")}).code == kExitOk);
  auto r = run({"bracket", "--oracle", data("corpus/10_trefoil.pd")});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("SKEIN_MAX_ORACLE_CROSSINGS") != std::string::npos);
  CHECK(run({"bracket", data("corpus/10_trefoil.pd")}).code == kExitOk);
}

TEST_CASE("reduce command") {
  CHECK(run({"reduce", data("cli/matching.pd")}).out == "1 * {(1,4),(2,3)}\n");
  CHECK(run({"reduce", data("cli/one_crossing.pd")}).out == "A^-1 * {(1,2),(3,4)} + A * {(1,4),(2,3)}\n");
  CHECK(run({"reduce", data("cli/cap_with_loop.pd")}).out == "(-A^2 - A^-2) * {(1,2)}\n");
  auto r = run({"--json", "reduce", data("cli/matching.pd")});
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(R"({"n":2,"terms":[{"matching":[[1,4],[2,3]],"coeff":[[0,"1"]]}]})"));
}

TEST_CASE("act command") {
  const auto v = data("cli/vector_n2.txt");
  CHECK(run({"act", "", v}).out == "A * {(1,2),(3,4)} + 1 * {(1,4),(2,3)}\n");
  CHECK(run({"act", "e", v}).out == "A * {(1,2),(3,4)} + 1 * {(1,4),(2,3)}\n");
  CHECK(run({"act", "t1", v}).out == "-A^4 * {(1,2),(3,4)} + -A^3 * {(1,4),(2,3)}\n");
  CHECK(run({"act", "s3", v}).out == "(A^-1 - A^-2) * {(1,2),(3,4)} + A * {(1,4),(2,3)}\n");
  auto r = run({"act", "s4", v});
  CHECK(r.code == kExitInputError);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"act", "t1", data("cli/e1_n2.json"), "--side", "right"}).out == "-A^3 * {(1,2),(3,4)}\n");
  CHECK(run({"act", "s1", data("cli/e1_n2.json"), "--side", "right"}).out == "-A^-3 * {(1,2),(3,4)}\n");
  CHECK(run({"act", "s1", data("cli/e1_n2.json"), "--side", "right", "--view", "disk"}).code == kExitInputError);
  CHECK(run({"act", "s2", data("cli/e1_n2.json"), "--view", "rectangle"}).code == kExitInputError);
  CHECK(run({"act", "s1", v, "--side", "up"}).code == kExitInputError);
}

TEST_CASE("trace command") {
  CHECK(run({"trace", data("cli/e1_n2.json")}).out == "z^0: -A^2 - A^-2\n");
  CHECK(run({"trace", data("cli/vector_n2.txt")}).out == "z^0: -A^3 - A^-1 ; z^2: 1\n");
}

TEST_CASE("verify command") {
  auto r = run({"verify", "--n-max", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == testkit::read_file(data("golden/verify_n2.txt")));
  CHECK(run({"--jobs", "3", "verify", "--n-max", "2"}).out == r.out);

  r = run({"verify", "--n-max", "1", "--relations", "braiding"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "relation=braiding n=1 mode=exhaustive cases=1554 failures=0 status=pass\nresult=pass\n");

  r = run({"verify", "--n-max", "9"});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("cap") != std::string::npos);

  auto j = nlohmann::json::parse(run({"--json", "verify", "--n-max", "1", "--relations", "bigon"}).out);
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() == 1);
  CHECK(j["checks"][0]["cases"] == 1);
}

TEST_CASE("verify cap from the environment") {
  EnvGuard cap("SKEIN_MAX_VERIFY_N", "1");
  CHECK(run({"verify", "--n-max", "2", "--relations", "bigon"}).code == kExitInputError);
  CHECK(run({"verify", "--n-max", "1", "--relations", "bigon"}).code == kExitOk);
}

TEST_CASE("quotient command") {
  auto r0 = run({"quotient", "--n-max", "0"});
  CHECK(r0.code == kExitOk);
  CHECK(r0.out.find("\nrank=1\n") != std::string::npos);
  CHECK(run({"quotient", "--n-max", "1"}).out.find("\nrank=1\n") != std::string::npos);
  auto r4 = run({"quotient", "--n-max", "2", "--model", "two-ball"});
  CHECK(r4.out == testkit::read_file(data("golden/quotient_n2.txt")));
  auto r6 = run({"quotient", "--n-max", "2", "--word-cutoff", "6"});
  CHECK(r6.out.find("\nrank=1\n") != std::string::npos);
  CHECK(run({"quotient", "--n-max", "2", "--model", "annulus"}).code == kExitInputError);
  CHECK(run({"quotient", "--n-max", "4"}).code == kExitInputError);

  auto path = std::filesystem::temp_directory_path() / "skein_cli_matrix.json";
  auto rj = run({"--json", "quotient", "--n-max", "1", "--matrix-out", path.string()});
  auto j = nlohmann::json::parse(rj.out);
  CHECK(j["rank"] == 1);
  auto m = nlohmann::json::parse(testkit::read_file(path.string()));
  CHECK(m["columns"].size() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"--jobs", "0", "verify"}).code == kExitInputError);
  CHECK(run({"--help"}).code == kExitOk);
}
