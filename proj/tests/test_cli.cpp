#include "mtlambda/commands.hpp"
#include "mtlambda/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace mtlambda;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mtlambda");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("tau") {
  auto r = run({"tau", "--bound", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\t1\n2\t-24\n3\t252\n");
  CHECK(run({"tau", "--bound", "1"}).out == "1\t1\n");
  r = run({"tau", "--bound", "0"});
  CHECK(r.code == kExitUsage);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"tau"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("congruence") {
  auto r = run({"congruence", "--p", "3", "--curve", "27a1", "--bound", "1000"});
  CHECK(r.code == 0);
  CHECK(r.json()["pass"] == true);
  r = run({"congruence", "--p", "2", "--curve", "32a1", "--bound", "1000"});
  CHECK(r.code == 0);
  r = run({"congruence", "--p", "2", "--curve", "x3m2", "--bound", "100"});
  CHECK(r.code == kExitCheckFailed);
  CHECK(r.json()["reports"][0]["mismatches"].size() > 0);
  r = run({"congruence", "--p", "3", "--curve", "999z1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("unknown form '999z1'") != std::string::npos);
  CHECK(r.err.find("27a1") != std::string::npos);
  CHECK(run({"congruence", "--p", "5", "--curve", "27a1"}).code == kExitUsage);
}

TEST_CASE("theta") {
  auto r = run({"theta", "--form", "delta", "--p", "3", "--n", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["lambda"] == 1);
  r = run({"theta", "--curve", "27a1", "--p", "3", "--n", "2"});
  CHECK(r.json()["lambda"] == 7);
  CHECK(r.json()["normalization"] == "content-1 on plus Manin generators");
  r = run({"theta", "--form", "delta", "--p", "5", "--n", "1"});
  CHECK(r.json()["lambda"] == 4);
  r = run({"theta", "--curve", "32a1", "--p", "2", "--n", "1"});
  CHECK(r.json()["lambda"] == "inf");
  CHECK(r.json()["exact_zero"] == true);
  // Byte-identical output for identical invocations.
  CHECK(run({"theta", "--curve", "27a1", "--p", "3", "--n", "2"}).out ==
        run({"theta", "--curve", "27a1", "--p", "3", "--n", "2"}).out);
  r = run({"theta", "--curve", "27a1", "--p", "3", "--n", "2", "--precision", "40"});
  CHECK(r.json()["M"] == 40);
  CHECK(run({"theta", "--form", "delta", "--curve", "27a1", "--p", "3", "--n", "1"}).code == kExitUsage);
  CHECK(run({"theta", "--form", "delta", "--p", "4", "--n", "1"}).code == kExitUsage);
  CHECK(run({"theta", "--form", "delta", "--p", "3", "--n", "1", "--projection", "x"}).code == kExitUsage);
  r = run({"--budget", "100", "theta", "--form", "delta", "--p", "7", "--n", "3"});
  CHECK(r.code == kExitBudget);
}

TEST_CASE("lambda-table") {
  auto r = run({"lambda-table", "--forms", "delta,27a1", "--p", "3", "--n-max", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, delta, e27;
  std::getline(lines, header);
  std::getline(lines, delta);
  std::getline(lines, e27);
  CHECK(header.rfind("form,n=1,n=2,n=3,pattern", 0) == 0);
  CHECK(delta.rfind("delta,1,7,25,", 0) == 0);
  CHECK(e27.rfind("27a1,1,7,25,3^m - 2,", 0) == 0);
  r = run({"lambda-table", "--forms", "32a1", "--p", "2", "--n-max", "4", "--out", "json"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j[0]["entries"][0]["lambda"] == "inf");
  CHECK(j[0]["entries"][1]["lambda"] == 1);
  CHECK(j[0]["entries"][2]["lambda"] == 2);
  CHECK(j[0]["entries"][3]["lambda"] == 6);
  r = run({"lambda-table", "--forms", "", "--p", "3", "--n-max", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "form,n=1,n=2,pattern,mu,precision,normalization\r\n");
  CHECK(run({"lambda-table", "--forms", "", "--p", "3", "--n-max", "2", "--out", "json"}).out == "[]\n");
  CHECK(run({"lambda-table", "--p", "3", "--n-max", "2"}).code == kExitUsage);
  CHECK(run({"lambda-table", "--forms", "27a1", "--p", "3", "--n-max", "2", "--out", "xml"}).code == kExitUsage);
  CHECK(run({"--budget", "1000", "lambda-table", "--forms", "27a1", "--p", "3", "--n-max", "8"}).code ==
        kExitBudget);
}

TEST_CASE("predict") {
  auto r = run({"predict", "--pattern", "3^m - 2", "--p", "3", "--m", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "25\n");
  CHECK(run({"predict", "--pattern", "q_{m+1}", "--p", "3", "--m", "3"}).out == "20\n");
  CHECK(run({"predict", "--pattern", "q_m", "--p", "5", "--m", "1"}).out == "0\n");
  CHECK(run({"predict", "--pattern", "3^m + w", "--p", "3", "--m", "3"}).code == kExitUsage);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--check", "lower-bound", "--p", "3", "--curve", "27a1", "--n-max", "3"});
  CHECK(r.code == 0);
  CHECK(r.json()["pass"] == true);
  r = run({"verify", "--check", "q-congruence", "--p", "3", "--bound", "500"});
  CHECK(r.code == 0);
  r = run({"verify", "--check", "norm-relation", "--p", "7", "--curve", "147c1", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.json()["details"]["lhs_zero"] == true);
  CHECK(r.json()["details"]["rhs_zero"] == true);
  r = run({"verify", "--check", "norm-relation", "--p", "11", "--curve", "11a1", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.json()["details"]["lhs_zero"] == false);
  CHECK(r.json()["details"]["a_p"] == 1);
  r = run({"verify", "--check", "tau-lemma", "--p", "2", "--bound", "1000"});
  CHECK(r.code == 0);
  r = run({"verify", "--check", "theta-congruence", "--p", "2", "--n-max", "3"});
  CHECK(r.code == 0);  // report-only for n <= 3
  CHECK(r.json()["details"]["levels"][2]["asserted"] == false);
  CHECK(run({"verify", "--check", "bogus", "--p", "3"}).code == kExitUsage);
  CHECK(run({"verify", "--check", "norm-relation", "--p", "5", "--curve", "27a1"}).code == kExitUsage);
}

TEST_CASE("cache commands") {
  const auto dir = std::filesystem::temp_directory_path() / ("mtlambda-cli-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string d = dir.string();
  CHECK(run({"--cache-dir", d, "theta", "--curve", "11a1", "--p", "5", "--n", "1"}).code == 0);
  auto r = run({"--cache-dir", d, "cache", "list"});
  CHECK(r.code == 0);
  CHECK(r.json().size() == 1);
  CHECK(r.json()[0]["level"] == 11);
  // Warm run matches the cold one.
  CHECK(run({"--cache-dir", d, "theta", "--curve", "11a1", "--p", "5", "--n", "1"}).out ==
        run({"theta", "--curve", "11a1", "--p", "5", "--n", "1"}).out);
  r = run({"--cache-dir", d, "cache", "clear"});
  CHECK(r.code == 0);
  CHECK(run({"--cache-dir", d, "cache", "list"}).out == "[]\n");
  ::unsetenv("MTLAMBDA_CACHE_DIR");
  CHECK(run({"cache", "list"}).code == kExitUsage);
  std::filesystem::remove_all(dir);
}
