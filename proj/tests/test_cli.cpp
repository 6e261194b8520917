#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "logtr/io.hpp"

using namespace logtr;

namespace {

std::string cli_path() {
  const char* p = std::getenv("LOGTR_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_tmp(const std::string& name, const std::string& content) {
  std::string path = "cli_fixture_" + name + ".json";
  std::ofstream f(path);
  f << content;
  return path;
}

const char* kSw2 = R"({
  "variable": "z",
  "x": {"num": ["0", "1"], "den": ["1"]},
  "y": {"num": ["0"], "den": ["1"],
        "logs": [{"point": "0", "weight": "1"}, {"point": "1", "weight": "1"}]}
})";

const char* kCubic = R"({
  "x": {"num": ["0", "0", "0", "1"], "den": ["1"]},
  "y": {"num": ["0", "1"], "den": ["1"]}
})";

const char* kDupLogs = R"({
  "x": {"num": ["0", "1"], "den": ["1"]},
  "y": {"num": ["0"], "den": ["1"],
        "logs": [{"point": "0", "weight": "1"}, {"point": "0", "weight": "2"}]}
})";

}  // namespace

TEST_CASE("validate exit codes") {
  auto sw = write_tmp("sw2", kSw2);
  CHECK(run("validate " + sw).code == 0);
  auto cubic = write_tmp("cubic", kCubic);
  CHECK(run("validate " + cubic).code == 2);
  auto dup = write_tmp("dup", kDupLogs);
  CHECK(run("validate " + dup).code == 2);
  auto bad = write_tmp("bad", "{not json");
  CHECK(run("validate " + bad).code == 2);
  auto unknown = write_tmp("unknown", R"({"x": {"num": ["1"]}, "y": {"num": ["1"]}, "zzz": 1})");
  CHECK(run("validate " + unknown).code == 2);
}

TEST_CASE("omega output matches the documented form") {
  auto sw = write_tmp("sw2", kSw2);
  RunResult r = run("omega " + sw + " --h 1 --n 1");
  CHECK(r.code == 0);
  CHECK(r.out == "1/24 * dz/(z-0)^2 + 1/24 * dz/(z-1)^2\n");
  // deterministic bytes
  CHECK(run("omega " + sw + " --h 1 --n 1").out == r.out);
  // beyond the configured limits
  CHECK(run("omega " + sw + " --h 9 --n 1").code == 3);
  // empty correlator prints 0
  const char* kNoSpecials = R"({
    "x": {"num": ["0", "1"], "den": ["1"]},
    "y": {"num": ["0", "0", "1"], "den": ["1"]}
  })";
  auto plain = write_tmp("plain", kNoSpecials);
  CHECK(run("omega " + plain + " --h 2 --n 1").out == "0\n");
}

TEST_CASE("omega json round-trips") {
  auto sw = write_tmp("sw2", kSw2);
  RunResult r = run("omega " + sw + " --h 2 --n 1 --format json");
  CHECK(r.code == 0);
  PoleSum w = polesum_from_json(r.out);
  PoleSum expect(1);
  expect.add_term({Factor{Rat(0), 4}}, Rat(-7, 960));
  expect.add_term({Factor{Rat(1), 4}}, Rat(-7, 960));
  CHECK(w == expect);
}

TEST_CASE("free-energy values and the tau marker") {
  auto sw = write_tmp("sw2", kSw2);
  CHECK(run("free-energy " + sw + " --h 2").out == "1/240\n");
  CHECK(run("free-energy " + sw + " --h 3").out == "-1/1008\n");
  // Lambda = 24, M = 1: F_1 = -1
  const char* kLam = R"({
    "x": {"num": ["0", "1"], "den": ["1"]},
    "y": {"num": ["24"], "den": ["1"], "logs": [{"point": "0", "weight": "1"}]}
  })";
  auto lam = write_tmp("lam", kLam);
  RunResult f1 = run("free-energy " + lam + " --h 1");
  CHECK(f1.code == 0);
  CHECK(f1.out == "-1\n");
  // ramification present: value printed with the marker, unsupported exit
  const char* kMixed = R"({
    "x": {"num": ["0", "0", "1"], "den": ["1"]},
    "y": {"num": ["0", "1"], "den": ["1"], "logs": [{"point": "3", "weight": "1"}]}
  })";
  auto mixed = write_tmp("mixed", kMixed);
  RunResult fm = run("free-energy " + mixed + " --h 1");
  CHECK(fm.code == 3);
  CHECK(fm.out.find("tau term omitted") != std::string::npos);
}

TEST_CASE("check suites and the corruption hook") {
  auto sw = write_tmp("sw2", kSw2);
  CHECK(run("check " + sw + " --suite loops").code == 0);
  CHECK(run("check " + sw + " --suite dilaton").code == 0);
  CHECK(run("check " + sw + " --suite nonsense").code == 2);
  RunResult bad = run("check " + sw + " --suite loops --corrupt-cache 1,1");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("paper-examples subsets") {
  CHECK(run("paper-examples --only sw-half --threads 0").code == 0);
  RunResult r = run("paper-examples --only strip --format json --threads 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  CHECK(r.out.find("\"pass\": false") == std::string::npos);
}
