#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "hden/algebra/serialize.hpp"
#include "hden/relations.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(HDEN_CLI) + " --workers 1 " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("documented examples") {
  Result r = cli("alpha 4,0 4,2");
  CHECK(r.code == 0);
  CHECK(r.out == "q^6+2q^5+q^4\n");

  r = cli("normalized 3,0,0 8,3,2 --trace");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("q^6+q^5+q^4\ntrace (9 steps):\n", 0) == 0);
  for (const char* id : {"1. C2.19.7 ", "2. P2.15 ", "3. C2.19.8 ", "4. P2.15 ", "5. P2.14 ", "6. C2.17.2 ", "7. P2.15 ",
                         "8. P2.14 ", "9. hironaka-fallback "})
    CHECK(r.out.find(id) != std::string::npos);

  r = cli("crosscheck 0 0 --p 3 --d 2");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("symbolic 4/3 = oracle 4/3 at d=2\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli("self 2,1").code == 0);
  CHECK(cli("verify theorem --n 2 --lambda-max 3").code == 0);

  const Result failed = cli("verify theorem --n 2 --s 1 --lambda-min 0 --lambda-max 3");
  CHECK(failed.code == 1);
  CHECK(failed.out.find("FAIL") != std::string::npos);
  CHECK(failed.out.find("residual") != std::string::npos);

  const Result bad = cli("alpha 4,x 4,2", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("4,x") != std::string::npos);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("alpha 4,0").code == 2);
  CHECK(cli("alpha 2,1 2,1 --q -3").code == 2);
  CHECK(cli("alpha 2,1 2,1 --format xml").code == 2);
  CHECK(cli("verify corollary --n 7").code == 2);
  CHECK(cli("derivative 4,4,2,1").code == 2);
  CHECK(cli("oracle 0 0 --p 4 --d 1").code == 2);

  CHECK(cli("oracle 1,1 1,1 --p 5 --d 3").code == 3);
  CHECK(cli("oracle 0,0 0,0 --p 3 --d 1 --budget 100").code == 3);
  CHECK(cli("derivative 6,1,0,0 --hard-cap 6").code == 3);
}

TEST_CASE("json output round-trips") {
  for (const char* args : {"alpha 4,0 4,2", "normalized 2,0,0 3,3,2 --q 5/2", "self 3,1,0", "derivative 6,3,1,1",
                           "intersect 3,1", "generic 2,1,0,0,0 3,2,1,1,1"}) {
    const Result r = cli(std::string("--format json ") + args);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const hden::RatFunc value = hden::ratfunc_from_json(j["value"]);
    CHECK(value == hden::parse_ratfunc(j["text"].get<std::string>()));
    CHECK(hden::to_json(value) == j["value"]);
  }
  const auto c = nlohmann::json::parse(cli("--format json verify conjecture 6,2,1,0").out);
  CHECK(hden::ratfunc_from_json(c["lhs"]) == hden::ratfunc_from_json(c["rhs"]));
  const auto o = nlohmann::json::parse(cli("oracle 0,0 1 --p 3 --d 2 --format json").out);
  CHECK(o["density"] == hden::alpha(hden::Partition{0, 0}, hden::Partition{1}).evaluate_at(3).get_str());
}

TEST_CASE("reduce and direct engines print identical bytes") {
  std::vector<std::string> commands;
  for (const auto& [xi, lambda] : hden::random_density_pairs(30, 4, 8, 77))
    commands.push_back("normalized " + xi.to_string() + " " + lambda.to_string());
  commands.push_back("normalized 3,0,0 8,3,2");
  commands.push_back("normalized 6,0 8,6");
  commands.push_back("normalized 2,0,0 3,3,2");
  for (const char* tail : {"1,0,0", "1,1,1", "3,0,0", "3,1,1", "2,1,0"})
    for (int a : {4, 6, 8}) {
      commands.push_back("derivative " + std::to_string(a) + "," + tail);
      if (a < 8) commands.push_back("verify conjecture " + std::to_string(a) + "," + tail);
    }
  for (int a : {6, 8}) {
    commands.push_back("derivative " + std::to_string(a) + ",4,2,1");
    commands.push_back("verify conjecture " + std::to_string(a) + ",4,2,1");
  }
  commands.push_back("verify identity-322 --max 5");
  commands.push_back("intersect 4,2");
  for (const std::string& cmd : commands) {
    for (const char* format : {"text", "json"}) {
      const std::string base = std::string("--format ") + format + " " + cmd;
      const Result a = cli(base + " --engine reduce");
      const Result b = cli(base + " --engine direct");
      CHECK_MESSAGE(a.code == 0, cmd);
      CHECK_MESSAGE(a.out == b.out, cmd);
    }
  }
}
