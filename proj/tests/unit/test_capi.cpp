#include <doctest.h>

#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hden/hden.h"

namespace {

struct Call {
  hden_status status;
  std::string out;
};

template <class Fn>
Call run(Fn&& fn) {
  char* out = nullptr;
  const hden_status status = fn(&out);
  Call c{status, out ? out : ""};
  if (status != HDEN_OK && status != HDEN_VERIFY_FAILED) CHECK(out == nullptr);
  hden_string_free(out);
  return c;
}

class Engine {
 public:
  Engine() : e_(hden_engine_new()) { REQUIRE(e_ != nullptr); }
  ~Engine() { hden_engine_free(e_); }
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;
  hden_engine* get() const { return e_; }

 private:
  hden_engine* e_;
};

hden_options options(hden_format format = HDEN_FORMAT_TEXT) {
  hden_options o;
  hden_options_init(&o);
  o.format = format;
  o.workers = 1;
  return o;
}

}  // namespace

TEST_CASE("densities through the C interface") {
  Engine e;
  const hden_options o = options();
  Call c = run([&](char** out) { return hden_alpha(e.get(), "4,0", "4,2", &o, out); });
  CHECK(c.status == HDEN_OK);
  CHECK(c.out == "q^6+2q^5+q^4\n");

  c = run([&](char** out) { return hden_normalized(e.get(), "3,0,0", "8,3,2", nullptr, out); });
  CHECK(c.out == "q^6+q^5+q^4\n");

  hden_options q3 = options();
  q3.q_eval = "3";
  c = run([&](char** out) { return hden_alpha(e.get(), "0", "0", &q3, out); });
  CHECK(c.out == "(q+1)/q\nq = 3: 4/3\n");

  c = run([&](char** out) { return hden_self_density(e.get(), "2,1", &o, out); });
  CHECK(c.status == HDEN_OK);
  CHECK(c.out == "q^5+2q^4+q^3\n");

  c = run([&](char** out) { return hden_alpha_generic(e.get(), "3,1,0,0,0", "4,3,1,1,1", &o, out); });
  CHECK(c.status == HDEN_OK);

  c = run([&](char** out) { return hden_derivative(e.get(), "6,4,2,1", &o, out); });
  CHECK(c.status == HDEN_OK);
  c = run([&](char** out) { return hden_intersect(e.get(), "1,1", &o, out); });
  CHECK(c.out == "-q+1\n");
}

TEST_CASE("trace output") {
  Engine e;
  hden_options o = options(HDEN_FORMAT_JSON);
  o.trace = 1;
  const Call c = run([&](char** out) { return hden_normalized(e.get(), "3,0,0", "8,3,2", &o, out); });
  REQUIRE(c.status == HDEN_OK);
  const auto j = nlohmann::json::parse(c.out);
  REQUIRE(j["trace"].size() == 9);
  CHECK(j["trace"][0]["rule"] == "C2.19.7");
  CHECK(j["text"] == "q^6+q^5+q^4");

  o.format = HDEN_FORMAT_TEXT;
  const Call t = run([&](char** out) { return hden_normalized(e.get(), "3,0,0", "8,3,2", &o, out); });
  CHECK(t.out.find("1. C2.19.7  A_{3,0,0}(A_{8,3,2}) = ") != std::string::npos);
  CHECK(t.out.find("9. hironaka-fallback  A_{1}(A_{5}) = 1") != std::string::npos);
}

TEST_CASE("status codes") {
  Engine e;
  const hden_options o = options();
  Call c = run([&](char** out) { return hden_alpha(e.get(), "4,x", "4,2", &o, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
  CHECK(std::string(hden_last_error()).find("4,x") != std::string::npos);

  c = run([&](char** out) { return hden_alpha(nullptr, "4", "4", &o, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
  CHECK(hden_alpha(e.get(), "4", "4", &o, nullptr) == HDEN_INVALID_ARGUMENT);

  hden_options bad_q = options();
  bad_q.q_eval = "-2";
  c = run([&](char** out) { return hden_alpha(e.get(), "4", "4", &bad_q, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
  bad_q.q_eval = "1";
  c = run([&](char** out) { return hden_normalized(e.get(), "0", "0", &bad_q, out); });
  CHECK(c.status == HDEN_OK);

  c = run([&](char** out) { return hden_oracle(e.get(), "1,1", "1,1", 5, 3, 0, nullptr, &o, out); });
  CHECK(c.status == HDEN_BUDGET_EXCEEDED);

  hden_options tight = options();
  tight.hard_cap = 6;
  c = run([&](char** out) { return hden_derivative(e.get(), "6,1,0,0", &tight, out); });
  CHECK(c.status == HDEN_TRUNCATION_UNSOUND);

  c = run([&](char** out) { return hden_verify_theorem(e.get(), 2, 1, nullptr, 3, 0, 3, &o, out); });
  CHECK(c.status == HDEN_VERIFY_FAILED);
  CHECK(c.out.find("FAIL") != std::string::npos);
  CHECK(c.out.find("residual") != std::string::npos);

  c = run([&](char** out) { return hden_verify_corollary(e.get(), 5, nullptr, 3, &o, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
}

TEST_CASE("sweeps through the C interface") {
  Engine e;
  const hden_options o = options(HDEN_FORMAT_JSON);
  Call c = run([&](char** out) { return hden_verify_theorem(e.get(), 3, 0, nullptr, 3, 1, 4, &o, out); });
  CHECK(c.status == HDEN_OK);
  CHECK(nlohmann::json::parse(c.out)["ok"] == true);
  c = run([&](char** out) { return hden_verify_corollary(e.get(), 3, nullptr, 3, &o, out); });
  CHECK(c.status == HDEN_OK);
  c = run([&](char** out) { return hden_verify_identity(e.get(), 4, &o, out); });
  CHECK(c.status == HDEN_OK);
  c = run([&](char** out) { return hden_verify_conjecture(e.get(), "4,3,1,1", &o, out); });
  CHECK(c.status == HDEN_OK);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["equal"] == true);
  CHECK(j["lhs"] == j["rhs"]);
  c = run([&](char** out) { return hden_verify_engine(e.get(), 50, 4, 8, 3, &o, out); });
  CHECK(c.status == HDEN_OK);
  c = run([&](char** out) { return hden_verify_generic(e.get(), 50, 5, 4, 3, &o, out); });
  CHECK(c.status == HDEN_OK);
}

TEST_CASE("oracle through the C interface") {
  Engine e;
  const hden_options o = options(HDEN_FORMAT_JSON);
  Call c = run([&](char** out) { return hden_oracle(e.get(), "0", "0", 3, 2, 0, nullptr, &o, out); });
  REQUIRE(c.status == HDEN_OK);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["count"] == "12");
  CHECK(j["denominator_exp"] == 2);
  CHECK(j["density"] == "4/3");

  const hden_options text = options();
  c = run([&](char** out) { return hden_crosscheck(e.get(), "0", "0", 3, 2, 0, nullptr, &text, out); });
  CHECK(c.status == HDEN_OK);
  CHECK(c.out.rfind("symbolic 4/3 = oracle 4/3 at d=2\n", 0) == 0);

  c = run([&](char** out) { return hden_crosscheck(e.get(), "0", "1", 3, 1, 0, nullptr, &text, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
  c = run([&](char** out) { return hden_oracle(e.get(), "0", "0", 3, 1, 0, "12x", &text, out); });
  CHECK(c.status == HDEN_INVALID_ARGUMENT);
}

TEST_CASE("engines and threads") {
  Engine e;
  hden_options reduce = options(HDEN_FORMAT_JSON), direct = options(HDEN_FORMAT_JSON);
  direct.engine = HDEN_ENGINE_DIRECT;
  for (const char* lambda : {"8,3,2", "5,3,3", "4,4,2", "7,1,1"}) {
    const Call a = run([&](char** out) { return hden_normalized(e.get(), "3,0,0", lambda, &reduce, out); });
    const Call b = run([&](char** out) { return hden_normalized(e.get(), "3,0,0", lambda, &direct, out); });
    CHECK(a.out == b.out);
  }

  std::vector<std::string> results(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < results.size(); ++i)
    threads.emplace_back([&, i] {
      char* out = nullptr;
      if (hden_normalized(e.get(), "2,0,0", "3,3,2", nullptr, &out) == HDEN_OK) results[i] = out;
      hden_string_free(out);
    });
  for (auto& t : threads) t.join();
  for (const auto& r : results) CHECK(r == "q^7+q^6+q^5+q^2\n");

  hden_engine_clear(e.get());
  hden_engine_clear(nullptr);
  CHECK(std::string(hden_version()).size() > 0);
}
