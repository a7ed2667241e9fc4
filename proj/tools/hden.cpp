#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "hden/hden.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct Globals {
  std::string format = "text";
  std::string q;
  unsigned workers = 0;
  int hard_cap = 0;
  int window = 0;
  bool trace = false;
  std::string engine = "reduce";
};

struct OracleArgs {
  std::string lambda_a, lambda_b;
  std::uint32_t p = 3;
  int d = 0;
  std::uint32_t nonresidue = 0;
  std::string budget;
};

int finish(hden_status status, char* out) {
  if (out) {
    std::fputs(out, stdout);
    hden_string_free(out);
  }
  switch (status) {
    case HDEN_OK:
      return kOk;
    case HDEN_VERIFY_FAILED:
      return kVerifyFailed;
    case HDEN_INVALID_ARGUMENT:
      std::fprintf(stderr, "hden: %s\n", hden_last_error());
      return kUsage;
    case HDEN_BUDGET_EXCEEDED:
    case HDEN_TRUNCATION_UNSOUND:
      std::fprintf(stderr, "hden: %s\n", hden_last_error());
      return kResource;
    default:
      std::fprintf(stderr, "hden: %s\n", hden_last_error());
      return kVerifyFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact hermitian representation densities"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(hden_version()));

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--q", g.q, "Also evaluate the result at this positive rational");
  app.add_option("--workers", g.workers, "Worker threads (default: HDEN_WORKERS or hardware concurrency)");
  app.add_option("--hard-cap", g.hard_cap, "Highest level of truncated sums (default: largest part + 2)");
  app.add_option("--window", g.window, "Trailing levels that must vanish in truncated sums (default 2)");

  std::function<hden_status(hden_engine*, const hden_options*, char**)> action;

  std::string xi, lambda, cls;

  auto* alpha = app.add_subcommand("alpha", "Direct density alpha(A_xi, A_lambda)");
  alpha->add_option("xi", xi)->required();
  alpha->add_option("lambda", lambda)->required();
  alpha->callback([&] { action = [&](auto* e, auto* o, char** out) { return hden_alpha(e, xi.c_str(), lambda.c_str(), o, out); }; });

  auto* normalized = app.add_subcommand("normalized", "Normalized density A_xi(A_lambda)");
  normalized->add_option("xi", xi)->required();
  normalized->add_option("lambda", lambda)->required();
  normalized->add_flag("--trace", g.trace, "Print the reduction steps");
  normalized->add_option("--engine", g.engine)->check(CLI::IsMember({"reduce", "direct"}))->capture_default_str();
  normalized->callback(
      [&] { action = [&](auto* e, auto* o, char** out) { return hden_normalized(e, xi.c_str(), lambda.c_str(), o, out); }; });

  auto* generic = app.add_subcommand("generic", "alpha(A_xi, A_lambda) through the generic relation rewrite");
  generic->add_option("xi", xi)->required();
  generic->add_option("lambda", lambda)->required();
  generic->add_flag("--trace", g.trace, "Print the rewrite steps");
  generic->callback(
      [&] { action = [&](auto* e, auto* o, char** out) { return hden_alpha_generic(e, xi.c_str(), lambda.c_str(), o, out); }; });

  auto* self = app.add_subcommand("self", "Self density alpha(A_xi, A_xi)");
  self->add_option("xi", xi)->required();
  self->callback([&] { action = [&](auto* e, auto* o, char** out) { return hden_self_density(e, xi.c_str(), o, out); }; });

  auto* derivative = app.add_subcommand("derivative", "Derived density A'_0000(A_b) for b = a,b,c,d");
  derivative->add_option("class", cls)->required();
  derivative->add_option("--engine", g.engine)->check(CLI::IsMember({"reduce", "direct"}))->capture_default_str();
  derivative->callback([&] { action = [&](auto* e, auto* o, char** out) { return hden_derivative(e, cls.c_str(), o, out); }; });

  auto* intersect = app.add_subcommand("intersect", "Intersection number on N^1(1,1) for b = l,k");
  intersect->add_option("class", cls)->required();
  intersect->add_option("--engine", g.engine)->check(CLI::IsMember({"reduce", "direct"}))->capture_default_str();
  intersect->callback([&] { action = [&](auto* e, auto* o, char** out) { return hden_intersect(e, cls.c_str(), o, out); }; });

  auto* verify = app.add_subcommand("verify", "Verification sweeps");
  verify->require_subcommand(1);

  int n = 0, s = 0, part_max = 3, lambda_min = 1, lambda_max = 4, b_max = 3, max_part = 5;
  std::string symbols;
  auto* theorem = verify->add_subcommand("theorem", "Inter-density relations for every xi in the sweep");
  theorem->add_option("--n", n)->required();
  theorem->add_option("--s", s, "Trailing zero count (default: all of 1..n)");
  theorem->add_option("--xi", xi, "Check a single xi");
  theorem->add_option("--part-max", part_max, "Largest nonzero part of xi")->capture_default_str();
  theorem->add_option("--lambda-min", lambda_min, "Smallest part of lambda (0 gives a negative control)")
      ->capture_default_str();
  theorem->add_option("--lambda-max", lambda_max, "Largest part of lambda")->capture_default_str();
  theorem->callback([&] {
    action = [&](auto* e, auto* o, char** out) {
      return hden_verify_theorem(e, n, s, xi.c_str(), part_max, lambda_min, lambda_max, o, out);
    };
  });

  auto* corollary = verify->add_subcommand("corollary", "Rewrite rules against direct evaluation");
  corollary->add_option("--n", n)->required()->check(CLI::Range(2, 4));
  corollary->add_option("--symbols", symbols, "Values bound to rule symbols, e.g. 3,4");
  corollary->add_option("--b-max", b_max, "Largest part of B")->capture_default_str();
  corollary->callback([&] {
    action = [&](auto* e, auto* o, char** out) { return hden_verify_corollary(e, n, symbols.c_str(), b_max, o, out); };
  });

  auto* identity = verify->add_subcommand("identity-322", "Difference identity for derived densities");
  identity->add_option("--max", max_part)->capture_default_str();
  identity->add_option("--engine", g.engine)->check(CLI::IsMember({"reduce", "direct"}))->capture_default_str();
  identity->callback([&] { action = [&](auto* e, auto* o, char** out) { return hden_verify_identity(e, max_part, o, out); }; });

  auto* conjecture = verify->add_subcommand("conjecture", "Intersection conjecture for b = a,b,c,d");
  conjecture->add_option("class", cls)->required();
  conjecture->add_option("--engine", g.engine)->check(CLI::IsMember({"reduce", "direct"}))->capture_default_str();
  conjecture->callback(
      [&] { action = [&](auto* e, auto* o, char** out) { return hden_verify_conjecture(e, cls.c_str(), o, out); }; });

  unsigned count = 200;
  int n_max = 4, random_part_max = 8;
  std::uint64_t seed = 1;
  auto* engine_check = verify->add_subcommand("engine", "Random rule-engine results against direct evaluation");
  engine_check->add_option("--count", count)->capture_default_str();
  engine_check->add_option("--n-max", n_max)->capture_default_str();
  engine_check->add_option("--part-max", random_part_max)->capture_default_str();
  engine_check->add_option("--seed", seed)->capture_default_str();
  engine_check->callback([&] {
    action = [&](auto* e, auto* o, char** out) {
      return hden_verify_engine(e, count, n_max, random_part_max, seed, o, out);
    };
  });

  auto* generic_check = verify->add_subcommand("generic", "Random generic rewrites against direct evaluation");
  generic_check->add_option("--count", count)->capture_default_str();
  generic_check->add_option("--n-max", n_max)->capture_default_str();
  generic_check->add_option("--part-max", random_part_max)->capture_default_str();
  generic_check->add_option("--seed", seed)->capture_default_str();
  generic_check->callback([&] {
    action = [&](auto* e, auto* o, char** out) {
      return hden_verify_generic(e, count, n_max, random_part_max, seed, o, out);
    };
  });

  OracleArgs oa;
  auto add_oracle_options = [&](CLI::App* sub, bool d_required) {
    sub->add_option("lambda_A", oa.lambda_a)->required();
    sub->add_option("lambda_B", oa.lambda_b)->required();
    sub->add_option("--p", oa.p, "Odd prime")->required();
    auto* d = sub->add_option("--d", oa.d, "Precision: count modulo p^d");
    if (d_required) d->required();
    sub->add_option("--nonresidue", oa.nonresidue, "Quadratic non-residue c (default: smallest)");
    sub->add_option("--budget", oa.budget, "Largest allowed naive search size (default 2^36)");
  };
  auto* oracle = app.add_subcommand("oracle", "Count solutions over a finite Galois ring");
  add_oracle_options(oracle, true);
  oracle->callback([&] {
    action = [&](auto* e, auto* o, char** out) {
      return hden_oracle(e, oa.lambda_a.c_str(), oa.lambda_b.c_str(), oa.p, oa.d, oa.nonresidue,
                         oa.budget.empty() ? nullptr : oa.budget.c_str(), o, out);
    };
  });
  auto* crosscheck = app.add_subcommand("crosscheck", "Compare the symbolic density at q = p with the oracle");
  add_oracle_options(crosscheck, false);
  crosscheck->callback([&] {
    action = [&](auto* e, auto* o, char** out) {
      return hden_crosscheck(e, oa.lambda_a.c_str(), oa.lambda_b.c_str(), oa.p, oa.d, oa.nonresidue,
                             oa.budget.empty() ? nullptr : oa.budget.c_str(), o, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  hden_options opts;
  hden_options_init(&opts);
  opts.format = g.format == "json" ? HDEN_FORMAT_JSON : HDEN_FORMAT_TEXT;
  opts.q_eval = g.q.empty() ? nullptr : g.q.c_str();
  opts.trace = g.trace ? 1 : 0;
  opts.engine = g.engine == "direct" ? HDEN_ENGINE_DIRECT : HDEN_ENGINE_REDUCE;
  opts.workers = g.workers;
  opts.hard_cap = g.hard_cap;
  opts.zero_tail_window = g.window;

  std::unique_ptr<hden_engine, decltype(&hden_engine_free)> engine(hden_engine_new(), hden_engine_free);
  if (!engine) {
    std::fprintf(stderr, "hden: %s\n", hden_last_error());
    return kVerifyFailed;
  }
  char* out = nullptr;
  const hden_status status = action(engine.get(), &opts, &out);
  return finish(status, out);
}
