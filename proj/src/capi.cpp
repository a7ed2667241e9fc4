#include "hden/hden.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hden/algebra/serialize.hpp"
#include "hden/errors.hpp"
#include "hden/geometry.hpp"
#include "hden/hironaka.hpp"
#include "hden/oracle.hpp"
#include "hden/relations.hpp"

using nlohmann::json;

struct hden_engine {
  std::shared_ptr<hden::Hironaka> hironaka = std::make_shared<hden::Hironaka>();
  std::shared_ptr<hden::ReductionEngine> reducer = std::make_shared<hden::ReductionEngine>(hironaka);
};

namespace {

thread_local std::string g_last_error;

struct Settings {
  bool json = false;
  std::optional<hden::Rational> q_eval;
  bool trace = false;
  hden::DensityEngine engine = hden::DensityEngine::reduce;
  unsigned workers = 1;
  hden::TruncationPolicy policy;
};

unsigned default_workers() {
  if (const char* env = std::getenv("HDEN_WORKERS"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Settings resolve(const hden_options* o) {
  hden_options defaults;
  hden_options_init(&defaults);
  if (!o) o = &defaults;
  Settings s;
  if (o->format != HDEN_FORMAT_TEXT && o->format != HDEN_FORMAT_JSON) throw hden::InvalidArgument("unknown output format");
  s.json = o->format == HDEN_FORMAT_JSON;
  if (o->q_eval && *o->q_eval) {
    s.q_eval = hden::parse_rational(o->q_eval);
    if (sgn(*s.q_eval) <= 0) throw hden::InvalidArgument("q_eval must be a positive rational, got " + std::string(o->q_eval));
  }
  s.trace = o->trace != 0;
  if (o->engine != HDEN_ENGINE_REDUCE && o->engine != HDEN_ENGINE_DIRECT) throw hden::InvalidArgument("unknown density engine");
  s.engine = o->engine == HDEN_ENGINE_DIRECT ? hden::DensityEngine::direct : hden::DensityEngine::reduce;
  s.workers = o->workers ? o->workers : default_workers();
  if (o->hard_cap > 0) s.policy.hard_cap = o->hard_cap;
  if (o->zero_tail_window > 0) s.policy.zero_tail_window = o->zero_tail_window;
  return s;
}

hden::Partition partition_arg(const char* text, const char* what) {
  if (!text) throw hden::InvalidArgument(std::string(what) + ": missing partition");
  try {
    return hden::Partition::parse(text);
  } catch (const hden::InvalidArgument& e) {
    throw hden::InvalidArgument(std::string(what) + ": " + e.what());
  }
}

json partition_json(const hden::Partition& p) { return std::vector<int>(p.parts().begin(), p.parts().end()); }

std::string rational_text(const hden::Rational& r) { return r.get_str(); }

struct Report {
  hden_status status = HDEN_OK;
  std::string text;
};

std::string render(const Settings& s, const json& j, const std::string& text) {
  return s.json ? j.dump(2) + "\n" : text;
}

// value line(s) and the JSON fields shared by every single-value command
void add_value(const Settings& s, const hden::RatFunc& v, json& j, std::ostringstream& text) {
  j["value"] = hden::to_json(v);
  j["text"] = v.to_string();
  text << v.to_string() << "\n";
  if (s.q_eval) {
    const std::string at = rational_text(v.evaluate_at(*s.q_eval));
    j["at"] = {{"q", rational_text(*s.q_eval)}, {"value", at}};
    text << "q = " << rational_text(*s.q_eval) << ": " << at << "\n";
  }
}

std::string density_label(const hden::Partition& xi, const hden::Partition& lambda) {
  return "A_{" + xi.to_string() + "}(A_{" + lambda.to_string() + "})";
}

void render_trace(const hden::ReductionTrace& trace, std::ostringstream& text, const std::string& indent) {
  int index = 1;
  for (const auto& st : trace.steps) {
    text << indent << index++ << ". " << st.rule_id << "  " << density_label(st.xi_before, st.lambda_before) << " = ";
    if (st.value) {
      text << st.value->to_string() << "\n";
      continue;
    }
    text << "(" << st.factor.to_string() << ") * " << density_label(st.xi_after, st.lambda_after);
    for (const auto& sib : st.siblings)
      text << " + (" << sib.coefficient.to_string() << ") * [" << density_label(sib.xi, sib.lambda)
           << " = " << sib.value.to_string() << "]";
    text << "\n";
  }
}

template <class Fn>
hden_status guarded(hden_engine* engine, char** out, Fn&& fn) {
  g_last_error.clear();
  if (!out) {
    g_last_error = "output pointer is NULL";
    return HDEN_INVALID_ARGUMENT;
  }
  *out = nullptr;
  if (!engine) {
    g_last_error = "engine handle is NULL";
    return HDEN_INVALID_ARGUMENT;
  }
  try {
    Report r = fn();
    char* buf = static_cast<char*>(std::malloc(r.text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, r.text.c_str(), r.text.size() + 1);
    *out = buf;
    return r.status;
  } catch (const hden::BudgetExceeded& e) {
    g_last_error = e.what();
    return HDEN_BUDGET_EXCEEDED;
  } catch (const hden::TruncationUnsound& e) {
    g_last_error = e.what();
    return HDEN_TRUNCATION_UNSOUND;
  } catch (const hden::InvalidArgument& e) {
    g_last_error = e.what();
    return HDEN_INVALID_ARGUMENT;
  } catch (const hden::PoleError& e) {
    g_last_error = e.what();
    return HDEN_INVALID_ARGUMENT;
  } catch (const hden::NotTabulated& e) {
    g_last_error = e.what();
    return HDEN_INVALID_ARGUMENT;
  } catch (const hden::NotLaurent& e) {
    g_last_error = e.what();
    return HDEN_INVALID_ARGUMENT;
  } catch (const hden::DivisionByZero& e) {
    g_last_error = e.what();
    return HDEN_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return HDEN_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return HDEN_INTERNAL;
  }
}

hden::Geometry geometry_for(hden_engine* e, const Settings& s) {
  return hden::Geometry(e->reducer, s.engine, s.policy, s.workers);
}

Report sum_report(const Settings& s, const hden::WeightedSum& sum, json j) {
  std::ostringstream text;
  j.update(hden::to_json(sum));
  add_value(s, sum.value, j, text);
  return {HDEN_OK, render(s, j, text.str())};
}

std::string failure_summary(std::size_t checks, std::size_t failures) {
  return std::to_string(checks) + " checks, " + std::to_string(failures) + " failures";
}

constexpr std::size_t kMaxListedFailures = 20;

}  // namespace

extern "C" {

const char* hden_version(void) { return "1.0.0"; }

void hden_options_init(hden_options* options) {
  if (!options) return;
  options->format = HDEN_FORMAT_TEXT;
  options->q_eval = nullptr;
  options->trace = 0;
  options->engine = HDEN_ENGINE_REDUCE;
  options->workers = 0;
  options->hard_cap = 0;
  options->zero_tail_window = 0;
}

hden_engine* hden_engine_new(void) {
  try {
    return new hden_engine();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void hden_engine_free(hden_engine* engine) { delete engine; }

void hden_engine_clear(hden_engine* engine) {
  if (!engine) return;
  engine->hironaka->clear();
  engine->reducer->clear();
}

const char* hden_last_error(void) { return g_last_error.c_str(); }

void hden_string_free(char* s) { std::free(s); }

hden_status hden_alpha(hden_engine* engine, const char* xi, const char* lambda, const hden_options* options,
                       char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto x = partition_arg(xi, "xi");
    const auto l = partition_arg(lambda, "lambda");
    const hden::RatFunc v = engine->hironaka->alpha(x, l);
    json j{{"xi", partition_json(x)}, {"lambda", partition_json(l)}};
    std::ostringstream text;
    add_value(s, v, j, text);
    return Report{HDEN_OK, render(s, j, text.str())};
  });
}

hden_status hden_normalized(hden_engine* engine, const char* xi, const char* lambda, const hden_options* options,
                            char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto x = partition_arg(xi, "xi");
    const auto l = partition_arg(lambda, "lambda");
    if (x.length() != l.length()) throw hden::InvalidArgument("xi and lambda must have the same length");
    hden::Reduction r;
    if (s.engine == hden::DensityEngine::reduce) {
      r = engine->reducer->reduce(x, l);
    } else {
      hden::TraceStep st;
      st.rule_id = "hironaka-fallback";
      st.xi_before = x;
      st.lambda_before = l;
      st.value = engine->hironaka->normalized(x, l);
      r.value = *st.value;
      auto trace = std::make_shared<hden::ReductionTrace>();
      trace->steps.push_back(std::move(st));
      r.trace = std::move(trace);
    }
    json j{{"xi", partition_json(x)}, {"lambda", partition_json(l)}};
    std::ostringstream text;
    add_value(s, r.value, j, text);
    if (s.trace) {
      j["trace"] = hden::trace_to_json(*r.trace);
      text << "trace (" << r.trace->steps.size() << " steps):\n";
      render_trace(*r.trace, text, "  ");
    }
    return Report{HDEN_OK, render(s, j, text.str())};
  });
}

hden_status hden_alpha_generic(hden_engine* engine, const char* xi, const char* lambda, const hden_options* options,
                               char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto x = partition_arg(xi, "xi");
    const auto l = partition_arg(lambda, "lambda");
    const hden::Reduction r = engine->reducer->alpha_generic(x, l);
    json j{{"xi", partition_json(x)}, {"lambda", partition_json(l)}};
    std::ostringstream text;
    add_value(s, r.value, j, text);
    if (s.trace) {
      j["trace"] = hden::trace_to_json(*r.trace);
      text << "trace (" << r.trace->steps.size() << " steps):\n";
      render_trace(*r.trace, text, "  ");
    }
    return Report{HDEN_OK, render(s, j, text.str())};
  });
}

hden_status hden_self_density(hden_engine* engine, const char* xi, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto x = partition_arg(xi, "xi");
    const hden::RatFunc v = engine->hironaka->self_density(x);
    json j{{"xi", partition_json(x)}};
    std::ostringstream text;
    add_value(s, v, j, text);
    try {
      const hden::RatFunc closed = hden::self_density_closed(x);
      j["closed_form"] = {{"value", hden::to_json(closed)}, {"matches", closed == v}};
      if (!(closed == v)) return Report{HDEN_VERIFY_FAILED, render(s, j, text.str() + "closed form differs: " + closed.to_string() + "\n")};
    } catch (const hden::NotTabulated&) {
      j["closed_form"] = nullptr;
    }
    return Report{HDEN_OK, render(s, j, text.str())};
  });
}

hden_status hden_derivative(hden_engine* engine, const char* b, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto cls = partition_arg(b, "class");
    return sum_report(s, geometry_for(engine, s).derivative_0000(cls), {{"class", partition_json(cls)}});
  });
}

hden_status hden_intersect(hden_engine* engine, const char* b, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto cls = partition_arg(b, "class");
    return sum_report(s, geometry_for(engine, s).sankaran_intersection(cls), {{"class", partition_json(cls)}});
  });
}

hden_status hden_verify_theorem(hden_engine* engine, int n, int s_value, const char* xi, int part_max, int lambda_min,
                                int lambda_max, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    if (n < 1) throw hden::InvalidArgument("n must be >= 1");
    if (part_max < 1 || lambda_max < 1) throw hden::InvalidArgument("part and lambda bounds must be >= 1");
    if (lambda_min < 0 || lambda_min > lambda_max) throw hden::InvalidArgument("need 0 <= lambda-min <= lambda-max");
    std::optional<hden::Partition> fixed;
    if (xi && *xi) fixed = partition_arg(xi, "xi");
    std::vector<int> s_list;
    if (s_value > 0) {
      s_list.push_back(s_value);
    } else if (fixed) {
      s_list.push_back(fixed->trailing_zeros());
    } else {
      for (int k = 1; k <= n; ++k) s_list.push_back(k);
    }
    std::size_t checks = 0;
    std::vector<hden::TheoremCheck> failures;
    for (int k : s_list) {
      for (auto& c : hden::verify_theorem(n, k, fixed, part_max, lambda_min, lambda_max, *engine->hironaka, s.workers)) {
        ++checks;
        if (!c.holds) failures.push_back(std::move(c));
      }
    }
    json j{{"n", n}, {"checks", checks}, {"ok", failures.empty()}};
    j["s"] = s_list;
    json fl = json::array();
    std::ostringstream text;
    text << "relations n=" << n << ": " << failure_summary(checks, failures.size()) << "\n";
    for (std::size_t i = 0; i < failures.size(); ++i) {
      const auto& f = failures[i];
      fl.push_back({{"xi", partition_json(f.xi)}, {"s", f.s}, {"lambda", partition_json(f.lambda)}, {"residual", hden::to_json(f.residual)}});
      if (i < kMaxListedFailures)
        text << "  FAIL xi=" << f.xi.to_string() << " s=" << f.s << " lambda=" << f.lambda.to_string()
             << " residual " << f.residual.to_string() << "\n";
    }
    j["failures"] = std::move(fl);
    return Report{failures.empty() ? HDEN_OK : HDEN_VERIFY_FAILED, render(s, j, text.str())};
  });
}

hden_status hden_verify_corollary(hden_engine* engine, int n, const char* symbol_values, int b_max,
                                  const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    if (n < 2 || n > 4) throw hden::InvalidArgument("rewrite tables exist for n in {2, 3, 4}");
    if (b_max < 1) throw hden::InvalidArgument("b_max must be >= 1");
    std::vector<int> values = n == 2 ? std::vector<int>{3, 4, 5} : std::vector<int>{3, 4};
    if (symbol_values && *symbol_values) {
      const auto p = partition_arg(symbol_values, "symbol values");
      values.assign(p.parts().begin(), p.parts().end());
      for (int v : values)
        if (v < 3) throw hden::InvalidArgument("symbol values must be >= 3");
    }
    const auto checks = hden::verify_rules(n, values, 1, b_max, *engine->hironaka, s.workers);
    std::size_t failed = 0;
    json fl = json::array();
    std::ostringstream text;
    std::vector<std::string> rules;
    for (const auto& c : checks) {
      if (rules.empty() || rules.back() != c.rule_id) rules.push_back(c.rule_id);
      if (c.holds) continue;
      fl.push_back({{"rule", c.rule_id}, {"xi", partition_json(c.xi)}, {"lambda", partition_json(c.lambda)},
                    {"lhs", hden::to_json(c.lhs)}, {"rhs", hden::to_json(c.rhs)}});
      if (failed++ < kMaxListedFailures)
        text << "  FAIL " << c.rule_id << " xi=" << c.xi.to_string() << " B=" << c.lambda.to_string() << ": "
             << c.lhs.to_string() << " vs " << c.rhs.to_string() << "\n";
    }
    const std::string head =
        "rules n=" + std::to_string(n) + " (" + std::to_string(rules.size()) + " rules): " + failure_summary(checks.size(), failed) + "\n";
    json j{{"n", n}, {"rules", rules}, {"checks", checks.size()}, {"ok", failed == 0}, {"failures", std::move(fl)}};
    return Report{failed == 0 ? HDEN_OK : HDEN_VERIFY_FAILED, render(s, j, head + text.str())};
  });
}

hden_status hden_verify_identity(hden_engine* engine, int max_part, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    if (max_part < 2) throw hden::InvalidArgument("max must be >= 2");
    const hden::Geometry g = geometry_for(engine, s);
    std::vector<std::pair<int, int>> grid;
    for (int x = 2; x <= max_part; ++x)
      for (int y = 2; y <= max_part; ++y) grid.emplace_back(x, y);
    std::vector<hden::IdentityCheck> results(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) results[i] = g.difference_identity(grid[i].first, grid[i].second);
    std::size_t failed = 0;
    json fl = json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (results[i].holds) continue;
      ++failed;
      fl.push_back({{"vx", grid[i].first}, {"vy", grid[i].second}, {"residual", hden::to_json(results[i].residual)}});
      text << "  FAIL vx=" << grid[i].first << " vy=" << grid[i].second << " residual " << results[i].residual.to_string() << "\n";
    }
    json j{{"max", max_part}, {"checks", grid.size()}, {"ok", failed == 0}, {"failures", std::move(fl)}};
    return Report{failed == 0 ? HDEN_OK : HDEN_VERIFY_FAILED,
                  render(s, j, "difference identity 2.." + std::to_string(max_part) + ": " + failure_summary(grid.size(), failed) + "\n" + text.str())};
  });
}

hden_status hden_verify_conjecture(hden_engine* engine, const char* b, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto cls = partition_arg(b, "class");
    const hden::ConjectureCheck c = geometry_for(engine, s).conjecture(cls);
    json j = hden::to_json(c);
    j["class"] = partition_json(cls);
    std::ostringstream text;
    text << "lhs " << c.lhs.to_string() << "\n"
         << "rhs " << c.rhs.to_string() << "\n"
         << (c.equal ? "equal" : "NOT equal") << "\n";
    return Report{c.equal ? HDEN_OK : HDEN_VERIFY_FAILED, render(s, j, text.str())};
  });
}

namespace {

Report agreement_report(const Settings& s, const char* what, const std::vector<hden::AgreementCheck>& checks,
                        std::uint64_t seed) {
  std::size_t failed = 0;
  json fl = json::array();
  std::ostringstream text;
  for (const auto& c : checks) {
    if (c.holds) continue;
    fl.push_back({{"xi", partition_json(c.xi)}, {"lambda", partition_json(c.lambda)},
                  {"expected", hden::to_json(c.expected)}, {"actual", hden::to_json(c.actual)}});
    if (failed++ < kMaxListedFailures)
      text << "  FAIL " << density_label(c.xi, c.lambda) << ": " << c.actual.to_string() << " vs "
           << c.expected.to_string() << "\n";
  }
  json j{{"checks", checks.size()}, {"seed", seed}, {"ok", failed == 0}, {"failures", std::move(fl)}};
  return {failed == 0 ? HDEN_OK : HDEN_VERIFY_FAILED,
          render(s, j, std::string(what) + " (seed " + std::to_string(seed) + "): " + failure_summary(checks.size(), failed) + "\n" + text.str())};
}

}  // namespace

hden_status hden_verify_engine(hden_engine* engine, unsigned count, int n_max, int part_max, uint64_t seed,
                               const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    return agreement_report(s, "rule engine vs direct",
                            hden::check_engine_agreement(*engine->reducer, count, n_max, part_max, seed, s.workers), seed);
  });
}

hden_status hden_verify_generic(hden_engine* engine, unsigned count, int n_max, int part_max, uint64_t seed,
                                const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    return agreement_report(s, "generic rewrite vs direct",
                            hden::check_generic_agreement(*engine->reducer, count, n_max, part_max, seed, s.workers), seed);
  });
}

namespace {

hden::OracleOptions oracle_options(const Settings& s, const char* budget) {
  hden::OracleOptions o;
  o.workers = s.workers;
  if (budget && *budget) {
    try {
      o.budget = hden::Integer(budget);
    } catch (const std::invalid_argument&) {
      throw hden::InvalidArgument(std::string("budget must be a decimal integer, got ") + budget);
    }
    if (o.budget <= 0) throw hden::InvalidArgument("budget must be positive");
  }
  return o;
}

json oracle_json(const hden::GaloisRingParams& params, const hden::OracleResult& r) {
  return {{"p", params.p}, {"d", params.d}, {"nonresidue", params.c}, {"count", r.count.get_str()},
          {"denominator_exp", r.denominator_exp}, {"density", rational_text(r.density)}};
}

}  // namespace

hden_status hden_oracle(hden_engine* engine, const char* lambda_a, const char* lambda_b, uint32_t p, int d,
                        uint32_t nonresidue, const char* budget, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto a = partition_arg(lambda_a, "lambda_A");
    const auto b = partition_arg(lambda_b, "lambda_B");
    const auto params = hden::galois_params(p, d, nonresidue ? std::optional<std::uint32_t>(nonresidue) : std::nullopt);
    const hden::OracleResult r = hden::density_oracle(a, b, params, oracle_options(s, budget));
    json j = oracle_json(params, r);
    j["lambda_A"] = partition_json(a);
    j["lambda_B"] = partition_json(b);
    std::ostringstream text;
    text << "count " << r.count.get_str() << "\n"
         << "density " << rational_text(r.density) << " (count / " << p << "^" << r.denominator_exp << ")\n";
    return Report{HDEN_OK, render(s, j, text.str())};
  });
}

hden_status hden_crosscheck(hden_engine* engine, const char* lambda_a, const char* lambda_b, uint32_t p, int d,
                            uint32_t nonresidue, const char* budget, const hden_options* options, char** out) {
  return guarded(engine, out, [&] {
    const Settings s = resolve(options);
    const auto a = partition_arg(lambda_a, "lambda_A");
    const auto b = partition_arg(lambda_b, "lambda_B");
    if (d <= 0) d = b.largest() + 1;
    const std::optional<std::uint32_t> c = nonresidue ? std::optional<std::uint32_t>(nonresidue) : std::nullopt;
    const auto params = hden::galois_params(p, d, c);
    const auto oopts = oracle_options(s, budget);
    const hden::Rational symbolic = engine->hironaka->alpha(a, b).evaluate_at(hden::Rational(p));
    const hden::OracleResult r = hden::density_oracle(a, b, params, oopts);
    bool agree = r.density == symbolic;

    json j{{"lambda_A", partition_json(a)}, {"lambda_B", partition_json(b)}, {"symbolic", rational_text(symbolic)}};
    j["oracle"] = oracle_json(params, r);
    std::ostringstream text;
    text << "symbolic " << rational_text(symbolic) << (agree ? " = " : " != ") << "oracle " << rational_text(r.density)
         << " at d=" << d << "\n";

    if (hden::oracle_work_estimate(p, d + 1, a.length(), b.length()) <= oopts.budget) {
      const hden::OracleResult next = hden::density_oracle(a, b, hden::galois_params(p, d + 1, c), oopts);
      const bool same = next.density == symbolic;
      agree = agree && same;
      j["confirmation"] = oracle_json(hden::galois_params(p, d + 1, c), next);
      text << "confirmed at d=" << d + 1 << ": " << rational_text(next.density) << (same ? "" : " (differs)") << "\n";
    } else {
      j["confirmation"] = nullptr;
      text << "confirmation at d=" << d + 1 << " skipped: over budget\n";
    }
    j["agree"] = agree;
    return Report{agree ? HDEN_OK : HDEN_VERIFY_FAILED, render(s, j, text.str())};
  });
}

}  // extern "C"
