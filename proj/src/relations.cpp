#include "hden/relations.hpp"

#include <map>
#include <random>
#include <tuple>

#include "hden/algebra/serialize.hpp"
#include "hden/errors.hpp"
#include "hden/parallel.hpp"

namespace hden {

namespace {

void merge_term(std::vector<RelationTerm>& terms, RatFunc coefficient, const Partition& p) {
  for (auto& t : terms) {
    if (t.partition == p) {
      t.coefficient += coefficient;
      return;
    }
  }
  terms.push_back({std::move(coefficient), p});
}

void drop_zero_terms(std::vector<RelationTerm>& terms) {
  std::erase_if(terms, [](const RelationTerm& t) { return t.coefficient.is_zero(); });
}

}  // namespace

Relation theorem_terms(int n, int s, const Partition& xi) {
  if (static_cast<int>(xi.length()) != n) throw InvalidArgument("theorem_terms: xi must have length n");
  if (s < 1 || s > n) throw InvalidArgument("theorem_terms: need 1 <= s <= n");
  if (!in_lambda_plus(xi, s))
    throw InvalidArgument("theorem_terms: " + xi.to_string() + " is not in Lambda+_{n," + std::to_string(s) + "}");
  const std::vector<RatFunc> d = d_coefficients(n, s);
  Relation rel{n, s, xi, {}};
  for (int i = 0; i <= s; ++i) merge_term(rel.terms, d[static_cast<std::size_t>(i)], xi_plus(xi, s, 0, i));
  // -(-1)^s (-q)^{-ns}
  const RatFunc outer = RatFunc::neg_q_power(-n * s) * RatFunc(s % 2 == 0 ? -1 : 1);
  for (int i = 0; i <= s; ++i)
    merge_term(rel.terms, outer * d[static_cast<std::size_t>(i)], xi_plus(xi, s, i, s - i));
  drop_zero_terms(rel.terms);
  return rel;
}

RelationCheck verify_relation(const Relation& rel, const Partition& lambda, const Hironaka& h) {
  if (static_cast<int>(lambda.length()) != rel.n) throw InvalidArgument("verify_relation: lambda must have length n");
  Laurent residual;
  for (const auto& t : rel.terms) residual += t.coefficient.as_laurent() * h.alpha_laurent(t.partition, lambda);
  return {residual.is_zero(), RatFunc(residual)};
}

namespace {

struct RuleSource {
  std::string id;
  std::string lhs;
  std::vector<std::pair<std::string, std::string>> rhs;
};

// A_lhs(B) = sum coefficient * A_rhs(B) for B with last part >= 1.
const std::vector<RuleSource>& rule_sources() {
  static const std::vector<RuleSource> rules = {
      {"C2.17.1", "0 0", {{"q+1", "1 1"}, {"-q", "2 2"}}},
      {"C2.17.2", "1 0", {{"1", "2 1"}}},
      {"C2.17.3", "2 0", {{"q(q-1)", "2 2"}}},
      {"C2.17.4", "L 0", {{"q^2", "L 2"}}},

      {"C2.19.1", "0 0 0", {{"q+1", "2 1 1"}, {"-q^3", "2 2 2"}}},
      {"C2.19.2", "1 0 0", {{"q^3+1", "1 1 1"}, {"-q", "2 2 1"}}},
      {"C2.19.3", "1 1 0", {{"1", "2 1 1"}}},
      {"C2.19.4", "L K 0", {{"q^4", "L K 2"}}},
      {"C2.19.5", "L 2 0", {{"q^3(q-1)", "L 2 2"}}},
      {"C2.19.6", "2 2 0", {{"q^2(q^2-q+1)", "2 2 2"}}},
      {"C2.19.7", "L 0 0", {{"q^2(q+1)", "L 1 1"}, {"-q^5", "L 2 2"}}},
      {"C2.19.8", "2 0 0", {{"q^2(q+1)", "2 1 1"}, {"-q^3(q^2-q+1)", "2 2 2"}}},
      {"C2.19.9", "2 1 0", {{"q(q-1)", "2 2 1"}}},
      {"C2.19.10", "L 1 0", {{"q^2", "L 2 1"}}},

      {"C2.20.1", "L K M 0", {{"q^6", "L K M 2"}}},
      {"C2.20.2", "L K 2 0", {{"q^5(q-1)", "L K 2 2"}}},
      {"C2.20.3", "L K 1 0", {{"q^4", "L K 2 1"}}},
      {"C2.20.4", "L 2 2 0", {{"q^4(q^2-q+1)", "L 2 2 2"}}},
      {"C2.20.5", "L 2 1 0", {{"q^3(q-1)", "L 2 2 1"}}},
      {"C2.20.6", "L 1 1 0", {{"q^2", "L 2 1 1"}}},
      {"C2.20.7", "2 2 2 0", {{"q^3(q^3-q^2+q-1)", "2 2 2 2"}}},
      {"C2.20.8", "2 2 1 0", {{"q^2(q^2-q+1)", "2 2 2 1"}}},
      {"C2.20.9", "2 1 1 0", {{"q(q-1)", "2 2 1 1"}}},
      {"C2.20.10", "1 1 1 0", {{"1", "2 1 1 1"}}},
      {"C2.20.11", "L K 0 0", {{"q^4(q+1)", "L K 1 1"}, {"-q^9", "L K 2 2"}}},
      {"C2.20.12", "L 2 0 0", {{"q^4(q+1)", "L 2 1 1"}, {"-q^7(q^2-q+1)", "L 2 2 2"}}},
      {"C2.20.13", "L 1 0 0", {{"q^2(q^3+1)", "L 1 1 1"}, {"-q^5", "L 2 2 1"}}},
      {"C2.20.14", "2 2 0 0", {{"q^4(q+1)", "2 2 1 1"}, {"-q^5(q^2-q+1)(q^2+1)", "2 2 2 2"}}},
      {"C2.20.15", "2 1 0 0", {{"q^2(q^3+1)", "2 1 1 1"}, {"-q^3(q^2-q+1)", "2 2 2 1"}}},
      {"C2.20.16", "1 1 0 0", {{"(q^3+1)(q^2+1)", "1 1 1 1"}, {"-q", "2 2 1 1"}}},
      {"C2.20.17", "L 0 0 0", {{"q^4(q+1)", "L 2 1 1"}, {"-q^9", "L 2 2 2"}}},
      {"C2.20.18", "2 0 0 0", {{"q^3(q^2-1)", "2 2 1 1"}, {"-q^6(q^3-q^2+q-1)", "2 2 2 2"}}},
      {"C2.20.19", "1 0 0 0", {{"q^3+1", "2 1 1 1"}, {"-q^3", "2 2 2 1"}}},
      {"C2.20.20", "0 0 0 0", {{"(q+1)(q^3+1)", "1 1 1 1"}, {"-q(q+1)", "2 2 1 1"}, {"q^6", "2 2 2 2"}}},
  };
  return rules;
}

}  // namespace

const std::vector<RewriteRule>& rewrite_rules() {
  static const std::vector<RewriteRule> rules = [] {
    std::vector<RewriteRule> out;
    for (const auto& src : rule_sources()) {
      RewriteRule r{src.id, ShapePattern::parse(src.lhs), {}};
      for (const auto& [coef, shape] : src.rhs) r.rhs.emplace_back(parse_ratfunc(coef), ShapePattern::parse(shape));
      out.push_back(std::move(r));
    }
    return out;
  }();
  return rules;
}

const RewriteRule* match_rule(const Partition& xi) {
  const RewriteRule* best = nullptr;
  for (const auto& r : rewrite_rules()) {
    if (r.lhs.length() != xi.length() || !r.lhs.match(xi)) continue;
    if (!best || r.lhs.literal_slots() > best->lhs.literal_slots()) best = &r;
  }
  return best;
}

RatFunc replay(const ReductionTrace& trace) {
  if (trace.steps.empty() || !trace.steps.back().value) throw Error("trace has no terminal step");
  RatFunc v = *trace.steps.back().value;
  for (auto it = trace.steps.rbegin() + 1; it != trace.steps.rend(); ++it) {
    if (it->value) throw Error("terminal step in the middle of a trace");
    RatFunc next = it->factor * v;
    for (const auto& sib : it->siblings) {
      if (sib.trace && !(replay(*sib.trace) == sib.value))
        throw Error("sibling " + sib.xi.to_string() + " / " + sib.lambda.to_string() + " disagrees with its trace");
      next += sib.coefficient * sib.value;
    }
    v = std::move(next);
  }
  return v;
}

namespace {

nlohmann::json partition_json(const Partition& p) { return nlohmann::json(std::vector<int>(p.parts().begin(), p.parts().end())); }

}  // namespace

nlohmann::json trace_to_json(const ReductionTrace& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& st : trace.steps) {
    nlohmann::json j{{"rule", st.rule_id},
                     {"xi_before", partition_json(st.xi_before)},
                     {"lambda_before", partition_json(st.lambda_before)}};
    if (st.value) {
      j["value"] = to_json(*st.value);
    } else {
      j["xi_after"] = partition_json(st.xi_after);
      j["lambda_after"] = partition_json(st.lambda_after);
      j["factor"] = to_json(st.factor);
    }
    if (!st.siblings.empty()) {
      nlohmann::json sibs = nlohmann::json::array();
      for (const auto& sib : st.siblings) {
        nlohmann::json s{{"coefficient", to_json(sib.coefficient)},
                         {"xi", partition_json(sib.xi)},
                         {"lambda", partition_json(sib.lambda)},
                         {"value", to_json(sib.value)}};
        if (sib.trace) s["trace"] = trace_to_json(*sib.trace);
        sibs.push_back(std::move(s));
      }
      j["siblings"] = std::move(sibs);
    }
    out.push_back(std::move(j));
  }
  return out;
}

ReductionEngine::ReductionEngine(std::shared_ptr<const Hironaka> hironaka) : hironaka_(std::move(hironaka)) {}

void ReductionEngine::clear() {
  std::unique_lock lock(mu_);
  reduce_memo_.clear();
  generic_memo_.clear();
}

Reduction ReductionEngine::reduce(const Partition& xi, const Partition& lambda) const {
  Key key{xi, lambda};
  {
    std::shared_lock lock(mu_);
    if (auto it = reduce_memo_.find(key); it != reduce_memo_.end()) return it->second;
  }
  Reduction r = reduce_uncached(xi, lambda);
  std::unique_lock lock(mu_);
  return reduce_memo_.try_emplace(std::move(key), std::move(r)).first->second;
}

namespace {

using Measure = std::tuple<int, int, std::size_t>;

Measure measure(const Partition& xi, const Partition& lambda) {
  return {lambda.weight(), xi.trailing_zeros(), xi.length()};
}

void require_decrease(const TraceStep& st, const Partition& xi, const Partition& lambda) {
  if (!(measure(xi, lambda) < measure(st.xi_before, st.lambda_before)))
    throw Error("rule " + st.rule_id + " does not decrease the termination measure at " + st.xi_before.to_string() +
                " / " + st.lambda_before.to_string());
}

Reduction terminal(TraceStep st, RatFunc value) {
  st.value = value;
  auto trace = std::make_shared<ReductionTrace>();
  trace->steps.push_back(std::move(st));
  return {std::move(value), std::move(trace)};
}

// The step followed by the continuation's trace; value = factor * next + siblings.
Reduction chain(TraceStep st, const Reduction& next) {
  RatFunc value = st.factor * next.value;
  for (const auto& sib : st.siblings) value += sib.coefficient * sib.value;
  auto trace = std::make_shared<ReductionTrace>();
  trace->steps.reserve(next.trace->steps.size() + 1);
  trace->steps.push_back(std::move(st));
  trace->steps.insert(trace->steps.end(), next.trace->steps.begin(), next.trace->steps.end());
  return {std::move(value), std::move(trace)};
}

}  // namespace

Reduction ReductionEngine::reduce_uncached(const Partition& xi, const Partition& lambda) const {
  if (xi.length() != lambda.length() || xi.empty())
    throw InvalidArgument("normalized density needs xi and lambda of equal length >= 1");
  const std::size_t n = xi.length();
  TraceStep st;
  st.xi_before = xi;
  st.lambda_before = lambda;
  st.factor = RatFunc(1);

  if ((xi.weight() - lambda.weight()) % 2 != 0) {
    st.rule_id = "parity";
    return terminal(std::move(st), RatFunc());
  }
  if (n == 1) {
    st.rule_id = "hironaka-fallback";
    return terminal(std::move(st), hironaka_->normalized(xi, lambda));
  }
  const int xi_last = xi.smallest();
  const int lambda_last = lambda.smallest();
  if (xi_last >= 1 && lambda_last >= 1) {
    st.rule_id = "P2.15";
    st.xi_after = xi.shifted(-1);
    st.lambda_after = lambda.shifted(-1);
  } else if (xi_last == 0 && lambda_last == 0) {
    st.rule_id = "P2.14";
    st.xi_after = xi.without_last();
    st.lambda_after = lambda.without_last();
  } else if (xi_last == 0 && n <= 4) {
    const RewriteRule* rule = match_rule(xi);
    if (!rule) throw Error("no rewrite rule for " + xi.to_string());
    const ShapeBindings b = *rule->lhs.match(xi);
    st.rule_id = rule->id;
    st.factor = rule->rhs.front().first;
    st.xi_after = rule->rhs.front().second.instantiate(b);
    st.lambda_after = lambda;
    for (std::size_t k = 1; k < rule->rhs.size(); ++k) {
      const Partition sib_xi = rule->rhs[k].second.instantiate(b);
      require_decrease(st, sib_xi, lambda);
      Reduction sub = reduce(sib_xi, lambda);
      st.siblings.push_back({rule->rhs[k].first, sib_xi, lambda, sub.value, sub.trace});
    }
  } else {
    st.rule_id = "hironaka-fallback";
    return terminal(std::move(st), hironaka_->normalized(xi, lambda));
  }
  require_decrease(st, st.xi_after, st.lambda_after);
  const Reduction next = reduce(st.xi_after, st.lambda_after);
  return chain(std::move(st), next);
}

Reduction ReductionEngine::alpha_generic(const Partition& xi, const Partition& lambda) const {
  Key key{xi, lambda};
  {
    std::shared_lock lock(mu_);
    if (auto it = generic_memo_.find(key); it != generic_memo_.end()) return it->second;
  }
  Reduction r = generic_uncached(xi, lambda);
  std::unique_lock lock(mu_);
  return generic_memo_.try_emplace(std::move(key), std::move(r)).first->second;
}

Reduction ReductionEngine::generic_uncached(const Partition& xi, const Partition& lambda) const {
  if (xi.length() != lambda.length() || xi.empty())
    throw InvalidArgument("generic reduction needs xi and lambda of equal length >= 1");
  const int n = static_cast<int>(xi.length());
  TraceStep st;
  st.xi_before = xi;
  st.lambda_before = lambda;

  if (lambda.smallest() == 0) {
    // alpha = alpha(A_xi, A_xi) * A_xi(A_lambda), the latter by the rule engine
    st.rule_id = "self-density";
    st.factor = hironaka_->alpha(xi, xi);
    st.xi_after = xi;
    st.lambda_after = lambda;
    const Reduction next = reduce(xi, lambda);
    return chain(std::move(st), next);
  }
  if (xi.smallest() >= 1) {
    st.rule_id = "P2.15";
    st.factor = RatFunc(IntPoly::monomial(1, n * n));
    st.xi_after = xi.shifted(-1);
    st.lambda_after = lambda.shifted(-1);
    const Reduction next = alpha_generic(st.xi_after, st.lambda_after);
    return chain(std::move(st), next);
  }

  // Solve the relation for its xi term: alpha(xi) = -sum_{other terms} c * alpha(term).
  const int s = xi.trailing_zeros();
  const Relation rel = theorem_terms(n, s, xi);
  std::vector<RelationTerm> rest;
  for (const auto& t : rel.terms) {
    if (t.partition == xi) continue;
    rest.push_back({-t.coefficient, t.partition});
  }
  st.rule_id = "T2.5-generic";
  st.lambda_after = lambda;
  if (rest.empty()) throw Error("relation for " + xi.to_string() + " has no other terms");
  st.factor = rest.front().coefficient;
  st.xi_after = rest.front().partition;
  for (std::size_t k = 1; k < rest.size(); ++k) {
    Reduction sub = alpha_generic(rest[k].partition, lambda);
    st.siblings.push_back({rest[k].coefficient, rest[k].partition, lambda, sub.value, sub.trace});
  }
  const Reduction next = alpha_generic(st.xi_after, lambda);
  return chain(std::move(st), next);
}

RatFunc reduce_normalized(const Partition& xi, const Partition& lambda) {
  static const ReductionEngine engine;
  return engine.normalized(xi, lambda);
}

RatFunc alpha_via_generic_reduction(const Partition& xi, const Partition& lambda) {
  static const ReductionEngine engine;
  return engine.alpha_generic(xi, lambda).value;
}

std::vector<RuleCheck> verify_rules(int n, const std::vector<int>& symbol_values, int b_lo, int b_hi,
                                    const Hironaka& h, unsigned workers) {
  if (b_lo < 1) throw InvalidArgument("rewrite rules hold only for B with parts >= 1");
  struct Job {
    const RewriteRule* rule;
    ShapeBindings bindings;
    Partition lambda;
  };
  std::vector<Job> jobs;
  const auto grid = partitions_in_box(static_cast<std::size_t>(n), b_lo, b_hi);
  for (const auto& r : rewrite_rules()) {
    if (static_cast<int>(r.lhs.length()) != n) continue;
    for (const auto& b : enumerate_bindings(r.lhs, symbol_values))
      for (const auto& lambda : grid) jobs.push_back({&r, b, lambda});
  }
  std::vector<RuleCheck> out(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    RuleCheck c;
    c.rule_id = job.rule->id;
    c.xi = job.rule->lhs.instantiate(job.bindings);
    c.lambda = job.lambda;
    c.lhs = h.normalized(c.xi, c.lambda);
    for (const auto& [coef, shape] : job.rule->rhs) c.rhs += coef * h.normalized(shape.instantiate(job.bindings), c.lambda);
    c.holds = c.lhs == c.rhs;
    out[i] = std::move(c);
  });
  return out;
}

std::vector<TheoremCheck> verify_theorem(int n, int s, const std::optional<Partition>& xi, int part_max,
                                         int lambda_min, int lambda_max, const Hironaka& h, unsigned workers) {
  if (n < 1 || s < 1 || s > n) throw InvalidArgument("verify_theorem: need 1 <= s <= n");
  if (lambda_min < 0 || lambda_min > lambda_max) throw InvalidArgument("verify_theorem: need 0 <= lambda_min <= lambda_max");
  std::vector<Partition> xis;
  if (xi) {
    if (static_cast<int>(xi->length()) != n || !in_lambda_plus(*xi, s))
      throw InvalidArgument("verify_theorem: " + xi->to_string() + " is not in Lambda+_{n,s}");
    xis.push_back(*xi);
  } else {
    for (const auto& head : partitions_in_box(static_cast<std::size_t>(n - s), 1, part_max)) {
      std::vector<int> parts(head.parts().begin(), head.parts().end());
      parts.insert(parts.end(), static_cast<std::size_t>(s), 0);
      xis.emplace_back(std::move(parts));
    }
  }
  std::vector<Relation> relations;
  relations.reserve(xis.size());
  for (const auto& x : xis) relations.push_back(theorem_terms(n, s, x));
  const auto grid = partitions_in_box(static_cast<std::size_t>(n), lambda_min, lambda_max);
  std::vector<TheoremCheck> out(relations.size() * grid.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const Relation& rel = relations[i / grid.size()];
    const Partition& lambda = grid[i % grid.size()];
    const RelationCheck c = verify_relation(rel, lambda, h);
    out[i] = {rel.xi, s, lambda, c.residual, c.holds};
  });
  return out;
}

std::vector<std::pair<Partition, Partition>> random_density_pairs(unsigned count, int n_max, int part_max,
                                                                   std::uint64_t seed) {
  if (n_max < 1 || part_max < 0) throw InvalidArgument("random pairs need n_max >= 1 and part_max >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, n_max);
  std::vector<std::pair<Partition, Partition>> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto n = static_cast<std::size_t>(length(rng));
    Partition xi = random_partition(rng, n, 0, part_max);
    Partition lambda = random_partition(rng, n, 0, part_max);
    if ((xi.weight() - lambda.weight()) % 2 != 0) continue;
    out.emplace_back(std::move(xi), std::move(lambda));
  }
  return out;
}

namespace {

template <class Fn>
std::vector<AgreementCheck> agreement(const std::vector<std::pair<Partition, Partition>>& pairs, unsigned workers,
                                      Fn&& evaluate) {
  std::vector<AgreementCheck> out(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    AgreementCheck c{pairs[i].first, pairs[i].second, {}, {}, false};
    std::tie(c.expected, c.actual) = evaluate(c.xi, c.lambda);
    c.holds = c.expected == c.actual;
    out[i] = std::move(c);
  });
  return out;
}

}  // namespace

std::vector<AgreementCheck> check_engine_agreement(const ReductionEngine& engine, unsigned count, int n_max,
                                                   int part_max, std::uint64_t seed, unsigned workers) {
  return agreement(random_density_pairs(count, n_max, part_max, seed), workers,
                   [&](const Partition& xi, const Partition& lambda) {
                     return std::pair{engine.hironaka().normalized(xi, lambda), engine.normalized(xi, lambda)};
                   });
}

std::vector<AgreementCheck> check_generic_agreement(const ReductionEngine& engine, unsigned count, int n_max,
                                                    int part_max, std::uint64_t seed, unsigned workers) {
  return agreement(random_density_pairs(count, n_max, part_max, seed), workers,
                   [&](const Partition& xi, const Partition& lambda) {
                     return std::pair{engine.hironaka().alpha(xi, lambda), engine.alpha_generic(xi, lambda).value};
                   });
}

}  // namespace hden
