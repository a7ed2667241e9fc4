#include "hden/geometry.hpp"

#include <algorithm>

#include "hden/algebra/serialize.hpp"
#include "hden/errors.hpp"
#include "hden/parallel.hpp"

namespace hden {

namespace {

Partition sorted_partition(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

RatFunc poly(const char* text) { return parse_ratfunc(text); }

nlohmann::json partition_json(const Partition& p) { return std::vector<int>(p.parts().begin(), p.parts().end()); }

}  // namespace

Geometry::Geometry(std::shared_ptr<const ReductionEngine> engine, DensityEngine which, TruncationPolicy policy,
                   unsigned workers)
    : engine_(std::move(engine)), which_(which), policy_(policy), workers_(std::max(1u, workers)) {
  if (policy_.zero_tail_window < 2) throw InvalidArgument("zero_tail_window must be >= 2");
}

RatFunc Geometry::density(const Partition& xi, const Partition& lambda) const {
  return which_ == DensityEngine::reduce ? engine_->normalized(xi, lambda) : engine_->hironaka().normalized(xi, lambda);
}

WeightedSum Geometry::truncated_sum(const Partition& target, int first_level, const LevelFn& level_terms,
                                    const TruncationPolicy& policy) const {
  const int cap = policy.hard_cap.value_or(target.largest() + 2);
  if (cap < target.largest()) throw InvalidArgument("hard_cap must be at least the largest part of the target");
  const int window = policy.zero_tail_window;
  if (window < 2) throw InvalidArgument("zero_tail_window must be >= 2");
  const int probe = cap + 1;

  struct Pending {
    int level;
    LevelTerm term;
    RatFunc density;
    RatFunc multiplier = RatFunc(1);
  };
  std::vector<Pending> pending;
  for (int level = first_level; level <= probe; ++level)
    for (auto& t : level_terms(level)) pending.push_back({level, std::move(t), RatFunc()});

  parallel_for(pending.size(), workers_, [&](std::size_t i) { pending[i].density = density(pending[i].term.xi, target); });

  for (const auto& p : pending) {
    if (p.level > cap - window && !p.density.is_zero())
      throw TruncationUnsound("term A_" + p.term.xi.to_string() + "(A_" + target.to_string() + ") at level " +
                              std::to_string(p.level) + " is nonzero; the sum is not known to stop by level " +
                              std::to_string(cap));
  }

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < pending.size(); ++i)
    if (!pending[i].density.is_zero() && pending[i].term.multiplier) live.push_back(i);
  parallel_for(live.size(), workers_, [&](std::size_t k) {
    auto& p = pending[live[k]];
    p.multiplier = p.term.multiplier();
  });

  WeightedSum out;
  out.truncation = {cap, window, probe};
  for (auto& p : pending) {
    if (p.density.is_zero()) continue;
    SumTerm t{p.term.weight, p.term.xi, target, p.density, std::nullopt, p.term.weight * p.density};
    if (p.term.multiplier) {
      t.multiplier = p.multiplier;
      t.contribution *= p.multiplier;
    }
    out.value += t.contribution;
    out.terms.push_back(std::move(t));
  }
  return out;
}

WeightedSum Geometry::derivative_0000(const Partition& b) const {
  if (b.length() != 4) throw InvalidArgument("derivative_0000 needs a class of length 4");
  if (b[0] <= b[1]) throw InvalidArgument("derivative_0000 needs the first part strictly largest");
  return derivative_unchecked(b);
}

WeightedSum Geometry::derivative_unchecked(const Partition& b) const {
  const RatFunc w1 = 1;
  const RatFunc w2 = poly("1+q");
  const RatFunc w3 = poly("(1+q)(1-q^2)");
  const RatFunc w4 = poly("(1+q)(1-q^2)(1+q^3)");
  const LevelFn terms = [=](int l) {
    std::vector<LevelTerm> out;
    out.push_back({w1, Partition{l, 0, 0, 0}, {}});
    for (int k = 1; k <= l; ++k) {
      out.push_back({w2, Partition{l, k, 0, 0}, {}});
      for (int m = 1; m <= k; ++m) {
        out.push_back({w3, Partition{l, k, m, 0}, {}});
        for (int e = 1; e <= m; ++e) out.push_back({w4, Partition{l, k, m, e}, {}});
      }
    }
    return out;
  };
  return truncated_sum(b, 1, terms, policy_);
}

WeightedSum Geometry::sankaran_intersection(const Partition& b) const {
  if (b.length() != 2) throw InvalidArgument("sankaran_intersection needs a class of length 2");
  const RatFunc minus_q_minus_1 = poly("-(q-1)");
  const RatFunc minus_q2_minus_1 = poly("-(q^2-1)");
  const LevelFn terms = [=](int l) {
    std::vector<LevelTerm> out;
    if (l == 1) {
      out.push_back({minus_q_minus_1, Partition{1, 1}, {}});
      return out;
    }
    for (int k = 2; k <= l; ++k) out.push_back({minus_q2_minus_1, Partition{l, k}, {}});
    out.push_back({1, Partition{l, 1}, {}});
    out.push_back({1, Partition{l, 0}, {}});
    return out;
  };
  return truncated_sum(b, 1, terms, policy_);
}

IdentityCheck Geometry::difference_identity(int vx, int vy) const {
  if (vx < 2 || vy < 2) throw InvalidArgument("difference identity needs both valuations >= 2");
  const Partition b = sorted_partition({vx, vy});
  const Partition b_y = sorted_partition({vx, vy - 2});
  IdentityCheck c;
  const RatFunc q = RatFunc::q();
  c.lhs = -q * density(Partition{1, 1}, b) + density(Partition{0, 0}, b_y) - q * density(Partition{1, 1}, b_y) +
          density(Partition{2, 2}, b);

  const RatFunc q2 = poly("q^2");
  const LevelFn terms = [=](int l) -> std::vector<LevelTerm> {
    switch (l) {
      case 1:
        return {{poly("-(q-1)"), Partition{1, 1}, {}}};
      case 2:
        return {{poly("-(q^2-1)"), Partition{2, 2}, {}}, {1, Partition{2, 0}, {}}};
      case 3:
        return {{poly("-(q^2-q)"), Partition{3, 3}, {}}, {1, Partition{3, 1}, {}}};
      default:
        return {{1, Partition{l, 0}, {}}, {-q2, Partition{l, 2}, {}}, {1, Partition{l, 1}, {}}, {-q2, Partition{l, 3}, {}}};
    }
  };
  c.rhs = truncated_sum(b, 1, terms, policy_).value;
  c.residual = c.lhs - c.rhs;
  c.holds = c.residual.is_zero();
  return c;
}

ConjectureCheck Geometry::conjecture(const Partition& b) const {
  if (b.length() != 4) throw InvalidArgument("conjecture check needs a class of length 4");
  const int a = b[0];
  if (a <= b[1]) throw InvalidArgument("conjecture check needs the first part strictly largest");
  if (a % 2 != 0) throw InvalidArgument("conjecture check needs an even first part");
  const Partition inner{b[1], b[2], b[3]};

  ConjectureCheck c;
  c.lhs_sum = derivative_unchecked(b);
  c.lhs = c.lhs_sum.value;

  // Inner derivatives use the default truncation for their own targets.
  const Geometry nested(engine_, which_, TruncationPolicy{std::nullopt, policy_.zero_tail_window}, workers_);
  const auto derivative_at = [nested, a](int l) { return nested.derivative_unchecked(sorted_partition({a, l, 0, 0})).value; };
  const auto type3_at = [nested, a](std::vector<int> rest) {
    rest.push_back(a);
    return nested.density(Partition{1, 1, 1, 0}, sorted_partition(std::move(rest)));
  };
  const RatFunc w3 = poly("1-q^2");
  const RatFunc w4 = poly("(1+q)(1-q^2)");
  const LevelFn terms = [=](int l) {
    std::vector<LevelTerm> out;
    if (l == 1) out.push_back({1, Partition{1, 0, 0}, [=] { return derivative_at(1); }});
    if (l >= 3) out.push_back({1, Partition{l, 0, 0}, [=] { return derivative_at(l) - derivative_at(l - 2); }});
    for (int k = 1; k <= l; ++k) {
      out.push_back({w3, Partition{l, k, 0}, [=] { return type3_at({l, k, 0}); }});
      for (int m = 1; m <= k; ++m) out.push_back({w4, Partition{l, k, m}, [=] { return type3_at({l, k, m}); }});
    }
    return out;
  };
  c.rhs_sum = truncated_sum(inner, 1, terms, policy_);
  c.rhs = c.rhs_sum.value;
  c.equal = c.lhs == c.rhs;
  return c;
}

nlohmann::json to_json(const WeightedSum& sum) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : sum.terms) {
    nlohmann::json j{{"weight", to_json(t.weight)},
                     {"xi", partition_json(t.xi)},
                     {"target", partition_json(t.target)},
                     {"density", to_json(t.density)},
                     {"contribution", to_json(t.contribution)}};
    if (t.multiplier) j["multiplier"] = to_json(*t.multiplier);
    terms.push_back(std::move(j));
  }
  return {{"value", to_json(sum.value)},
          {"truncation",
           {{"hard_cap", sum.truncation.hard_cap},
            {"zero_tail_window", sum.truncation.zero_tail_window},
            {"probe_level", sum.truncation.probe_level}}},
          {"terms", std::move(terms)}};
}

nlohmann::json to_json(const ConjectureCheck& check) {
  const nlohmann::json lhs = to_json(check.lhs_sum);
  const nlohmann::json rhs = to_json(check.rhs_sum);
  return {{"lhs", to_json(check.lhs)},
          {"rhs", to_json(check.rhs)},
          {"equal", check.equal},
          {"truncation", {{"lhs", lhs["truncation"]}, {"rhs", rhs["truncation"]}}},
          {"terms", {{"lhs", lhs["terms"]}, {"rhs", rhs["terms"]}}}};
}

}  // namespace hden
