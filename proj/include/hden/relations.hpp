#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hden/algebra/laurent.hpp"
#include "hden/algebra/ratfunc.hpp"
#include "hden/hironaka.hpp"
#include "hden/partitions.hpp"
#include "hden/shape_pattern.hpp"

namespace hden {

struct RelationTerm {
  RatFunc coefficient;
  Partition partition;
};

/// sum_k coefficient_k * alpha(A_{partition_k}, B) = 0 for every B = A_lambda
/// with lambda_n >= 1.
struct Relation {
  int n = 0;
  int s = 0;
  Partition xi;
  std::vector<RelationTerm> terms;
};

/// The relation attached to xi in Lambda^+_{n,s}. Terms with equal partitions
/// are merged and zero coefficients dropped; xi itself keeps coefficient 1.
Relation theorem_terms(int n, int s, const Partition& xi);

struct RelationCheck {
  bool holds = false;
  RatFunc residual;
};

RelationCheck verify_relation(const Relation& rel, const Partition& lambda, const Hironaka& h);

/// A normalized rewrite A_lhs(B) = sum coefficient * A_rhs(B), valid for B
/// with lambda_n >= 1. Symbols in the patterns stand for parts >= 3.
struct RewriteRule {
  std::string id;
  ShapePattern lhs;
  std::vector<std::pair<RatFunc, ShapePattern>> rhs;
};

const std::vector<RewriteRule>& rewrite_rules();

/// The unique rule whose left side matches xi, if any.
const RewriteRule* match_rule(const Partition& xi);

struct TraceStep;

/// Linear record of an evaluation: every step rewrites the current pair into
/// factor * (next pair) + sum of sibling terms; the last step carries the value.
struct ReductionTrace {
  std::vector<TraceStep> steps;
};

struct TraceSibling {
  RatFunc coefficient;
  Partition xi;
  Partition lambda;
  RatFunc value;
  std::shared_ptr<const ReductionTrace> trace;
};

struct TraceStep {
  std::string rule_id;
  Partition xi_before, lambda_before;
  Partition xi_after, lambda_after;
  RatFunc factor;
  std::vector<TraceSibling> siblings;
  std::optional<RatFunc> value;  // set on the terminal step only
};

/// Recomputes the value from a trace alone, checking sibling sub-traces
/// recursively. Throws Error if a sibling value disagrees with its sub-trace
/// or the trace has no terminal step.
RatFunc replay(const ReductionTrace& trace);

nlohmann::json trace_to_json(const ReductionTrace& trace);

struct Reduction {
  RatFunc value;
  std::shared_ptr<const ReductionTrace> trace;
};

/// Memoizing evaluator of normalized densities by the reduction rules, and of
/// unnormalized densities by the generic theorem rewrite. Safe for concurrent
/// use.
class ReductionEngine {
 public:
  explicit ReductionEngine(std::shared_ptr<const Hironaka> hironaka = std::make_shared<Hironaka>());

  Reduction reduce(const Partition& xi, const Partition& lambda) const;
  RatFunc normalized(const Partition& xi, const Partition& lambda) const { return reduce(xi, lambda).value; }

  /// alpha(A_xi, A_lambda) through the theorem rewrite and the scaling step.
  Reduction alpha_generic(const Partition& xi, const Partition& lambda) const;

  const Hironaka& hironaka() const { return *hironaka_; }
  void clear();

 private:
  using Key = std::pair<Partition, Partition>;
  Reduction reduce_uncached(const Partition& xi, const Partition& lambda) const;
  Reduction generic_uncached(const Partition& xi, const Partition& lambda) const;

  std::shared_ptr<const Hironaka> hironaka_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Key, Reduction, PartitionPairHash> reduce_memo_;
  mutable std::unordered_map<Key, Reduction, PartitionPairHash> generic_memo_;
};

RatFunc reduce_normalized(const Partition& xi, const Partition& lambda);
RatFunc alpha_via_generic_reduction(const Partition& xi, const Partition& lambda);

/// One instance of a rewrite rule checked against direct evaluation.
struct RuleCheck {
  std::string rule_id;
  Partition xi;
  Partition lambda;
  RatFunc lhs;
  RatFunc rhs;
  bool holds = false;
};

/// Checks every rule for partitions of length n, binding symbols to
/// `symbol_values`, against every B with parts in [b_lo, b_hi].
std::vector<RuleCheck> verify_rules(int n, const std::vector<int>& symbol_values, int b_lo, int b_hi,
                                    const Hironaka& h, unsigned workers = 1);

struct TheoremCheck {
  Partition xi;
  int s = 0;
  Partition lambda;
  RatFunc residual;
  bool holds = false;
};

/// Relations for every xi in Lambda^+_{n,s} whose nonzero parts are at most
/// part_max (or only `xi` when given), each checked at every lambda with
/// parts in [lambda_min, lambda_max]. The relations need lambda_min >= 1;
/// lower values make a negative control.
std::vector<TheoremCheck> verify_theorem(int n, int s, const std::optional<Partition>& xi, int part_max,
                                         int lambda_min, int lambda_max, const Hironaka& h, unsigned workers = 1);

struct AgreementCheck {
  Partition xi;
  Partition lambda;
  RatFunc expected;  // direct evaluation
  RatFunc actual;
  bool holds = false;
};

/// `count` seeded random pairs of equal length in [1, n_max] with parts in
/// [0, part_max] and |xi| = |lambda| mod 2.
std::vector<std::pair<Partition, Partition>> random_density_pairs(unsigned count, int n_max, int part_max,
                                                                   std::uint64_t seed);

/// reduce_normalized against direct normalized densities.
std::vector<AgreementCheck> check_engine_agreement(const ReductionEngine& engine, unsigned count, int n_max,
                                                   int part_max, std::uint64_t seed, unsigned workers = 1);
/// The generic rewrite against direct alpha.
std::vector<AgreementCheck> check_generic_agreement(const ReductionEngine& engine, unsigned count, int n_max,
                                                    int part_max, std::uint64_t seed, unsigned workers = 1);

}  // namespace hden
