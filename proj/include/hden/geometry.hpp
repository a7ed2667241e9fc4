#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hden/algebra/ratfunc.hpp"
#include "hden/partitions.hpp"
#include "hden/relations.hpp"

namespace hden {

enum class DensityEngine { reduce, direct };

/// Sums over partitions are cut at first part hard_cap. The last
/// zero_tail_window levels, and one probe level above the cap, must consist
/// of vanishing terms only; otherwise TruncationUnsound is thrown.
struct TruncationPolicy {
  std::optional<int> hard_cap;  // default: largest part of the target + 2
  int zero_tail_window = 2;
};

struct TruncationInfo {
  int hard_cap = 0;
  int zero_tail_window = 0;
  int probe_level = 0;
};

/// A nonzero term weight * A_xi(A_target) * multiplier.
struct SumTerm {
  RatFunc weight;
  Partition xi;
  Partition target;
  RatFunc density;
  std::optional<RatFunc> multiplier;
  RatFunc contribution;
};

struct WeightedSum {
  RatFunc value;
  TruncationInfo truncation;
  std::vector<SumTerm> terms;
};

struct IdentityCheck {
  RatFunc lhs;
  RatFunc rhs;
  RatFunc residual;
  bool holds = false;
};

struct ConjectureCheck {
  RatFunc lhs;
  RatFunc rhs;
  bool equal = false;
  WeightedSum lhs_sum;
  WeightedSum rhs_sum;
};

class Geometry {
 public:
  explicit Geometry(std::shared_ptr<const ReductionEngine> engine = std::make_shared<ReductionEngine>(),
                    DensityEngine which = DensityEngine::reduce, TruncationPolicy policy = {}, unsigned workers = 1);

  /// Normalized density A_xi(A_lambda) from the selected engine.
  RatFunc density(const Partition& xi, const Partition& lambda) const;

  /// A'_0000(A_B) for B = (alpha, beta, gamma, delta) with alpha > beta.
  WeightedSum derivative_0000(const Partition& b) const;

  /// <Z(x), Z(y)> on N^1(1,1) for a Gram class B of length 2.
  WeightedSum sankaran_intersection(const Partition& b) const;

  /// Both sides of the difference identity for special homomorphisms x, y
  /// orthogonal to each other with val h(x,x) = vx, val h(y,y) = vy, both >= 2.
  IdentityCheck difference_identity(int vx, int vy) const;

  /// The conjectured decomposition of A'_0000(A_B) for B = (alpha, beta,
  /// gamma, delta), alpha > beta, alpha even.
  ConjectureCheck conjecture(const Partition& b) const;

  const TruncationPolicy& policy() const { return policy_; }

 private:
  struct LevelTerm {
    RatFunc weight;
    Partition xi;
    std::function<RatFunc()> multiplier;  // evaluated only when the density is nonzero
  };
  using LevelFn = std::function<std::vector<LevelTerm>(int level)>;

  WeightedSum truncated_sum(const Partition& target, int first_level, const LevelFn& level_terms,
                            const TruncationPolicy& policy) const;
  WeightedSum derivative_unchecked(const Partition& b) const;

  std::shared_ptr<const ReductionEngine> engine_;
  DensityEngine which_;
  TruncationPolicy policy_;
  unsigned workers_;
};

nlohmann::json to_json(const WeightedSum& sum);
nlohmann::json to_json(const ConjectureCheck& check);

}  // namespace hden
