#pragma once

#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hden/algebra/laurent.hpp"
#include "hden/algebra/ratfunc.hpp"
#include "hden/partitions.hpp"
#include "hden/shape_pattern.hpp"

namespace hden {

/// I_j(mu, lambda) of the explicit density formula (j >= 1). Depends only on
/// mu'_j, mu'_{j+1}, tilde(lambda)'_j and tilde(lambda)'_{j+1}. An empty
/// summation range gives 0.
Laurent hironaka_I(const Partition& mu, const Partition& lambda, int j);

/// alpha(A_xi, A_lambda) for xi of length m >= n = length(lambda) >= 1.
///
/// The sum over mu <= tilde(lambda) is organized by the conjugate columns
/// c_j = mu'_j: the summand factors into per-column weights and the
/// I_j(c_j, c_{j+1}) links, so the sum is a product of small transfer
/// matrices indexed by c in [0, n].
Laurent alpha_laurent(const Partition& xi, const Partition& lambda);

/// The same density by literally enumerating every mu in the box
/// prod [0, lambda_i + 1], keeping the non-increasing ones. Slow; used as a
/// reference in tests.
Laurent alpha_by_enumeration(const Partition& xi, const Partition& lambda);

RatFunc alpha(const Partition& xi, const Partition& lambda);

/// A_xi(A_lambda) = alpha(xi, lambda) / alpha(xi, xi); 0 when |xi| and
/// |lambda| have different parity.
RatFunc normalized(const Partition& xi, const Partition& lambda);

/// Memoizing evaluator. Safe for concurrent use: lookups share a reader
/// lock, and a racing insert of the same key stores an identical value.
class Hironaka {
 public:
  Laurent alpha_laurent(const Partition& xi, const Partition& lambda) const;
  RatFunc alpha(const Partition& xi, const Partition& lambda) const;
  RatFunc self_density(const Partition& xi) const { return alpha(xi, xi); }
  RatFunc normalized(const Partition& xi, const Partition& lambda) const;

  std::size_t cache_size() const;
  void clear();

 private:
  using Key = std::pair<Partition, Partition>;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Key, Laurent, PartitionPairHash> alpha_cache_;
  mutable std::unordered_map<Key, RatFunc, PartitionPairHash> normalized_cache_;
};

/// One row of the closed-form self-density tables: alpha(A_xi, A_xi) equals
/// `factor` times alpha(A_inner, A_inner) (or just `factor` when the row has
/// no inner shape).
struct SelfDensityRow {
  std::string group;     // "n2", "n3", "n4"
  int index;             // 1-based position inside its group
  ShapePattern shape;
  RatFunc factor;
  std::optional<ShapePattern> inner;
};

const std::vector<SelfDensityRow>& self_density_table();

/// Closed form of alpha(A_xi, A_xi) from the tables. Shapes with every part
/// >= 1 that match no row are scaled down first with
/// alpha(A_xi, A_xi) = q^{n^2} alpha(A_{xi-1}, A_{xi-1}).
/// Throws NotTabulated otherwise (in particular for n >= 5).
RatFunc self_density_closed(const Partition& xi);

}  // namespace hden
