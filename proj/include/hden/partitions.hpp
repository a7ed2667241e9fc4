#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hden/algebra/laurent.hpp"
#include "hden/algebra/ratfunc.hpp"

namespace hden {

/// Non-increasing tuple of non-negative integers with an explicit length.
/// Trailing zeros are significant: (3,0) and (3) are different partitions.
/// Labels the diagonal hermitian class A_lambda = diag(pi^lambda_1, ...).
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless parts are non-increasing and non-negative.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// "8,3,2" (no spaces). The empty string is the length-0 partition.
  static Partition parse(std::string_view text);

  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  /// 0-based access.
  int operator[](std::size_t i) const { return parts_[i]; }
  std::span<const int> parts() const { return parts_; }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int smallest() const { return parts_.empty() ? 0 : parts_.back(); }

  int weight() const;
  /// n(lambda) = sum (i-1) lambda_i.
  int n_stat() const;
  /// Every part plus one.
  Partition tilde() const;
  /// lambda'_i = #{j : lambda_j >= i}, for i >= 1.
  int conjugate_part(int i) const;
  /// (lambda'_1, ..., lambda'_count).
  std::vector<int> conjugate(int count) const;
  int trailing_zeros() const;

  /// Every part shifted by delta; throws if a part would become negative.
  Partition shifted(int delta) const;
  Partition without_last() const;
  Partition appended(int part) const;

  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

struct PartitionPairHash {
  std::size_t operator()(const std::pair<Partition, Partition>& p) const noexcept;
};

struct PartitionStats {
  int weight;
  int n_stat;
  Partition tilde;
};

PartitionStats stats(const Partition& p);

/// <xi', mu'> = sum_{i>=1} xi'_i mu'_i.
int conj_inner_product(const Partition& xi, const Partition& mu);

/// xi is in Lambda^+_{n,s}: the last s parts are 0 and, when s < n, part n-s is >= 1.
bool in_lambda_plus(const Partition& xi, int s);

/// Promote a trailing zeros of xi to 2 and b of them to 1, re-sorted.
/// Requires xi in Lambda^+_{n,s} and a + b <= s.
Partition xi_plus(const Partition& xi, int s, int a, int b);
/// As above with s = number of trailing zeros of xi.
Partition xi_plus(const Partition& xi, int a, int b);

/// Coefficients d_{n,s,0..s} of prod_{j=0}^{s-1} (1 - (-q)^{-n+j} X).
std::vector<Laurent> d_coefficients_laurent(int n, int s);
std::vector<RatFunc> d_coefficients(int n, int s);

/// (mu_bar, 1^k, 0^(l-k)); mu_bar has length n-l and parts >= 2.
Partition mu_lk(const Partition& mu_bar, int l, int k, int n);

/// Every partition of the given length with parts in [lo, hi], in
/// lexicographically increasing order of the part tuple read left to right.
std::vector<Partition> partitions_in_box(std::size_t length, int lo, int hi);

/// Uniform parts in [lo, hi], sorted into a partition.
Partition random_partition(std::mt19937_64& rng, std::size_t length, int lo, int hi);

}  // namespace hden
