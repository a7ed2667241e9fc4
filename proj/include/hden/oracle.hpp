#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hden/algebra/integer.hpp"
#include "hden/partitions.hpp"

namespace hden {

struct GaloisRingParams {
  std::uint32_t p = 3;
  int d = 1;
  std::uint32_t c = 0;  // quadratic non-residue mod p
};

bool is_odd_prime(std::uint32_t p);
bool is_nonresidue(std::uint32_t c, std::uint32_t p);
std::uint32_t smallest_nonresidue(std::uint32_t p);

/// Validates p (odd prime), d >= 1 and c (non-residue by Euler's criterion;
/// the smallest one when omitted). Throws InvalidArgument.
GaloisRingParams galois_params(std::uint32_t p, int d, std::optional<std::uint32_t> c = std::nullopt);

/// a + b w with w^2 = c, components in [0, p^d).
struct GrElem {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const GrElem&, const GrElem&) = default;
};

/// (Z/p^d)[w]/(w^2 - c).
class GaloisRing {
 public:
  explicit GaloisRing(const GaloisRingParams& params);

  const GaloisRingParams& params() const { return params_; }
  std::uint64_t modulus() const { return mod_; }
  /// Number of elements, p^{2d}.
  std::uint64_t size() const { return mod_ * mod_; }

  GrElem make(std::int64_t a, std::int64_t b = 0) const;
  /// The element with index i in [0, size()): a = i mod p^d, b = i / p^d.
  GrElem element(std::uint64_t i) const { return {i % mod_, i / mod_}; }

  GrElem add(GrElem x, GrElem y) const { return {(x.a + y.a) % mod_, (x.b + y.b) % mod_}; }
  GrElem sub(GrElem x, GrElem y) const { return {(x.a + mod_ - y.a) % mod_, (x.b + mod_ - y.b) % mod_}; }
  GrElem neg(GrElem x) const { return {(mod_ - x.a) % mod_, (mod_ - x.b) % mod_}; }
  GrElem mul(GrElem x, GrElem y) const {
    return {(x.a * y.a + c_ * ((x.b * y.b) % mod_)) % mod_, (x.a * y.b + x.b * y.a) % mod_};
  }
  GrElem conj(GrElem x) const { return {x.a, (mod_ - x.b) % mod_}; }
  /// x * conj(x) = a^2 - c b^2, as an element of Z/p^d.
  std::uint64_t norm(GrElem x) const { return mul(x, conj(x)).a; }
  /// Units are the elements outside p R.
  bool is_unit(GrElem x) const { return x.a % params_.p != 0 || x.b % params_.p != 0; }
  /// Throws InvalidArgument for non-units.
  GrElem inverse(GrElem x) const;
  std::uint64_t index(GrElem x) const { return x.a + x.b * mod_; }

 private:
  GaloisRingParams params_;
  std::uint64_t mod_;
  std::uint64_t c_;
};

/// Dense row-major matrix over a Galois ring.
struct GrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<GrElem> data;

  GrMatrix() = default;
  GrMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  GrElem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const GrElem& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const GrMatrix&, const GrMatrix&) = default;
};

GrMatrix identity_matrix(const GaloisRing& ring, std::size_t n);
/// diag(p^{lambda_1}, ..., p^{lambda_n}).
GrMatrix class_matrix(const GaloisRing& ring, const Partition& lambda);
bool is_hermitian(const GaloisRing& ring, const GrMatrix& m);
/// conj(X)^T A X. Throws InvalidArgument on mismatched dimensions.
GrMatrix hermitian_apply(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& x);

struct OracleOptions {
  Integer budget = Integer(1) << 36;
  unsigned workers = 1;
};

/// Size of the naive search space p^{2dmn}, the quantity compared with the budget.
Integer oracle_work_estimate(std::uint32_t p, int d, std::size_t m, std::size_t n);

/// |{X in M_{m,n}(ring) : conj(X)^T A X = B}| for hermitian A (m x m) and B (n x n).
/// Throws BudgetExceeded when the estimate is above options.budget.
Integer count_solutions(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& b, const OracleOptions& options);

/// Counts for the diagonal classes A = A_{lambda_a}, B = A_{lambda_b}; requires
/// length(lambda_a) >= length(lambda_b) and d > max part of lambda_b.
Integer count_representations(const Partition& lambda_a, const Partition& lambda_b, const GaloisRingParams& params,
                              const OracleOptions& options = {});

struct OracleResult {
  Integer count;
  int denominator_exp = 0;  // d n (2m - n)
  Rational density;
};

OracleResult density_oracle(const Partition& lambda_a, const Partition& lambda_b, const GaloisRingParams& params,
                            const OracleOptions& options = {});

/// Densities at each precision in d_list (same p and c).
std::vector<Rational> stabilization_check(const Partition& lambda_a, const Partition& lambda_b,
                                          const GaloisRingParams& params, const std::vector<int>& d_list,
                                          const OracleOptions& options = {});

}  // namespace hden
