#include <doctest.h>

#include <random>

#include "hden/errors.hpp"
#include "hden/hironaka.hpp"
#include "hden/oracle.hpp"

using namespace hden;

namespace {

GrElem random_element(const GaloisRing& r, std::mt19937_64& rng) {
  return r.element(std::uniform_int_distribution<std::uint64_t>(0, r.size() - 1)(rng));
}

GrMatrix random_matrix(const GaloisRing& r, std::size_t n, std::mt19937_64& rng) {
  GrMatrix m(n, n);
  for (auto& e : m.data) e = random_element(r, rng);
  return m;
}

GrElem determinant(const GaloisRing& r, const GrMatrix& g) {
  if (g.rows == 1) return g.at(0, 0);
  return r.sub(r.mul(g.at(0, 0), g.at(1, 1)), r.mul(g.at(0, 1), g.at(1, 0)));
}

// Every X in M_{m,n}(ring), checked one at a time.
Integer brute_force_count(const GaloisRing& r, const GrMatrix& a, const GrMatrix& b) {
  const std::size_t cells = a.rows * b.rows;
  GrMatrix x(a.rows, b.rows);
  std::vector<std::uint64_t> idx(cells, 0);
  Integer count = 0;
  while (true) {
    for (std::size_t i = 0; i < cells; ++i) x.data[i] = r.element(idx[i]);
    if (hermitian_apply(r, a, x) == b) ++count;
    std::size_t k = 0;
    while (k < cells && ++idx[k] == r.size()) idx[k++] = 0;
    if (k == cells) break;
  }
  return count;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK(is_odd_prime(3));
  CHECK_FALSE(is_odd_prime(2));
  CHECK_FALSE(is_odd_prime(9));
  CHECK(is_nonresidue(2, 5));
  CHECK_FALSE(is_nonresidue(4, 5));
  CHECK(smallest_nonresidue(3) == 2);
  CHECK(smallest_nonresidue(7) == 3);
  CHECK_THROWS_AS(galois_params(4, 1), InvalidArgument);
  CHECK_THROWS_AS(galois_params(5, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(galois_params(3, 0), InvalidArgument);
  CHECK_THROWS_AS(galois_params(3, 40), InvalidArgument);
}

TEST_CASE("galois ring axioms") {
  for (std::uint32_t p : {3u, 5u}) {
    for (int d = 1; d <= 3; ++d) {
      const GaloisRing r(galois_params(p, d));
      std::mt19937_64 rng(p * 31 + d);
      for (int trial = 0; trial < 300; ++trial) {
        const GrElem x = random_element(r, rng), y = random_element(r, rng), z = random_element(r, rng);
        CHECK(r.add(r.add(x, y), z) == r.add(x, r.add(y, z)));
        CHECK(r.mul(r.mul(x, y), z) == r.mul(x, r.mul(y, z)));
        CHECK(r.mul(x, r.add(y, z)) == r.add(r.mul(x, y), r.mul(x, z)));
        CHECK(r.mul(x, y) == r.mul(y, x));
        CHECK(r.add(x, r.neg(x)) == r.make(0));
        CHECK(r.mul(x, r.make(1)) == x);
        CHECK(r.conj(r.conj(x)) == x);
        CHECK(r.conj(r.mul(x, y)) == r.mul(r.conj(x), r.conj(y)));
        CHECK(r.conj(r.add(x, y)) == r.add(r.conj(x), r.conj(y)));
        CHECK(r.element(r.index(x)) == x);
        if (r.is_unit(x)) CHECK(r.mul(x, r.inverse(x)) == r.make(1));
      }
    }
  }
}

TEST_CASE("column search matches brute force") {
  const OracleOptions opts;
  for (std::uint32_t p : {3u, 5u}) {
    const GaloisRing r1(galois_params(p, 1));
    const GaloisRing r2(galois_params(p, 2));
    for (const auto& [ring, la, lb] : std::vector<std::tuple<const GaloisRing*, Partition, Partition>>{
             {&r1, Partition{0}, Partition{0}},
             {&r2, Partition{0}, Partition{1}},
             {&r2, Partition{1}, Partition{1}},
             {&r1, Partition{0, 0}, Partition{0}},
             {&r2, Partition{1, 0}, Partition{1}},
         }) {
      const GrMatrix a = class_matrix(*ring, la), b = class_matrix(*ring, lb);
      CHECK(count_solutions(*ring, a, b, opts) == brute_force_count(*ring, a, b));
    }
  }
  const GaloisRing r(galois_params(3, 1));
  for (const auto& [la, lb] : std::vector<std::pair<Partition, Partition>>{{Partition{0, 0}, Partition{0, 0}},
                                                                           {Partition{1, 0}, Partition{1, 0}}}) {
    const GrMatrix a = class_matrix(r, la), b = class_matrix(r, lb);
    CHECK(count_solutions(r, a, b, opts) == brute_force_count(r, a, b));
  }
}

TEST_CASE("non diagonal hermitian forms") {
  const GaloisRing r(galois_params(3, 1));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    GrMatrix a(2, 2);
    a.at(0, 0) = r.make(std::uniform_int_distribution<int>(0, 2)(rng));
    a.at(1, 1) = r.make(std::uniform_int_distribution<int>(0, 2)(rng));
    a.at(0, 1) = random_element(r, rng);
    a.at(1, 0) = r.conj(a.at(0, 1));
    REQUIRE(is_hermitian(r, a));
    GrMatrix b(1, 1);
    b.at(0, 0) = r.make(std::uniform_int_distribution<int>(0, 2)(rng));
    CHECK(count_solutions(r, a, b, {}) == brute_force_count(r, a, b));
  }
  GrMatrix bad(2, 2);
  bad.at(0, 1) = r.make(1);
  CHECK_THROWS_AS(count_solutions(r, bad, class_matrix(r, Partition{0}), {}), InvalidArgument);
}

TEST_CASE("counts are invariant under unit change of the target") {
  const OracleOptions opts;
  std::mt19937_64 rng(2024);
  for (int d = 1; d <= 2; ++d) {
    const GaloisRing r(galois_params(3, d));
    for (const auto& [la, lb] : std::vector<std::pair<Partition, Partition>>{
             {Partition{0}, Partition{0}}, {Partition{1, 0}, Partition{1}}, {Partition{0, 0}, Partition{0, 0}},
             {Partition{1, 0}, Partition{1, 0}}}) {
      if (d <= lb.largest()) continue;
      const GrMatrix a = class_matrix(r, la), b = class_matrix(r, lb);
      const Integer base = count_solutions(r, a, b, opts);
      for (int trial = 0; trial < 3; ++trial) {
        GrMatrix g;
        do g = random_matrix(r, lb.length(), rng);
        while (!r.is_unit(determinant(r, g)));
        const GrMatrix moved = hermitian_apply(r, b, g);
        CHECK(is_hermitian(r, moved));
        CHECK(count_solutions(r, a, moved, opts) == base);
      }
    }
  }
}

TEST_CASE("choice of non-residue does not matter") {
  for (const auto& [la, lb, d] : std::vector<std::tuple<Partition, Partition, int>>{
           {Partition{0}, Partition{0}, 1}, {Partition{2}, Partition{1}, 2}, {Partition{1, 0}, Partition{1}, 2}, {Partition{0, 0}, Partition{0, 0}, 1}}) {
    const auto a = density_oracle(la, lb, galois_params(5, d, 2));
    const auto b = density_oracle(la, lb, galois_params(5, d, 3));
    CHECK(a.count == b.count);
    CHECK(a.density == b.density);
  }
}

TEST_CASE("worker count does not change results") {
  const GaloisRingParams params = galois_params(3, 2);
  OracleOptions one, many;
  many.workers = 4;
  for (const auto& [la, lb] : std::vector<std::pair<Partition, Partition>>{
           {Partition{1, 0}, Partition{1, 0}}, {Partition{0, 0}, Partition{1, 1}}, {Partition{1, 1}, Partition{0, 0}}}) {
    CHECK(count_representations(la, lb, params, one) == count_representations(la, lb, params, many));
  }
}

TEST_CASE("oracle densities agree with the symbolic formula") {
  for (std::uint32_t p : {3u, 5u}) {
    for (const Partition& la : partitions_in_box(1, 0, 2)) {
      for (const Partition& lb : partitions_in_box(1, 0, 2)) {
        for (int d = lb.largest() + 1; d <= 3; ++d) {
          const auto r = density_oracle(la, lb, galois_params(p, d));
          CHECK(r.density == alpha(la, lb).evaluate_at(Rational(p)));
          CHECK(r.denominator_exp == d);
        }
      }
    }
  }
  const auto r = density_oracle(Partition{0, 0}, Partition{1, 0}, galois_params(3, 2));
  CHECK(r.density == alpha(Partition{0, 0}, Partition{1, 0}).evaluate_at(3));
  CHECK(density_oracle(Partition{0}, Partition{0}, galois_params(3, 2)).density == Rational(4, 3));
}

TEST_CASE("stabilization") {
  const auto values = stabilization_check(Partition{0, 0}, Partition{1}, galois_params(3, 2), {2, 3});
  REQUIRE(values.size() == 2);
  CHECK(values[0] == values[1]);
}

TEST_CASE("budget and preconditions") {
  OracleOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(density_oracle(Partition{0, 0}, Partition{0, 0}, galois_params(3, 1), tight), BudgetExceeded);
  CHECK(oracle_work_estimate(5, 2, 2, 2) == Integer(152587890625));
  CHECK_THROWS_AS(density_oracle(Partition{0}, Partition{2}, galois_params(3, 2)), InvalidArgument);
  CHECK_THROWS_AS(density_oracle(Partition{0}, Partition{0, 0}, galois_params(3, 2)), InvalidArgument);
}
