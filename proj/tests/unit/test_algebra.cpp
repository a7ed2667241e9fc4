#include <doctest.h>

#include <map>
#include <random>

#include "hden/algebra/qseries.hpp"
#include "hden/algebra/serialize.hpp"
#include "hden/errors.hpp"

using namespace hden;

namespace {

Integer random_coefficient(std::mt19937_64& rng, long bound) {
  return Integer(std::uniform_int_distribution<long>(-bound, bound)(rng));
}

IntPoly random_poly(std::mt19937_64& rng, int max_degree, long bound) {
  const int degree = std::uniform_int_distribution<int>(0, max_degree)(rng);
  std::vector<Integer> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_coefficient(rng, bound));
  return IntPoly(std::move(c));
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  IntPoly den;
  while (den.is_zero()) den = random_poly(rng, 12, 1000000);
  return RatFunc(random_poly(rng, 12, 1000000), den);
}

Laurent random_laurent(std::mt19937_64& rng) {
  std::map<int, Integer> terms;
  const int count = std::uniform_int_distribution<int>(0, 8)(rng);
  for (int i = 0; i < count; ++i)
    terms[std::uniform_int_distribution<int>(-15, 15)(rng)] = random_coefficient(rng, 50);
  return Laurent::from_map(terms);
}

}  // namespace

TEST_CASE("integer polynomial basics") {
  const IntPoly q = IntPoly::q();
  const IntPoly p = q * q - 1;
  CHECK(p.to_string() == "q^2-1");
  CHECK(p.degree() == 2);
  CHECK(exact_quotient(p, q + 1) == std::optional<IntPoly>(q - 1));
  CHECK_FALSE(exact_quotient(p, q + 2).has_value());
  CHECK(primitive_gcd(p * 6, (q - 1) * (q + 3)) == q - 1);
  CHECK(IntPoly(0).to_string() == "0");
  CHECK((q * q * q - q * 2 + 5).evaluate(Rational(2)) == 9);
}

TEST_CASE("rational functions reduce to lowest terms") {
  const IntPoly q = IntPoly::q();
  const RatFunc f(q * q - 1, q * 2 - 2);
  CHECK(f.numerator() == q + 1);
  CHECK(f.denominator() == IntPoly(2));
  CHECK(RatFunc(IntPoly(3), IntPoly(-6)) == RatFunc(-1) / RatFunc(2));
  CHECK_THROWS_AS(RatFunc(q, IntPoly()), DivisionByZero);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), DivisionByZero);
  CHECK_THROWS_AS(RatFunc(IntPoly(1), q - 1).evaluate_at(Rational(1)), PoleError);
  CHECK(RatFunc(IntPoly(1), q + 1).evaluate_at(Rational(3)) == Rational(1, 4));
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 40; ++trial) {
    const RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == RatFunc(0));
    if (!a.is_zero()) CHECK(a * (RatFunc(1) / a) == RatFunc(1));
  }
}

TEST_CASE("laurent round trip through rational functions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Laurent l = random_laurent(rng);
    const RatFunc f(l);
    CHECK(f.as_laurent() == l);
    CHECK(parse_ratfunc(l.to_string()) == f);
  }
  CHECK_THROWS_AS(RatFunc(IntPoly(1), IntPoly::q() + 1).as_laurent(), NotLaurent);
  CHECK(Laurent::neg_q_power(-3) == Laurent::monomial(-1, -3));
}

TEST_CASE("gaussian binomials are symmetric") {
  for (int u = 0; u <= 12; ++u)
    for (int v = 0; v <= u; ++v) CHECK(gauss_binomial(u, v) == gauss_binomial(u, u - v));
  CHECK_THROWS_AS(gauss_binomial(2, 3), InvalidArgument);
}

TEST_CASE("pascal recurrence matches the product quotient") {
  for (int u = 0; u <= 12; ++u)
    for (int v = 0; v <= u; ++v) CHECK(RatFunc(gauss_binomial_laurent(u, v)) == gauss_binomial(u, v));
}

TEST_CASE("gaussian binomial pascal step") {
  for (int k = 1; k <= 10; ++k)
    for (int j = 1; j <= k; ++j)
      CHECK(gauss_binomial(k + 1, j) - gauss_binomial(k, j) == neg_q_power(-k - 1 + j) * gauss_binomial(k, j - 1));
}

TEST_CASE("q-binomial convolution identity") {
  for (int l = 0; l <= 8; ++l) {
    for (int k = 0; k <= l; ++k) {
      RatFunc lhs;
      for (int j = 0; j <= k; ++j) {
        const int twice = (2 * l + 1 - j) * j;
        REQUIRE(twice % 2 == 0);
        lhs += neg_q_power(twice / 2) * gauss_binomial(l, l - j) * gauss_binomial(l - j, l - k);
      }
      RatFunc rhs = gauss_binomial(l, k);
      for (int j = 0; j < k; ++j) rhs *= RatFunc(1) + neg_q_power(l - j);
      CHECK_MESSAGE(lhs == rhs, "l=", l, " k=", k);
    }
  }
}

TEST_CASE("polynomial parser") {
  const RatFunc q = RatFunc::q();
  CHECK(parse_ratfunc("q^6+2q^5+q^4") == q * q * q * q * (q + 1) * (q + 1));
  CHECK(parse_ratfunc("(q+1)(q^4+q^3+1)") == (q + 1) * (q * q * q * q + q * q * q + 1));
  CHECK(parse_ratfunc("q^-2 - 3") == RatFunc(Laurent::monomial(1, -2)) - 3);
  CHECK(parse_ratfunc("(q+1)/q") == (q + 1) / q);
  CHECK_THROWS_AS(parse_ratfunc("q+"), InvalidArgument);
  CHECK_THROWS_AS(parse_ratfunc("x"), InvalidArgument);
}

TEST_CASE("json serialization round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const RatFunc f = random_ratfunc(rng);
    CHECK(ratfunc_from_json(to_json(f)) == f);
    CHECK(ratfunc_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
  }
  CHECK(to_json(parse_ratfunc("q^2-1")).dump() == R"({"den":[[0,"1"]],"num":[[0,"-1"],[2,"1"]]})");
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("5/2") == Rational(5, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
}
