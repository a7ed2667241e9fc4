#pragma once

#include <map>
#include <string>
#include <vector>

#include "hden/algebra/int_poly.hpp"
#include "hden/algebra/integer.hpp"

namespace hden {

/// Laurent polynomial in q over the integers, stored densely from its lowest
/// exponent. This is the fast internal carrier for densities: every
/// representation density lies in Z[q, 1/q].
class Laurent {
 public:
  Laurent() = default;
  Laurent(long c);  // NOLINT(google-explicit-constructor)
  Laurent(const Integer& c);  // NOLINT(google-explicit-constructor)

  static Laurent monomial(const Integer& c, int exponent);
  /// (-q)^e
  static Laurent neg_q_power(int e);
  static Laurent from_map(const std::map<int, Integer>& terms);
  /// q^low * p
  static Laurent from_poly(const IntPoly& p, int low = 0);

  bool is_zero() const { return c_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Integer coefficient(int exponent) const;
  std::map<int, Integer> to_map() const;

  /// The polynomial q^(-low) * this (nonzero constant term unless zero).
  IntPoly shifted_poly() const { return IntPoly(c_); }

  /// Multiply by sign * q^shift in place (sign is +1 or -1).
  Laurent& mul_monomial(int sign, int shift);

  Rational evaluate(const Rational& q0) const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  /// this += a * b without a temporary.
  Laurent& add_product(const Laurent& a, const Laurent& b);

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  void normalize();
  int low_ = 0;
  std::vector<Integer> c_;
};

}  // namespace hden
