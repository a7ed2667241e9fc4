#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hden/algebra/integer.hpp"

namespace hden {

/// Dense polynomial in q with arbitrary-precision integer coefficients.
///
/// coefficients()[i] is the coefficient of q^i. The leading coefficient is
/// never stored as zero, so the zero polynomial has an empty coefficient list.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(long c);  // NOLINT(google-explicit-constructor)
  IntPoly(const Integer& c);  // NOLINT(google-explicit-constructor)
  explicit IntPoly(std::vector<Integer> coefficients);

  static IntPoly monomial(const Integer& c, int exponent);
  static IntPoly q() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Smallest exponent with a nonzero coefficient; 0 for the zero polynomial.
  int low_order() const;
  bool is_monomial() const;

  const std::vector<Integer>& coefficients() const { return c_; }
  Integer coefficient(int exponent) const;
  const Integer& leading() const { return c_.back(); }

  Integer content() const;
  IntPoly primitive_part() const;

  /// Multiply by q^k (k >= 0).
  IntPoly shifted_up(int k) const;
  /// Divide by q^k; the low k coefficients must vanish.
  IntPoly shifted_down(int k) const;

  Rational evaluate(const Rational& q0) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const Integer& c);
  /// Exact division of every coefficient by c.
  IntPoly& divide_exact(const Integer& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  /// Conventional descending form, e.g. "q^6+2q^5-q^4+3".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// a / b in Z[q] when b divides a exactly, otherwise nullopt.
std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b);

/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Primitive gcd with positive leading coefficient (integer content ignored).
/// gcd(0, 0) is 0.
IntPoly primitive_gcd(IntPoly a, IntPoly b);

}  // namespace hden
