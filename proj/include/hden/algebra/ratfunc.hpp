#pragma once

#include <map>
#include <optional>
#include <string>

#include "hden/algebra/int_poly.hpp"
#include "hden/algebra/laurent.hpp"
#include "hden/errors.hpp"

namespace hden {

/// Raised by RatFunc::as_laurent when the reduced denominator is not +-q^k.
class NotLaurent : public Error {
 public:
  explicit NotLaurent(IntPoly denominator)
      : Error("not a Laurent polynomial: denominator " + denominator.to_string()),
        denominator_(std::move(denominator)) {}
  const IntPoly& denominator() const noexcept { return denominator_; }

 private:
  IntPoly denominator_;
};

/// Exact rational function in q, always kept in canonical form:
/// numerator and denominator coprime in Z[q] (no common polynomial factor and
/// no common integer factor > 1), denominator with positive leading
/// coefficient, zero stored as 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Integer& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(IntPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Laurent& l);  // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero when den is zero.
  RatFunc(IntPoly num, IntPoly den);

  static RatFunc q() { return RatFunc(IntPoly::q()); }
  /// (-q)^e, with denominator q^(-e) when e < 0.
  static RatFunc neg_q_power(int e);

  const IntPoly& numerator() const { return num_; }
  const IntPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Exact value at q0; throws PoleError when the denominator vanishes there.
  Rational evaluate_at(const Rational& q0) const;

  std::optional<Laurent> try_laurent() const;
  /// Throws NotLaurent carrying the reduced denominator.
  Laurent as_laurent() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Human form: "q^6+2q^5+q^4", or "(num)/(den)" for proper fractions.
  std::string to_string() const;

 private:
  void canonicalize();
  IntPoly num_;
  IntPoly den_;
};

}  // namespace hden
