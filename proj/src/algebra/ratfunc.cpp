#include "hden/algebra/ratfunc.hpp"

#include <algorithm>
#include <utility>

namespace hden {

RatFunc::RatFunc(const Laurent& l) : den_(1) {
  if (l.is_zero()) return;
  IntPoly p = l.shifted_poly();
  if (l.low() >= 0) {
    num_ = p.shifted_up(l.low());
  } else {
    num_ = std::move(p);
    den_ = IntPoly::monomial(1, -l.low());
  }
}

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  canonicalize();
}

RatFunc RatFunc::neg_q_power(int e) { return RatFunc(Laurent::neg_q_power(e)); }

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = IntPoly(1);
    return;
  }
  const int common_q = std::min(num_.low_order(), den_.low_order());
  if (common_q > 0) {
    num_ = num_.shifted_down(common_q);
    den_ = den_.shifted_down(common_q);
  }
  if (!den_.is_monomial()) {
    if (auto quot = exact_quotient(num_, den_)) {
      num_ = std::move(*quot);
      den_ = IntPoly(1);
    } else {
      IntPoly g = primitive_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = *exact_quotient(num_, g);
        den_ = *exact_quotient(den_, g);
      }
    }
  }
  Integer c = num_.content();
  Integer cd = den_.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den_.leading() < 0) c = -c;
  if (c != 1) {
    num_.divide_exact(c);
    den_.divide_exact(c);
  }
}

Rational RatFunc::evaluate_at(const Rational& q0) const {
  Rational d = den_.evaluate(q0);
  if (d == 0) throw PoleError(q0.get_str());
  Rational r = num_.evaluate(q0) / d;
  r.canonicalize();
  return r;
}

std::optional<Laurent> RatFunc::try_laurent() const {
  if (!den_.is_monomial() || abs(den_.leading()) != 1) return std::nullopt;
  Laurent l = Laurent::from_poly(num_, -den_.degree());
  if (den_.leading() < 0) l = -l;
  return l;
}

Laurent RatFunc::as_laurent() const {
  if (auto l = try_laurent()) return *l;
  throw NotLaurent(den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() == 0 && den_.leading() == 1) {
      if (num_.is_zero()) den_ = IntPoly(1);
      return *this;
    }
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  num_ *= o.num_;
  den_ *= o.den_;
  if (den_.degree() == 0 && den_.leading() == 1) return *this;
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (is_zero()) return *this;
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

std::string RatFunc::to_string() const {
  if (den_ == IntPoly(1)) return num_.to_string();
  auto wrap = [](const IntPoly& p) {
    std::string s = p.to_string();
    const bool single = p.coefficients().size() - static_cast<std::size_t>(p.low_order()) == 1 &&
                        (p.leading() == 1 || p.degree() == 0);
    return single ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace hden
