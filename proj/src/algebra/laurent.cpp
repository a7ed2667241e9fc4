#include "hden/algebra/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace hden {

Laurent::Laurent(long c) {
  if (c != 0) c_.emplace_back(c);
}

Laurent::Laurent(const Integer& c) {
  if (c != 0) c_.push_back(c);
}

Laurent Laurent::monomial(const Integer& c, int exponent) {
  Laurent r(c);
  if (!r.is_zero()) r.low_ = exponent;
  return r;
}

Laurent Laurent::neg_q_power(int e) { return monomial((e % 2 == 0) ? 1 : -1, e); }

Laurent Laurent::from_map(const std::map<int, Integer>& terms) {
  Laurent r;
  for (const auto& [e, c] : terms) r += monomial(c, e);
  return r;
}

Laurent Laurent::from_poly(const IntPoly& p, int low) {
  Laurent r;
  r.c_ = p.coefficients();
  r.low_ = low;
  r.normalize();
  return r;
}

void Laurent::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (c_.empty()) low_ = 0;
}

Integer Laurent::coefficient(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high()) return 0;
  return c_[static_cast<std::size_t>(exponent - low_)];
}

std::map<int, Integer> Laurent::to_map() const {
  std::map<int, Integer> m;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) m.emplace(low_ + static_cast<int>(i), c_[i]);
  return m;
}

Laurent& Laurent::mul_monomial(int sign, int shift) {
  if (is_zero()) return *this;
  low_ += shift;
  if (sign < 0)
    for (auto& c : c_) c = -c;
  return *this;
}

Rational Laurent::evaluate(const Rational& q0) const {
  if (is_zero()) return 0;
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q0;
    acc += *it;
  }
  Rational scale = 1;
  Rational base = low_ >= 0 ? q0 : Rational(1) / q0;
  for (int i = 0; i < std::abs(low_); ++i) scale *= base;
  return acc * scale;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  if (lo < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), Integer(0));
    low_ = lo;
  }
  if (hi > high()) c_.resize(static_cast<std::size_t>(hi - lo) + 1, Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[static_cast<std::size_t>(o.low_ - low_) + i] += o.c_[i];
  normalize();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  r.add_product(a, b);
  return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent& Laurent::add_product(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return *this;
  const int lo = a.low_ + b.low_;
  const int hi = a.high() + b.high();
  if (is_zero()) {
    low_ = lo;
    c_.assign(static_cast<std::size_t>(hi - lo) + 1, Integer(0));
  } else {
    if (lo < low_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), Integer(0));
      low_ = lo;
    }
    if (hi > high()) c_.resize(static_cast<std::size_t>(hi - low_) + 1, Integer(0));
  }
  const std::size_t base = static_cast<std::size_t>(lo - low_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(c_[base + i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  normalize();
  return *this;
}

std::string Laurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int e = high(); e >= low_; --e) {
    const Integer& c = c_[static_cast<std::size_t>(e - low_)];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (c < 0)
      out << '-';
    else if (!first)
      out << '+';
    if (e == 0 || mag != 1) out << mag.get_str();
    if (e != 0) out << 'q';
    if (e != 0 && e != 1) out << '^' << e;
    first = false;
  }
  return out.str();
}

}  // namespace hden
