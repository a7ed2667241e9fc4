#include "hden/algebra/int_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "hden/errors.hpp"

namespace hden {

Rational parse_rational(const std::string& text) {
  auto valid = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](unsigned char ch) { return std::isdigit(ch) != 0; });
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid(num) || !valid(den)) throw InvalidArgument("not a rational number: '" + text + "'");
  Integer d(den);
  if (d == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

IntPoly::IntPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

IntPoly::IntPoly(const Integer& c) {
  if (c != 0) c_.push_back(c);
}

IntPoly::IntPoly(std::vector<Integer> coefficients) : c_(std::move(coefficients)) { trim(); }

IntPoly IntPoly::monomial(const Integer& c, int exponent) {
  if (exponent < 0) throw InvalidArgument("IntPoly exponents are non-negative");
  IntPoly p;
  if (c == 0) return p;
  p.c_.assign(static_cast<std::size_t>(exponent) + 1, Integer(0));
  p.c_.back() = c;
  return p;
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPoly::low_order() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

bool IntPoly::is_monomial() const {
  if (c_.empty()) return false;
  return low_order() == degree();
}

Integer IntPoly::coefficient(int exponent) const {
  if (exponent < 0 || exponent > degree()) return 0;
  return c_[static_cast<std::size_t>(exponent)];
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  IntPoly r = *this;
  Integer g = content();
  if (leading() < 0) g = -g;
  return r.divide_exact(g);
}

IntPoly IntPoly::shifted_up(int k) const {
  if (is_zero() || k == 0) return *this;
  IntPoly r;
  r.c_.assign(static_cast<std::size_t>(k), Integer(0));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

IntPoly IntPoly::shifted_down(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (k > low_order()) throw InvalidArgument("shifted_down: not divisible by q^k");
  IntPoly r;
  r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

Rational IntPoly::evaluate(const Rational& q0) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q0;
    acc += *it;
  }
  return acc;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  r.trim();
  return r;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const Integer& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

IntPoly& IntPoly::divide_exact(const Integer& c) {
  for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return *this;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int e = degree(); e >= 0; --e) {
    const Integer& c = c_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (c < 0)
      out << '-';
    else if (!first)
      out << '+';
    if (e == 0 || mag != 1) out << mag.get_str();
    if (e >= 1) out << 'q';
    if (e >= 2) out << '^' << e;
    first = false;
  }
  return out.str();
}

std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<Integer> quot(static_cast<std::size_t>(a.degree() - db) + 1, Integer(0));
  Integer t;
  for (int k = a.degree(); k >= db; --k) {
    Integer& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    const int shift = k - db;
    for (int j = 0; j <= db; ++j)
      mpz_submul(r[static_cast<std::size_t>(shift + j)].get_mpz_t(), t.get_mpz_t(),
                 bc[static_cast<std::size_t>(j)].get_mpz_t());
    quot[static_cast<std::size_t>(shift)] = t;
  }
  for (int k = 0; k < db; ++k)
    if (r[static_cast<std::size_t>(k)] != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  const Integer& lb = b.leading();
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    Integer top = r[static_cast<std::size_t>(k)];
    for (auto& x : r) x *= lb;
    if (top != 0) {
      const int shift = k - db;
      for (int j = 0; j <= db; ++j)
        mpz_submul(r[static_cast<std::size_t>(shift + j)].get_mpz_t(), top.get_mpz_t(),
                   bc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    r.pop_back();
  }
  return IntPoly(std::move(r));
}

IntPoly primitive_gcd(IntPoly a, IntPoly b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace hden
