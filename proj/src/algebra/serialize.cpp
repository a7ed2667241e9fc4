#include "hden/algebra/serialize.hpp"

#include <cctype>

namespace hden {

namespace {

nlohmann::json poly_to_json(const IntPoly& p) {
  auto arr = nlohmann::json::array();
  const auto& c = p.coefficients();
  for (std::size_t e = 0; e < c.size(); ++e)
    if (c[e] != 0) arr.push_back(nlohmann::json::array({static_cast<int>(e), c[e].get_str()}));
  return arr;
}

IntPoly poly_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw InvalidArgument("polynomial JSON must be an array");
  IntPoly p;
  for (const auto& term : arr) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() || !term[1].is_string())
      throw InvalidArgument("polynomial term must be [exp, \"coeff\"]");
    const int e = term[0].get<int>();
    Integer c;
    if (c.set_str(term[1].get<std::string>(), 10) != 0)
      throw InvalidArgument("bad coefficient '" + term[1].get<std::string>() + "'");
    p += IntPoly::monomial(c, e);
  }
  return p;
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) +
                          ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        acc /= unary();
      } else if (c == 'q' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (peek() == '^') {
      ++pos_;
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      const long e = integer().get_si();
      RatFunc r = 1;
      for (long i = 0; i < e; ++i) r *= base;
      return negative ? RatFunc(1) / r : r;
    }
    return base;
  }

  RatFunc primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'q') {
      ++pos_;
      return RatFunc::q();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(integer());
    fail("expected a number, 'q' or '('");
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json to_json(const RatFunc& f) {
  return {{"num", poly_to_json(f.numerator())}, {"den", poly_to_json(f.denominator())}};
}

RatFunc ratfunc_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw InvalidArgument("rational function JSON needs \"num\" and \"den\"");
  return RatFunc(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

RatFunc parse_ratfunc(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace hden
