#include "hden/shape_pattern.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hden/errors.hpp"

namespace hden {

namespace {

int symbol_index(char var) {
  switch (var) {
    case 'L': return 0;
    case 'K': return 1;
    case 'M': return 2;
    default: throw InvalidArgument(std::string("unknown shape symbol '") + var + "'");
  }
}

}  // namespace

std::optional<int> ShapeBindings::get(char var) const {
  const int i = symbol_index(var);
  if (!bound[static_cast<std::size_t>(i)]) return std::nullopt;
  return value[static_cast<std::size_t>(i)];
}

void ShapeBindings::set(char var, int v) {
  const auto i = static_cast<std::size_t>(symbol_index(var));
  value[i] = v;
  bound[i] = true;
}

std::string ShapeBindings::to_string() const {
  std::string s;
  const char names[] = {'L', 'K', 'M'};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!bound[i]) continue;
    if (!s.empty()) s += ' ';
    s += names[i];
    s += '=';
    s += std::to_string(value[i]);
  }
  return s;
}

ShapePattern ShapePattern::parse(std::string_view text) {
  ShapePattern p;
  p.text_ = std::string(text);
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Slot s;
    if (tok[0] == 'L' || tok[0] == 'K' || tok[0] == 'M') {
      s.symbol = tok[0];
      if (tok.size() > 1) s.value = std::stoi(tok.substr(1));
    } else {
      s.value = std::stoi(tok);
    }
    p.slots_.push_back(s);
  }
  return p;
}

int ShapePattern::literal_slots() const {
  return static_cast<int>(std::count_if(slots_.begin(), slots_.end(), [](const Slot& s) { return s.symbol == 0; }));
}

std::vector<char> ShapePattern::symbols() const {
  std::vector<char> out;
  for (const auto& s : slots_)
    if (s.symbol && std::find(out.begin(), out.end(), s.symbol) == out.end()) out.push_back(s.symbol);
  return out;
}

std::optional<ShapeBindings> ShapePattern::match(const Partition& p, int min_symbol) const {
  if (p.length() != slots_.size()) return std::nullopt;
  ShapeBindings b;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    if (s.symbol == 0) {
      if (p[i] != s.value) return std::nullopt;
      continue;
    }
    const int v = p[i] - s.value;
    if (v < min_symbol) return std::nullopt;
    if (auto prev = b.get(s.symbol)) {
      if (*prev != v) return std::nullopt;
    } else {
      b.set(s.symbol, v);
    }
  }
  return b;
}

Partition ShapePattern::instantiate(const ShapeBindings& b) const {
  std::vector<int> parts;
  for (const auto& s : slots_) {
    if (s.symbol == 0) {
      parts.push_back(s.value);
    } else {
      auto v = b.get(s.symbol);
      if (!v) throw InvalidArgument("unbound symbol in shape '" + text_ + "'");
      parts.push_back(*v + s.value);
    }
  }
  return Partition(std::move(parts));
}

std::vector<ShapeBindings> enumerate_bindings(const ShapePattern& pattern, const std::vector<int>& values) {
  const auto syms = pattern.symbols();
  std::vector<ShapeBindings> out;
  std::vector<int> pick(syms.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == syms.size()) {
      ShapeBindings b;
      for (std::size_t k = 0; k < syms.size(); ++k) b.set(syms[k], pick[k]);
      try {
        (void)pattern.instantiate(b);
        out.push_back(b);
      } catch (const InvalidArgument&) {
      }
      return;
    }
    for (int v : values) {
      pick[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace hden
