#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hden/partitions.hpp"

namespace hden {

/// Values bound to the symbolic slots L, K, M of a ShapePattern.
struct ShapeBindings {
  std::array<int, 3> value{};
  std::array<bool, 3> bound{};

  std::optional<int> get(char var) const;
  void set(char var, int v);
  std::string to_string() const;
};

/// A partition shape such as "L K 0" or "L-2 K-2": each slot is either a
/// literal part or one of the symbols L, K, M with an optional offset.
/// Symbols stand for "large" parts (>= min_symbol when matching).
class ShapePattern {
 public:
  static ShapePattern parse(std::string_view text);

  std::size_t length() const { return slots_.size(); }
  int literal_slots() const;
  std::vector<char> symbols() const;

  /// Binds symbols so that the pattern equals p; symbol values must be >= min_symbol.
  std::optional<ShapeBindings> match(const Partition& p, int min_symbol = 3) const;
  /// Throws InvalidArgument if a symbol is unbound or the result is not a partition.
  Partition instantiate(const ShapeBindings& b) const;

  const std::string& text() const { return text_; }

 private:
  struct Slot {
    char symbol = 0;  // 0 for a literal
    int value = 0;    // literal value, or offset added to the symbol
  };
  std::vector<Slot> slots_;
  std::string text_;
};

/// Every binding of the pattern's symbols to values in `values` that yields a
/// valid partition (symbols listed left to right must be non-increasing).
std::vector<ShapeBindings> enumerate_bindings(const ShapePattern& pattern, const std::vector<int>& values);

}  // namespace hden
