#include "hden/algebra/qseries.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace hden {

RatFunc neg_q_power(int e) { return RatFunc::neg_q_power(e); }

RatFunc gauss_binomial(int u, int v) {
  if (v < 0 || v > u) throw InvalidArgument("gauss_binomial requires u >= v >= 0");
  auto factor_product = [](int k) {
    RatFunc r = 1;
    for (int i = 1; i <= k; ++i) r *= RatFunc(1) - neg_q_power(-i);
    return r;
  };
  return factor_product(u) / (factor_product(v) * factor_product(u - v));
}

namespace {

// Pascal rows in x = (-q)^{-1}: [u;v]_x = [u-1;v-1]_x + x^v [u-1;v]_x.
// Rows are appended on demand; a deque keeps handed-out references valid.
class GaussRows {
 public:
  const Laurent& get(int u, int v) {
    {
      std::shared_lock lock(mu_);
      if (static_cast<std::size_t>(u) < rows_.size()) return rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
    std::unique_lock lock(mu_);
    while (rows_.size() <= static_cast<std::size_t>(u)) append_row();
    return rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  }

 private:
  void append_row() {
    const int u = static_cast<int>(rows_.size());
    std::vector<Laurent> row(static_cast<std::size_t>(u) + 1);
    row.front() = 1;
    row.back() = 1;
    for (int v = 1; v < u; ++v) {
      const auto& prev = rows_.back();
      Laurent shifted = prev[static_cast<std::size_t>(v)];
      shifted.mul_monomial(v % 2 == 0 ? 1 : -1, -v);
      row[static_cast<std::size_t>(v)] = prev[static_cast<std::size_t>(v - 1)] + shifted;
    }
    rows_.push_back(std::move(row));
  }

  std::shared_mutex mu_;
  std::deque<std::vector<Laurent>> rows_;
};

}  // namespace

const Laurent& gauss_binomial_laurent(int u, int v) {
  if (v < 0 || v > u) throw InvalidArgument("gauss_binomial requires u >= v >= 0");
  static GaussRows rows;
  return rows.get(u, v);
}

}  // namespace hden
