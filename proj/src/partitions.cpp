#include "hden/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "hden/errors.hpp"

namespace hden {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw InvalidArgument("partition parts must be non-negative: " + to_string());
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw InvalidArgument("partition parts must be non-increasing: " + to_string());
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return Partition();
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view field =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw InvalidArgument("bad partition '" + std::string(text) + "': expected comma-separated integers");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Partition(std::move(parts));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::n_stat() const {
  int s = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<int>(i) * parts_[i];
  return s;
}

Partition Partition::tilde() const { return shifted(1); }

int Partition::conjugate_part(int i) const {
  if (i < 1) throw InvalidArgument("conjugate index starts at 1");
  // parts are sorted, so count the prefix with part >= i
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [i](int p) { return p >= i; }));
}

std::vector<int> Partition::conjugate(int count) const {
  std::vector<int> c(static_cast<std::size_t>(std::max(count, 0)), 0);
  for (int part : parts_)
    for (int i = 1; i <= std::min(part, count); ++i) ++c[static_cast<std::size_t>(i - 1)];
  return c;
}

int Partition::trailing_zeros() const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), 0));
}

Partition Partition::shifted(int delta) const {
  std::vector<int> p = parts_;
  for (int& x : p) x += delta;
  return Partition(std::move(p));
}

Partition Partition::without_last() const {
  if (parts_.empty()) throw InvalidArgument("without_last on an empty partition");
  return Partition(std::vector<int>(parts_.begin(), parts_.end() - 1));
}

Partition Partition::appended(int part) const {
  std::vector<int> p = parts_;
  p.push_back(part);
  return Partition(std::move(p));
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = p.length() * 0x9e3779b97f4a7c15ULL;
  for (int x : p.parts()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL + 0x9e3779b9;
  return h;
}

std::size_t PartitionPairHash::operator()(const std::pair<Partition, Partition>& p) const noexcept {
  PartitionHash h;
  return h(p.first) * 31 + h(p.second);
}

PartitionStats stats(const Partition& p) { return {p.weight(), p.n_stat(), p.tilde()}; }

int conj_inner_product(const Partition& xi, const Partition& mu) {
  const int top = std::max(xi.largest(), mu.largest());
  const auto a = xi.conjugate(top);
  const auto b = mu.conjugate(top);
  return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

bool in_lambda_plus(const Partition& xi, int s) {
  const int n = static_cast<int>(xi.length());
  if (s < 1 || s > n) return false;
  for (int i = n - s; i < n; ++i)
    if (xi[static_cast<std::size_t>(i)] != 0) return false;
  return s == n || xi[static_cast<std::size_t>(n - s - 1)] >= 1;
}

Partition xi_plus(const Partition& xi, int s, int a, int b) {
  if (!in_lambda_plus(xi, s))
    throw InvalidArgument("xi_plus: " + xi.to_string() + " is not in Lambda+_{n," + std::to_string(s) + "}");
  if (a < 0 || b < 0 || a + b > s) throw InvalidArgument("xi_plus: need a, b >= 0 and a + b <= s");
  std::vector<int> p(xi.parts().begin(), xi.parts().end() - s);
  p.insert(p.end(), static_cast<std::size_t>(a), 2);
  p.insert(p.end(), static_cast<std::size_t>(b), 1);
  p.insert(p.end(), static_cast<std::size_t>(s - a - b), 0);
  std::sort(p.begin(), p.end(), std::greater<>());
  return Partition(std::move(p));
}

Partition xi_plus(const Partition& xi, int a, int b) { return xi_plus(xi, xi.trailing_zeros(), a, b); }

std::vector<Laurent> d_coefficients_laurent(int n, int s) {
  if (n < 1 || s < 1 || s > n) throw InvalidArgument("d_coefficients requires 1 <= s <= n");
  std::vector<Laurent> c{Laurent(1)};
  for (int j = 0; j < s; ++j) {
    // multiply by (1 - (-q)^{-n+j} X)
    const Laurent root = Laurent::neg_q_power(-n + j);
    std::vector<Laurent> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * root;
    }
    c = std::move(next);
  }
  return c;
}

std::vector<RatFunc> d_coefficients(int n, int s) {
  std::vector<RatFunc> out;
  for (const auto& l : d_coefficients_laurent(n, s)) out.emplace_back(l);
  return out;
}

Partition mu_lk(const Partition& mu_bar, int l, int k, int n) {
  if (static_cast<int>(mu_bar.length()) != n - l) throw InvalidArgument("mu_lk: mu_bar must have length n-l");
  if (k < 0 || k > l) throw InvalidArgument("mu_lk: need 0 <= k <= l");
  for (int x : mu_bar.parts())
    if (x < 2) throw InvalidArgument("mu_lk: parts of mu_bar must be >= 2");
  std::vector<int> p(mu_bar.parts().begin(), mu_bar.parts().end());
  p.insert(p.end(), static_cast<std::size_t>(k), 1);
  p.insert(p.end(), static_cast<std::size_t>(l - k), 0);
  return Partition(std::move(p));
}

std::vector<Partition> partitions_in_box(std::size_t length, int lo, int hi) {
  std::vector<Partition> out;
  if (hi < lo) return out;
  std::vector<int> cur(length, lo);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int cap) {
    if (i == length) {
      out.emplace_back(cur);
      return;
    }
    for (int v = lo; v <= cap; ++v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, hi);
  return out;
}

Partition random_partition(std::mt19937_64& rng, std::size_t length, int lo, int hi) {
  if (lo < 0 || hi < lo) throw InvalidArgument("random_partition: need 0 <= lo <= hi");
  std::uniform_int_distribution<int> part(lo, hi);
  std::vector<int> parts(length);
  for (auto& x : parts) x = part(rng);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

}  // namespace hden
