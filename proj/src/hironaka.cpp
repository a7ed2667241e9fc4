#include "hden/hironaka.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>

#include "hden/algebra/qseries.hpp"
#include "hden/algebra/serialize.hpp"
#include "hden/errors.hpp"

namespace hden {

namespace {

void require_density_args(const Partition& xi, const Partition& lambda) {
  if (lambda.empty()) throw InvalidArgument("density needs lambda of length >= 1");
  if (xi.length() < lambda.length())
    throw InvalidArgument("density needs length(xi) >= length(lambda), got " + xi.to_string() + " and " +
                          lambda.to_string());
}

// I_j as a function of (mu'_j, mu'_{j+1}, tilde(lambda)'_j, tilde(lambda)'_{j+1}).
Laurent link_factor(int c, int c_next, int lt, int lt_next) {
  Laurent sum;
  for (int i = c_next; i <= std::min(lt_next, c); ++i) {
    const int twice = i * (2 * lt_next + 1 - i);
    assert(twice % 2 == 0);
    Laurent term = gauss_binomial_laurent(lt_next - c_next, lt_next - i) * gauss_binomial_laurent(lt - i, lt - c);
    term.mul_monomial((twice / 2) % 2 == 0 ? 1 : -1, twice / 2);
    sum += term;
  }
  return sum;
}

// Packed cache of link factors; the arguments are bounded by the partition length + 1.
class LinkCache {
 public:
  const Laurent& get(int c, int c_next, int lt, int lt_next) {
    const std::uint32_t key = (static_cast<std::uint32_t>(c) << 24) | (static_cast<std::uint32_t>(c_next) << 16) |
                              (static_cast<std::uint32_t>(lt) << 8) | static_cast<std::uint32_t>(lt_next);
    {
      std::shared_lock lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Laurent v = link_factor(c, c_next, lt, lt_next);
    std::unique_lock lock(mu_);
    return cache_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::uint32_t, Laurent> cache_;
};

LinkCache& link_cache() {
  static LinkCache cache;
  return cache;
}

// sign and exponent of (-1)^c (-q)^e
Laurent column_weight(int e, int c) {
  return Laurent::monomial(((c + e) % 2 == 0) ? 1 : -1, e);
}

}  // namespace

Laurent hironaka_I(const Partition& mu, const Partition& lambda, int j) {
  if (j < 1) throw InvalidArgument("I_j needs j >= 1");
  if (mu.length() != lambda.length()) throw InvalidArgument("I_j needs mu and lambda of equal length");
  const Partition lt = lambda.tilde();
  const int c = mu.conjugate_part(j);
  const int c_next = mu.conjugate_part(j + 1);
  const int l = lt.conjugate_part(j);
  const int l_next = lt.conjugate_part(j + 1);
  if (c > l || c_next > l_next) throw InvalidArgument("I_j needs mu <= tilde(lambda)");
  return link_factor(c, c_next, l, l_next);
}

Laurent alpha_laurent(const Partition& xi, const Partition& lambda) {
  require_density_args(xi, lambda);
  const int m = static_cast<int>(xi.length());
  const int n = static_cast<int>(lambda.length());
  // mu_1 <= lambda_1 + 1, and every I_j beyond that column is 1
  const int top = lambda.largest() + 1;
  const std::vector<int> lt = lambda.tilde().conjugate(top + 1);
  const std::vector<int> xc = xi.conjugate(top);
  auto& links = link_cache();

  std::vector<Laurent> next(static_cast<std::size_t>(n) + 1);
  std::vector<Laurent> cur(static_cast<std::size_t>(n) + 1);
  next[0] = 1;
  for (int j = top; j >= 1; --j) {
    const int l = lt[static_cast<std::size_t>(j - 1)];
    const int l_next = lt[static_cast<std::size_t>(j)];
    for (auto& v : cur) v = Laurent();
    for (int c = 0; c <= l; ++c) {
      Laurent acc;
      for (int c_next = 0; c_next <= std::min(c, l_next); ++c_next) {
        const Laurent& tail = next[static_cast<std::size_t>(c_next)];
        if (tail.is_zero()) continue;
        acc.add_product(links.get(c, c_next, l, l_next), tail);
      }
      // -n(mu) + (n-m-1)|mu| + <xi',mu'> restricted to column j
      const int e = -c * (c - 1) / 2 + (n - m - 1) * c + xc[static_cast<std::size_t>(j - 1)] * c;
      acc.mul_monomial(((c + e) % 2 == 0) ? 1 : -1, e);
      cur[static_cast<std::size_t>(c)] = std::move(acc);
    }
    std::swap(cur, next);
  }
  Laurent total;
  for (const auto& v : next) total += v;
  return total;
}

Laurent alpha_by_enumeration(const Partition& xi, const Partition& lambda) {
  require_density_args(xi, lambda);
  const int m = static_cast<int>(xi.length());
  const int n = static_cast<int>(lambda.length());
  std::vector<int> mu(static_cast<std::size_t>(n), 0);
  Laurent total;
  for (;;) {
    if (std::is_sorted(mu.rbegin(), mu.rend())) {
      const Partition p(mu);
      const int e = -p.n_stat() + (n - m - 1) * p.weight() + conj_inner_product(xi, p);
      Laurent term = column_weight(e, p.weight());
      const int last_j = std::max(p.largest(), lambda.largest() + 1);
      for (int j = 1; j <= last_j && !term.is_zero(); ++j) term *= hironaka_I(p, lambda, j);
      total += term;
    }
    // odometer, last coordinate fastest
    int i = n - 1;
    while (i >= 0 && mu[static_cast<std::size_t>(i)] == lambda[static_cast<std::size_t>(i)] + 1) {
      mu[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++mu[static_cast<std::size_t>(i)];
  }
  return total;
}

RatFunc alpha(const Partition& xi, const Partition& lambda) { return RatFunc(alpha_laurent(xi, lambda)); }

RatFunc normalized(const Partition& xi, const Partition& lambda) {
  if (xi.length() != lambda.length()) throw InvalidArgument("normalized density needs equal lengths");
  if ((xi.weight() - lambda.weight()) % 2 != 0) return RatFunc();
  return alpha(xi, lambda) / alpha(xi, xi);
}

Laurent Hironaka::alpha_laurent(const Partition& xi, const Partition& lambda) const {
  Key key{xi, lambda};
  {
    std::shared_lock lock(mu_);
    if (auto it = alpha_cache_.find(key); it != alpha_cache_.end()) return it->second;
  }
  Laurent v = hden::alpha_laurent(xi, lambda);
  std::unique_lock lock(mu_);
  alpha_cache_.try_emplace(std::move(key), v);
  return v;
}

RatFunc Hironaka::alpha(const Partition& xi, const Partition& lambda) const {
  return RatFunc(alpha_laurent(xi, lambda));
}

RatFunc Hironaka::normalized(const Partition& xi, const Partition& lambda) const {
  if (xi.length() != lambda.length()) throw InvalidArgument("normalized density needs equal lengths");
  if ((xi.weight() - lambda.weight()) % 2 != 0) return RatFunc();
  if (xi == lambda) return RatFunc(1);
  Key key{xi, lambda};
  {
    std::shared_lock lock(mu_);
    if (auto it = normalized_cache_.find(key); it != normalized_cache_.end()) return it->second;
  }
  const Laurent num = alpha_laurent(xi, lambda);
  RatFunc v;
  if (!num.is_zero()) v = RatFunc(num) / RatFunc(alpha_laurent(xi, xi));
  std::unique_lock lock(mu_);
  normalized_cache_.try_emplace(std::move(key), v);
  return v;
}

std::size_t Hironaka::cache_size() const {
  std::shared_lock lock(mu_);
  return alpha_cache_.size();
}

void Hironaka::clear() {
  std::unique_lock lock(mu_);
  alpha_cache_.clear();
  normalized_cache_.clear();
}

namespace {

struct RowSource {
  const char* group;
  const char* shape;
  const char* factor;
  const char* inner;
};

// alpha(A_xi, A_xi) closed forms; "L", "K", "M" stand for parts >= 3.
constexpr RowSource kSelfDensityRows[] = {
    {"n1", "0", "1+1/q", ""},

    {"n2", "0 0", "(1+1/q)(1-1/q^2)", ""},
    {"n2", "1 0", "q(1+1/q)^2", ""},
    {"n2", "1 1", "q^4(1+1/q)(1-1/q^2)", ""},
    {"n2", "2 1", "q^5(1+1/q)^2", ""},
    {"n2", "2 2", "q^8(1+1/q)(1-1/q^2)", ""},
    {"n2", "L 0", "q^2(1+1/q)", "L-2"},
    {"n2", "L 2", "q^8(1+1/q)", "L-2"},
    {"n2", "2 0", "q^2(1+1/q)^2", ""},

    {"n3", "L K 0", "q^8(1+1/q)", "L-2 K-2"},
    {"n3", "L K 1", "q^13(1+1/q)", "L-2 K-2"},
    {"n3", "L K 2", "q^18(1+1/q)", "L-2 K-2"},
    {"n3", "L 2 0", "q^8(1+1/q)^2", "L-2"},
    {"n3", "L 2 1", "q^13(1+1/q)^2", "L-2"},
    {"n3", "L 2 2", "q^18(1+1/q)(1-1/q^2)", "L-2"},
    {"n3", "2 2 0", "q^8(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "2 2 1", "q^13(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "2 2 2", "q^18(1+1/q)(1-1/q^2)(1+1/q^3)", ""},
    {"n3", "L 0 0", "q^2(1+1/q)(1-1/q^2)", "L-2"},
    {"n3", "L 1 0", "q^5(1+1/q)^2", "L-2"},
    {"n3", "L 1 1", "q^10(1+1/q)(1-1/q^2)", "L-2"},
    {"n3", "2 0 0", "q^2(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "2 1 0", "q^5(1+1/q)^3", ""},
    {"n3", "2 1 1", "q^10(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "0 0 0", "(1+1/q)(1-1/q^2)(1+1/q^3)", ""},
    {"n3", "1 0 0", "q(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "1 1 0", "q^4(1+1/q)^2(1-1/q^2)", ""},
    {"n3", "1 1 1", "q^9(1+1/q)(1-1/q^2)(1+1/q^3)", ""},

    {"n4", "L K M 0", "q^18(1+1/q)", "L-2 K-2 M-2"},
    {"n4", "L K M 1", "q^25(1+1/q)", "L-2 K-2 M-2"},
    {"n4", "L K M 2", "q^32(1+1/q)", "L-2 K-2 M-2"},
    {"n4", "L K 2 0", "q^18(1+1/q)^2", "L-2 K-2"},
    {"n4", "L K 2 1", "q^25(1+1/q)^2", "L-2 K-2"},
    {"n4", "L K 2 2", "q^32(1+1/q)(1-1/q^2)", "L-2 K-2"},
    {"n4", "L 2 2 0", "q^18(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "L 2 2 1", "q^25(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "L 2 2 2", "q^32(1+1/q)(1-1/q^2)(1+1/q^3)", "L-2"},
    {"n4", "2 2 2 0", "q^18(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "2 2 2 1", "q^25(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "2 2 2 2", "q^32(1+1/q)(1-1/q^2)(1+1/q^3)(1-1/q^4)", ""},
    {"n4", "L K 0 0", "q^8(1+1/q)(1-1/q^2)", "L-2 K-2"},
    {"n4", "L K 1 0", "q^13(1+1/q)^2", "L-2 K-2"},
    {"n4", "L K 1 1", "q^20(1+1/q)(1-1/q^2)", "L-2 K-2"},
    {"n4", "L 2 0 0", "q^8(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "L 2 1 0", "q^13(1+1/q)^3", "L-2"},
    {"n4", "L 2 1 1", "q^20(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "2 2 0 0", "q^8(1+1/q)^2(1-1/q^2)^2", ""},
    {"n4", "2 2 1 0", "q^13(1+1/q)^3(1-1/q^2)", ""},
    {"n4", "2 2 1 1", "q^20(1+1/q)^2(1-1/q^2)^2", ""},
    {"n4", "L 0 0 0", "q^2(1+1/q)(1-1/q^2)(1+1/q^3)", "L-2"},
    {"n4", "L 1 0 0", "q^5(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "L 1 1 0", "q^10(1+1/q)^2(1-1/q^2)", "L-2"},
    {"n4", "L 1 1 1", "q^17(1+1/q)(1-1/q^2)(1+1/q^3)", "L-2"},
    {"n4", "2 0 0 0", "q^2(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "2 1 0 0", "q^5(1+1/q)^3(1-1/q^2)", ""},
    {"n4", "2 1 1 0", "q^10(1+1/q)^3(1-1/q^2)", ""},
    {"n4", "2 1 1 1", "q^17(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "0 0 0 0", "(1+1/q)(1-1/q^2)(1+1/q^3)(1-1/q^4)", ""},
    {"n4", "1 0 0 0", "q(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "1 1 0 0", "q^4(1+1/q)^2(1-1/q^2)^2", ""},
    {"n4", "1 1 1 0", "q^9(1+1/q)^2(1-1/q^2)(1+1/q^3)", ""},
    {"n4", "1 1 1 1", "q^16(1+1/q)(1-1/q^2)(1+1/q^3)(1-1/q^4)", ""},
};

}  // namespace

const std::vector<SelfDensityRow>& self_density_table() {
  static const std::vector<SelfDensityRow> rows = [] {
    std::vector<SelfDensityRow> out;
    std::unordered_map<std::string, int> counters;
    for (const auto& src : kSelfDensityRows) {
      SelfDensityRow row{src.group, ++counters[src.group], ShapePattern::parse(src.shape),
                         parse_ratfunc(src.factor), std::nullopt};
      if (*src.inner) row.inner = ShapePattern::parse(src.inner);
      out.push_back(std::move(row));
    }
    return out;
  }();
  return rows;
}

RatFunc self_density_closed(const Partition& xi) {
  for (const auto& row : self_density_table()) {
    auto b = row.shape.match(xi);
    if (!b) continue;
    if (!row.inner) return row.factor;
    return row.factor * self_density_closed(row.inner->instantiate(*b));
  }
  if (!xi.empty() && xi.smallest() >= 1) {
    const int n = static_cast<int>(xi.length());
    return RatFunc(IntPoly::monomial(1, n * n)) * self_density_closed(xi.shifted(-1));
  }
  throw NotTabulated("no closed self-density for shape " + xi.to_string());
}

}  // namespace hden
