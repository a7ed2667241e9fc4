#include "hden/oracle.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "hden/errors.hpp"
#include "hden/parallel.hpp"

namespace hden {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (e) {
    if (e & 1) r = r * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t k = 3; k * k <= p; k += 2)
    if (p % k == 0) return false;
  return true;
}

bool is_nonresidue(std::uint32_t c, std::uint32_t p) {
  if (c % p == 0) return false;
  return pow_mod(c, (p - 1) / 2, p) == p - 1;
}

std::uint32_t smallest_nonresidue(std::uint32_t p) {
  for (std::uint32_t c = 2; c < p; ++c)
    if (is_nonresidue(c, p)) return c;
  throw InvalidArgument("no quadratic non-residue mod " + std::to_string(p));
}

GaloisRingParams galois_params(std::uint32_t p, int d, std::optional<std::uint32_t> c) {
  if (!is_odd_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (d < 1) throw InvalidArgument("precision d must be >= 1");
  std::uint64_t mod = 1;
  for (int i = 0; i < d; ++i) {
    mod *= p;
    if (mod >= (std::uint64_t{1} << 31)) throw InvalidArgument("p^d must stay below 2^31");
  }
  GaloisRingParams out{p, d, 0};
  if (c) {
    if (!is_nonresidue(*c % p, p))
      throw InvalidArgument(std::to_string(*c) + " is not a quadratic non-residue mod " + std::to_string(p));
    out.c = *c % p;
  } else {
    out.c = smallest_nonresidue(p);
  }
  return out;
}

GaloisRing::GaloisRing(const GaloisRingParams& params) : params_(params), mod_(1), c_(params.c) {
  for (int i = 0; i < params.d; ++i) mod_ *= params.p;
}

GrElem GaloisRing::inverse(GrElem x) const {
  if (!is_unit(x)) throw InvalidArgument("inverse of a non-unit");
  // conj(x) / N(x), with N(x) inverted in Z/p^d
  const auto n = static_cast<std::int64_t>(norm(x));
  std::int64_t r0 = static_cast<std::int64_t>(mod_), r1 = n, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
  }
  return mul(conj(x), make(t0));
}

GrElem GaloisRing::make(std::int64_t a, std::int64_t b) const {
  const auto m = static_cast<std::int64_t>(mod_);
  return {static_cast<std::uint64_t>(((a % m) + m) % m), static_cast<std::uint64_t>(((b % m) + m) % m)};
}

GrMatrix identity_matrix(const GaloisRing& ring, std::size_t n) {
  GrMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.make(1);
  return m;
}

GrMatrix class_matrix(const GaloisRing& ring, const Partition& lambda) {
  GrMatrix m(lambda.length(), lambda.length());
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    std::uint64_t v = 1;
    for (int k = 0; k < lambda[i]; ++k) v = v * ring.params().p % ring.modulus();
    m.at(i, i) = {v, 0};
  }
  return m;
}

bool is_hermitian(const GaloisRing& ring, const GrMatrix& m) {
  if (m.rows != m.cols) return false;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i; j < m.cols; ++j)
      if (!(m.at(j, i) == ring.conj(m.at(i, j)))) return false;
  return true;
}

GrMatrix hermitian_apply(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& x) {
  if (a.rows != a.cols || x.rows != a.rows)
    throw InvalidArgument("hermitian_apply: A must be m x m and X must be m x n");
  GrMatrix ax(a.rows, x.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) {
      GrElem acc;
      for (std::size_t k = 0; k < a.cols; ++k) acc = ring.add(acc, ring.mul(a.at(i, k), x.at(k, j)));
      ax.at(i, j) = acc;
    }
  GrMatrix out(x.cols, x.cols);
  for (std::size_t i = 0; i < x.cols; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) {
      GrElem acc;
      for (std::size_t k = 0; k < x.rows; ++k) acc = ring.add(acc, ring.mul(ring.conj(x.at(k, i)), ax.at(k, j)));
      out.at(i, j) = acc;
    }
  return out;
}

Integer oracle_work_estimate(std::uint32_t p, int d, std::size_t m, std::size_t n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(2 * d) * m * n);
  return r;
}

namespace {

// Column-by-column search. Column j ranges over the level set
// {v : conj(v)^T A v = B_jj} and must pair with every earlier column i to B_ij.
// The number of ways to finish from column j depends only on the linear forms
// conj(x_i)^T A of the columns already placed, so partial searches are grouped
// and memoized by that tuple of forms.
class ColumnSearch {
 public:
  using FormKey = std::vector<std::uint64_t>;

  ColumnSearch(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& b) : ring_(ring), a_(a), b_(b), m_(a.rows) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> level_index;
    for (std::size_t j = 0; j < b.rows; ++j) {
      const GrElem t = b.at(j, j);
      auto [it, fresh] = level_index.try_emplace({t.a, t.b}, levels_.size());
      if (fresh) levels_.emplace_back();
      column_level_.push_back(it->second);
    }
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < m_; ++k) total *= ring.size();
    members_.assign(levels_.size(), std::vector<bool>(total, false));
    std::vector<GrElem> v(m_);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < m_; ++k) {
        v[k] = ring.element(rest % ring.size());
        rest /= ring.size();
      }
      const GrElem value = form(linear_form(v.data()), v.data());
      if (auto it = level_index.find({value.a, value.b}); it != level_index.end()) {
        levels_[it->second].insert(levels_[it->second].end(), v.begin(), v.end());
        members_[it->second][idx] = true;
      }
    }
    memo_.resize(b.rows);
  }

  // Distinct forms of admissible first columns, with multiplicities.
  std::vector<std::pair<FormKey, std::uint64_t>> first_column_groups() const {
    std::vector<std::vector<GrElem>> none;
    return group_candidates(0, none);
  }

  // Completions of columns 1.. given the form of column 0.
  std::uint64_t completions(const FormKey& first) const {
    std::vector<std::vector<GrElem>> forms{unpack(first)};
    return descend(1, forms);
  }

 private:
  const std::vector<GrElem>& level(std::size_t column) const { return levels_[column_level_[column]]; }

  // w with w_k = sum_l conj(v_l) A_{lk}, so that conj(v)^T A x = sum_k w_k x_k.
  std::vector<GrElem> linear_form(const GrElem* v) const {
    std::vector<GrElem> w(m_);
    for (std::size_t k = 0; k < m_; ++k)
      for (std::size_t l = 0; l < m_; ++l) w[k] = ring_.add(w[k], ring_.mul(ring_.conj(v[l]), a_.at(l, k)));
    return w;
  }

  GrElem form(const std::vector<GrElem>& w, const GrElem* x) const {
    GrElem acc;
    for (std::size_t k = 0; k < m_; ++k) acc = ring_.add(acc, ring_.mul(w[k], x[k]));
    return acc;
  }

  FormKey pack(const std::vector<GrElem>& w) const {
    FormKey key(m_);
    for (std::size_t k = 0; k < m_; ++k) key[k] = w[k].a + w[k].b * ring_.modulus();
    return key;
  }
  std::vector<GrElem> unpack(const FormKey& key) const {
    std::vector<GrElem> w(m_);
    for (std::size_t k = 0; k < m_; ++k) w[k] = ring_.element(key[k]);
    return w;
  }

  // Calls fn(x) for every x in the level set of `column` that pairs correctly
  // with all earlier columns. When an earlier form has a unit coefficient, the
  // matching coordinate is solved for instead of scanning the level set.
  template <class Fn>
  void for_each_candidate(std::size_t column, const std::vector<std::vector<GrElem>>& forms, Fn&& fn) const {
    const auto passes = [&](const GrElem* x) {
      for (std::size_t i = 0; i < column; ++i)
        if (!(form(forms[i], x) == b_.at(i, column))) return false;
      return true;
    };
    for (std::size_t i = 0; i < column; ++i) {
      for (std::size_t k = 0; k < m_; ++k) {
        if (!ring_.is_unit(forms[i][k])) continue;
        const GrElem inv = ring_.inverse(forms[i][k]);
        const GrElem target = b_.at(i, column);
        const auto& members = members_[column_level_[column]];
        std::vector<GrElem> x(m_);
        std::uint64_t free_total = 1;
        for (std::size_t l = 0; l + 1 < m_; ++l) free_total *= ring_.size();
        for (std::uint64_t idx = 0; idx < free_total; ++idx) {
          std::uint64_t rest = idx;
          GrElem partial;
          for (std::size_t l = 0; l < m_; ++l) {
            if (l == k) continue;
            x[l] = ring_.element(rest % ring_.size());
            rest /= ring_.size();
            partial = ring_.add(partial, ring_.mul(forms[i][l], x[l]));
          }
          x[k] = ring_.mul(inv, ring_.sub(target, partial));
          if (members[vector_index(x.data())] && passes(x.data())) fn(x.data());
        }
        return;
      }
    }
    const auto& cand = level(column);
    for (std::size_t off = 0; off < cand.size(); off += m_)
      if (passes(cand.data() + off)) fn(cand.data() + off);
  }

  std::uint64_t vector_index(const GrElem* x) const {
    std::uint64_t idx = 0;
    for (std::size_t k = m_; k-- > 0;) idx = idx * ring_.size() + ring_.index(x[k]);
    return idx;
  }

  // Candidates for `column`, grouped by their own linear form.
  std::vector<std::pair<FormKey, std::uint64_t>> group_candidates(std::size_t column,
                                                                  const std::vector<std::vector<GrElem>>& forms) const {
    std::map<FormKey, std::uint64_t> groups;
    for_each_candidate(column, forms, [&](const GrElem* x) { ++groups[pack(linear_form(x))]; });
    return {groups.begin(), groups.end()};
  }

  std::uint64_t count_candidates(std::size_t column, const std::vector<std::vector<GrElem>>& forms) const {
    std::uint64_t total = 0;
    for_each_candidate(column, forms, [&](const GrElem*) { ++total; });
    return total;
  }

  std::uint64_t descend(std::size_t column, std::vector<std::vector<GrElem>>& forms) const {
    if (column == b_.rows) return 1;
    FormKey key;
    for (const auto& w : forms) {
      const FormKey part = pack(w);
      key.insert(key.end(), part.begin(), part.end());
    }
    {
      std::lock_guard lock(memo_mu_);
      if (auto it = memo_[column].find(key); it != memo_[column].end()) return it->second;
    }
    std::uint64_t total = 0;
    if (column + 1 == b_.rows) {
      total = count_candidates(column, forms);
    } else {
      for (const auto& [w, mult] : group_candidates(column, forms)) {
        forms.push_back(unpack(w));
        total += mult * descend(column + 1, forms);
        forms.pop_back();
      }
    }
    std::lock_guard lock(memo_mu_);
    memo_[column].try_emplace(std::move(key), total);
    return total;
  }

  const GaloisRing& ring_;
  const GrMatrix& a_;
  const GrMatrix& b_;
  std::size_t m_;
  std::vector<std::vector<GrElem>> levels_;  // flattened vectors of length m_
  std::vector<std::size_t> column_level_;
  std::vector<std::vector<bool>> members_;  // indexed like the enumeration of R^m
  mutable std::mutex memo_mu_;
  mutable std::vector<std::map<FormKey, std::uint64_t>> memo_;
};

}  // namespace

Integer count_solutions(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& b, const OracleOptions& options) {
  if (!is_hermitian(ring, a) || !is_hermitian(ring, b)) throw InvalidArgument("count_solutions: A and B must be hermitian");
  if (a.rows == 0) throw InvalidArgument("count_solutions: A must be non-empty");
  if (b.rows == 0) return 1;
  const Integer estimate = oracle_work_estimate(ring.params().p, ring.params().d, a.rows, b.rows);
  if (estimate > options.budget) throw BudgetExceeded(estimate.get_str(), options.budget.get_str());

  const ColumnSearch search(ring, a, b);
  const auto groups = search.first_column_groups();
  std::vector<Integer> partial(groups.size());
  parallel_for(groups.size(), options.workers, [&](std::size_t k) {
    partial[k] = Integer(static_cast<unsigned long>(groups[k].second)) *
                 Integer(static_cast<unsigned long>(search.completions(groups[k].first)));
  });
  Integer total = 0;
  for (const auto& c : partial) total += c;
  return total;
}

Integer count_representations(const Partition& lambda_a, const Partition& lambda_b, const GaloisRingParams& params,
                              const OracleOptions& options) {
  if (lambda_a.length() < lambda_b.length()) throw InvalidArgument("oracle needs length(lambda_A) >= length(lambda_B)");
  if (lambda_a.empty()) throw InvalidArgument("oracle needs a non-empty lambda_A");
  if (params.d <= lambda_b.largest())
    throw InvalidArgument("precision d = " + std::to_string(params.d) + " must exceed the largest part of lambda_B");
  const GaloisRing ring(params);
  return count_solutions(ring, class_matrix(ring, lambda_a), class_matrix(ring, lambda_b), options);
}

OracleResult density_oracle(const Partition& lambda_a, const Partition& lambda_b, const GaloisRingParams& params,
                            const OracleOptions& options) {
  OracleResult r;
  r.count = count_representations(lambda_a, lambda_b, params, options);
  const auto m = static_cast<int>(lambda_a.length());
  const auto n = static_cast<int>(lambda_b.length());
  r.denominator_exp = params.d * n * (2 * m - n);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), params.p, static_cast<unsigned long>(r.denominator_exp));
  r.density = Rational(r.count, den);
  r.density.canonicalize();
  return r;
}

std::vector<Rational> stabilization_check(const Partition& lambda_a, const Partition& lambda_b,
                                          const GaloisRingParams& params, const std::vector<int>& d_list,
                                          const OracleOptions& options) {
  std::vector<Rational> out;
  for (int d : d_list) out.push_back(density_oracle(lambda_a, lambda_b, galois_params(params.p, d, params.c), options).density);
  return out;
}

}  // namespace hden
