#ifndef TENSPEC_SEARCH_HPP
#define TENSPEC_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "eigen.hpp"
#include "parallel.hpp"
#include "tensor.hpp"

namespace tenspec {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimum of the sorted ones list over vertex permutations composed with
/// index permutations fixing position 1, after dropping isolated vertices.
/// Equal canonical forms characterize the equivalence classes.
inline ZeroOneTensor canonicalize(const ZeroOneTensor& a, Index max_dim = 8, int max_order = 4) {
  ZeroOneTensor b = remove_isolated(a);
  if (b.order() > max_order)
    throw std::invalid_argument("canonicalize: order " + std::to_string(b.order()) +
                                " exceeds cap " + std::to_string(max_order));
  if (b.dim() > max_dim)
    throw std::invalid_argument("canonicalize: dimension " + std::to_string(b.dim()) +
                                " exceeds cap " + std::to_string(max_dim));
  if (b.dim() <= 1) return b;

  const int r = b.order();
  const Index n = b.dim();
  std::vector<IndexTuple> best = b.ones();

  std::vector<Index> tau(static_cast<std::size_t>(r));
  std::iota(tau.begin(), tau.end(), 0);
  do {
    const ZeroOneTensor t = transpose(b, tau);
    std::vector<Index> phi(static_cast<std::size_t>(n));
    std::iota(phi.begin(), phi.end(), 0);
    do {
      std::vector<IndexTuple> cand = permute_vertices(t, phi).ones();
      if (cand < best) best = std::move(cand);
    } while (std::next_permutation(phi.begin(), phi.end()));
    // advance tau over positions 2..r only
  } while (std::next_permutation(tau.begin() + 1, tau.end()));

  return ZeroOneTensor(r, n, std::move(best));
}

inline bool equivalent(const ZeroOneTensor& a, const ZeroOneTensor& b) {
  if (a.order() != b.order() || a.ones_count() != b.ones_count()) return false;
  return canonicalize(a) == canonicalize(b);
}

/// Repacks every slice so its ones sit on the trailing tuples with the
/// largest products x_{i2}...x_{ir}, ties broken toward dictionary-smaller
/// tuples. All slices share one tuple ranking, so the packed supports are
/// nested and downward closed in the coordinatewise order. For a sorted
/// Perron vector this is the disordered-pair switching closure: each swap
/// moves a 1 to a tuple with the not-smaller product, and the result has no
/// disordered pair left under the product ranking.
inline ZeroOneTensor disorder_normalize(const ZeroOneTensor& a, const std::vector<double>& x) {
  const int r = a.order();
  const Index n = a.dim();
  if (static_cast<Index>(x.size()) != n)
    throw std::invalid_argument("disorder_normalize: vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < 0.0)
      throw std::invalid_argument("disorder_normalize: x must be finite and nonnegative");
    if (i > 0 && x[i] > x[i - 1] + 1e-15)
      throw std::invalid_argument("disorder_normalize: x must be sorted non-increasing");
  }
  if (n == 0) return a;
  const std::size_t slice = detail::checked_pow(n, r - 1);
  if (slice > (std::size_t{1} << 22))
    throw std::invalid_argument("disorder_normalize: slice size too large");

  std::vector<double> prod(slice);
  {
    IndexTuple t(static_cast<std::size_t>(r - 1), 0);
    for (std::size_t p = 0; p < slice; ++p) {
      double v = 1.0;
      for (Index c : t) v *= x[static_cast<std::size_t>(c)];
      prod[p] = v;
      next_tuple(t, n);
    }
  }
  std::vector<std::size_t> order(slice);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return prod[p] > prod[q]; });

  const SliceCountVector counts = a.slice_counts();
  std::vector<IndexTuple> ones;
  ones.reserve(a.ones_count());
  for (Index i = 0; i < n; ++i)
    for (std::size_t j = 0; j < counts[static_cast<std::size_t>(i)]; ++j) {
      IndexTuple t;
      t.reserve(static_cast<std::size_t>(r));
      t.push_back(i);
      const IndexTuple tail = tuple_at(order[j], r - 1, n);
      t.insert(t.end(), tail.begin(), tail.end());
      ones.push_back(std::move(t));
    }
  return ZeroOneTensor(r, n, std::move(ones));
}

enum class StructureVerdict { matched, not_matched, not_applicable };

inline const char* to_string(StructureVerdict v) {
  switch (v) {
    case StructureVerdict::matched: return "matched";
    case StructureVerdict::not_matched: return "not_matched";
    default: return "not_applicable";
  }
}

/// Does A realize the extremal structure for e = k^r + l? For l = 1 the
/// family is J_k^r plus one extra 1 anywhere, so the test is one-removal down
/// to a full cube; other l compare canonical forms against build_extremal.
inline bool check_structure(const ZeroOneTensor& a, int r, Index k, int l) {
  if (a.order() != r) throw std::invalid_argument("check_structure: order mismatch");
  if (k < 2) throw std::invalid_argument("check_structure needs k >= 2");
  if (l < -r - 1 || l > r) throw std::invalid_argument("check_structure needs -r-1 <= l <= r");
  const std::size_t cube = detail::checked_pow(k, r);
  if (static_cast<long long>(a.ones_count()) != static_cast<long long>(cube) + l)
    throw std::invalid_argument("check_structure: ones count is not k^r + l");

  if (l == 1) {
    const std::vector<IndexTuple>& ones = a.ones();
    for (std::size_t skip = 0; skip < ones.size(); ++skip) {
      std::vector<IndexTuple> rest;
      rest.reserve(ones.size() - 1);
      for (std::size_t j = 0; j < ones.size(); ++j)
        if (j != skip) rest.push_back(ones[j]);
      const ZeroOneTensor sub = remove_isolated(ZeroOneTensor(r, a.dim(), std::move(rest)));
      if (sub.dim() == k && sub.ones_count() == cube) return true;
    }
    return false;
  }
  return equivalent(a, build_extremal(r, k, l).tensor);
}

/// Scans the k with e = k^r + l, -r-1 <= l <= r, k >= 2 (at most one for
/// r >= 3, possibly two for r = 2) and reports whether A matches any.
inline StructureVerdict structure_verdict(const ZeroOneTensor& a) {
  const int r = a.order();
  const long long e = static_cast<long long>(a.ones_count());
  bool applicable = false;
  for (Index k = 2;; ++k) {
    const long long cube = static_cast<long long>(detail::checked_pow(k, r));
    if (cube - (r + 1) > e) break;
    const long long l = e - cube;
    if (l < -r - 1 || l > r) continue;
    applicable = true;
    if (check_structure(a, r, k, static_cast<int>(l))) return StructureVerdict::matched;
  }
  return applicable ? StructureVerdict::not_matched : StructureVerdict::not_applicable;
}

struct SearchOptions {
  SolverOptions solver;
  unsigned jobs = 1;
  std::size_t budget = 100000000;  // candidate cap
  double tie_tolerance = 1e-8;
  bool sorted_counts = true;  // fstar: false audits unsorted slice-count assignments
};

struct SearchReport {
  int r = 0;
  std::size_t e = 0;
  std::vector<Index> n_range;
  double best_lambda = 0.0;
  std::vector<ZeroOneTensor> maximizers;  // canonical, deduplicated, sorted
  double theoretical_upper = 0.0;
  StructureVerdict structure_match = StructureVerdict::not_applicable;
  std::string mode;
  std::size_t candidates = 0;
  std::vector<std::string> warnings;
};

namespace detail {

// Downward-closed subsets of [n]^{r-1} under the coordinatewise order,
// as bitmasks over dictionary-order tuple positions.
struct IdealPoset {
  Index n = 0;
  int len = 0;            // r - 1
  std::size_t size = 0;   // n^len, <= 64
  std::vector<std::uint64_t> preds;  // immediate predecessors of each position

  IdealPoset(Index n_, int len_) : n(n_), len(len_) {
    size = checked_pow(n, len);
    if (size > 64) throw BudgetExceeded("ideal poset exceeds 64 tuple positions");
    preds.assign(size, 0);
    IndexTuple t(static_cast<std::size_t>(len), 0);
    for (std::size_t p = 0; p < size; ++p) {
      for (int c = 0; c < len; ++c) {
        if (t[static_cast<std::size_t>(c)] == 0) continue;
        IndexTuple q = t;
        --q[static_cast<std::size_t>(c)];
        preds[p] |= std::uint64_t{1} << tuple_position(q, n);
      }
      next_tuple(t, n);
    }
  }

  // All ideals of exactly `want` positions inside the ideal `within`,
  // in increasing bitmask order. Positions are considered in dictionary
  // order; a position may join only once its predecessors have.
  template <class Fn>
  void each_ideal(std::uint64_t within, int want, Fn&& fn) const {
    rec(within, 0, 0, want, fn);
  }

 private:
  template <class Fn>
  void rec(std::uint64_t within, std::uint64_t chosen, std::size_t p, int need, Fn& fn) const {
    if (need == 0) {
      fn(chosen);
      return;
    }
    if (p >= size || static_cast<std::size_t>(need) > size - p) return;
    const std::uint64_t bit = std::uint64_t{1} << p;
    if ((within & bit) && (preds[p] & ~chosen) == 0)
      rec(within, chosen | bit, p + 1, need - 1, fn);
    rec(within, chosen, p + 1, need, fn);
  }
};

inline ZeroOneTensor chain_tensor(int r, Index n, const std::vector<std::uint64_t>& slices) {
  std::vector<IndexTuple> ones;
  for (Index i = 0; i < n; ++i) {
    std::uint64_t m = slices[static_cast<std::size_t>(i)];
    while (m) {
      const int p = std::countr_zero(m);
      m &= m - 1;
      IndexTuple t;
      t.reserve(static_cast<std::size_t>(r));
      t.push_back(i);
      const IndexTuple tail = tuple_at(static_cast<std::size_t>(p), r - 1, n);
      t.insert(t.end(), tail.begin(), tail.end());
      ones.push_back(std::move(t));
    }
  }
  return ZeroOneTensor(r, n, std::move(ones));
}

// Sorted count vectors c_1 >= ... >= c_n >= 1, sum e, c_1 <= cap.
inline void each_count_vector(std::size_t e, Index n, std::size_t cap,
                              std::vector<std::size_t>& c,
                              const std::function<void()>& fn) {
  const std::size_t depth = c.size();
  if (static_cast<Index>(depth) == n) {
    if (e == 0) fn();
    return;
  }
  const std::size_t slots = static_cast<std::size_t>(n) - depth;
  std::size_t hi = std::min(cap, depth == 0 ? e : c[depth - 1]);
  hi = std::min(hi, e - (slots - 1));  // leave >= 1 per remaining slot
  for (std::size_t v = hi; v >= 1; --v) {
    if (v * slots < e) break;  // even repeating v cannot reach e
    c.push_back(v);
    each_count_vector(e - v, n, cap, c, fn);
    c.pop_back();
    if (v == 1) break;
  }
}

inline void reduce_candidates(SearchReport& rep, std::vector<std::pair<double, ZeroOneTensor>>& found,
                              double tie_tol) {
  if (found.empty()) return;
  double best = 0.0;
  for (const auto& f : found) best = std::max(best, f.first);
  rep.best_lambda = best;
  std::vector<ZeroOneTensor> canon;
  for (auto& f : found) {
    if (f.first < best - tie_tol) continue;
    canon.push_back(canonicalize(f.second));
  }
  std::sort(canon.begin(), canon.end(), [](const ZeroOneTensor& a, const ZeroOneTensor& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.ones() < b.ones();
  });
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  rep.maximizers = std::move(canon);
  if (!rep.maximizers.empty()) rep.structure_match = structure_verdict(rep.maximizers.front());
}

}  // namespace detail

/// Smallest n with n^r >= e.
inline Index min_host_dim(std::size_t e, int r) {
  Index n = 1;
  while (detail::checked_pow(n, r) < e) ++n;
  return n;
}

/// Fast search over the packed family: for each n and each sorted count
/// vector, every nested chain of downward-closed slice supports. A maximizer
/// of g_r(e) lies in this family (sort the Perron vector, pack each slice
/// onto the top product tuples, then sort the slice counts; certificates are
/// preserved at each step), so the best value found is exact over n_range.
inline SearchReport search_fstar(int r, std::size_t e, std::vector<Index> n_range = {},
                                 const SearchOptions& opts = {}) {
  if (r < 2) throw std::invalid_argument("search_fstar needs r >= 2");
  if (e < 1) throw std::invalid_argument("search_fstar needs e >= 1");
  SearchReport rep;
  rep.r = r;
  rep.e = e;
  rep.mode = opts.sorted_counts ? "fstar" : "fstar-audit";
  rep.theoretical_upper = upper_bound(e, r);

  if (n_range.empty()) {
    const Index lo = min_host_dim(e, r);
    for (Index n = lo; n <= lo + r + 1; ++n) n_range.push_back(n);
    rep.warnings.push_back("default n_range " + std::to_string(lo) + ".." +
                           std::to_string(lo + r + 1) +
                           " is a heuristic restriction; pass n_range to widen");
  }
  std::sort(n_range.begin(), n_range.end());
  n_range.erase(std::unique(n_range.begin(), n_range.end()), n_range.end());
  if (n_range.empty()) throw std::invalid_argument("search_fstar: empty n_range");

  std::vector<ZeroOneTensor> cands;
  bool any_feasible = false;
  for (Index n : n_range) {
    if (n < 1) continue;
    if (static_cast<std::size_t>(n) > e) continue;           // needs c_i >= 1
    if (detail::checked_pow(n, r) < e) continue;              // capacity
    any_feasible = true;
    rep.n_range.push_back(n);
    const detail::IdealPoset poset(n, r - 1);
    const std::uint64_t full =
        poset.size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << poset.size) - 1;

    std::vector<std::size_t> c;
    detail::each_count_vector(e, n, poset.size, c, [&]() {
      // nested chains: slices[i] is an ideal of size c[i] inside slices[i-1]
      std::vector<std::uint64_t> slices(static_cast<std::size_t>(n));
      const auto rec = [&](auto&& self, Index i) -> void {
        if (i == n) {
          if (cands.size() >= opts.budget)
            throw BudgetExceeded("search_fstar: candidate budget exceeded");
          if (opts.sorted_counts) {
            cands.push_back(detail::chain_tensor(r, n, slices));
            return;
          }
          std::vector<std::uint64_t> assigned = slices;
          std::sort(assigned.begin(), assigned.end());
          do {
            if (cands.size() >= opts.budget)
              throw BudgetExceeded("search_fstar: candidate budget exceeded");
            cands.push_back(detail::chain_tensor(r, n, assigned));
          } while (std::next_permutation(assigned.begin(), assigned.end()));
          return;
        }
        const std::uint64_t within = i == 0 ? full : slices[static_cast<std::size_t>(i - 1)];
        poset.each_ideal(within, static_cast<int>(c[static_cast<std::size_t>(i)]),
                         [&](std::uint64_t ideal) {
                           slices[static_cast<std::size_t>(i)] = ideal;
                           self(self, i + 1);
                         });
      };
      rec(rec, 0);
    });
  }
  if (!any_feasible)
    throw std::invalid_argument("search_fstar: no n in range can host " + std::to_string(e) +
                                " ones");

  rep.candidates = cands.size();
  std::vector<double> lambdas(cands.size());
  Executor exec(opts.jobs);
  exec.for_each_index(cands.size(), [&](std::size_t i) {
    lambdas[i] = spectral_radius(cands[i], opts.solver).lambda;
  });
  std::vector<std::pair<double, ZeroOneTensor>> found;
  double best = 0.0;
  for (double l : lambdas) best = std::max(best, l);
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (lambdas[i] >= best - opts.tie_tolerance)
      found.emplace_back(lambdas[i], std::move(cands[i]));
  detail::reduce_candidates(rep, found, opts.tie_tolerance);
  return rep;
}

/// Brute force over all e-subsets of the n^r positions. Returns every
/// maximizer as a canonical class, so uniqueness assertions are possible.
inline SearchReport search_exhaustive(int r, std::size_t e, Index n,
                                      const SearchOptions& opts = {}) {
  if (r < 2 || n < 1) throw std::invalid_argument("search_exhaustive needs r >= 2, n >= 1");
  const std::size_t cells = detail::checked_pow(n, r);
  if (e < 1 || e > cells)
    throw std::invalid_argument("search_exhaustive: e out of range for n^r cells");

  double total = 1.0;  // C(cells, e), just for the budget check
  for (std::size_t i = 0; i < e; ++i) total *= static_cast<double>(cells - i) / (i + 1);
  if (total > static_cast<double>(opts.budget))
    throw BudgetExceeded("search_exhaustive: " + std::to_string(total) +
                         " candidates exceed budget; use fstar mode");

  SearchReport rep;
  rep.r = r;
  rep.e = e;
  rep.n_range = {n};
  rep.mode = "exhaustive";
  rep.theoretical_upper = upper_bound(e, r);

  std::vector<std::size_t> comb(e);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  bool more = true;
  const auto advance = [&]() {
    std::size_t i = e;
    while (i > 0) {
      --i;
      if (comb[i] != cells - e + i) {
        ++comb[i];
        for (std::size_t j = i + 1; j < e; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  const auto build = [&](const std::vector<std::size_t>& positions) {
    std::vector<IndexTuple> ones;
    ones.reserve(e);
    for (std::size_t p : positions) ones.push_back(tuple_at(p, r, n));
    return ZeroOneTensor(r, n, std::move(ones));
  };

  Executor exec(opts.jobs);
  const std::size_t block = 1 << 14;
  std::vector<std::vector<std::size_t>> batch;
  std::vector<double> lambdas;
  std::vector<std::pair<double, ZeroOneTensor>> found;
  double best = 0.0;
  while (more) {
    batch.clear();
    while (more && batch.size() < block) {
      batch.push_back(comb);
      ++rep.candidates;
      more = advance();
    }
    lambdas.assign(batch.size(), 0.0);
    exec.for_each_index(batch.size(), [&](std::size_t i) {
      lambdas[i] = spectral_radius(build(batch[i]), opts.solver).lambda;
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (lambdas[i] > best) best = lambdas[i];
      if (lambdas[i] >= best - opts.tie_tolerance) found.emplace_back(lambdas[i], build(batch[i]));
    }
    if (found.size() > (std::size_t{1} << 20))
      throw BudgetExceeded("search_exhaustive: tie list too large");
  }
  found.erase(std::remove_if(found.begin(), found.end(),
                             [&](const auto& f) { return f.first < best - opts.tie_tolerance; }),
              found.end());
  detail::reduce_candidates(rep, found, opts.tie_tolerance);
  return rep;
}

}  // namespace tenspec

#endif  // TENSPEC_SEARCH_HPP
