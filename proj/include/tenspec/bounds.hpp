#ifndef TENSPEC_BOUNDS_HPP
#define TENSPEC_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "tensor.hpp"

namespace tenspec {

/// Upper bound rho(A) <= e^{(r-1)/r} for any {0,1} tensor with e ones; tight
/// exactly when e = k^r and A is equivalent to J_k^r.
inline double upper_bound(std::size_t e, int r) {
  if (r < 2) throw std::invalid_argument("order r must be >= 2");
  return std::pow(static_cast<double>(e), (r - 1.0) / r);
}

/// Lower bound g_r(e) >= e/k whenever e <= k^r (symmetric-host argument).
inline double lower_bound_g(std::size_t e, int r, Index k) {
  if (r < 2 || k < 1) throw std::invalid_argument("lower_bound_g needs r >= 2, k >= 1");
  if (e > detail::checked_pow(k, r))
    throw std::invalid_argument("lower_bound_g needs e <= k^r");
  return static_cast<double>(e) / static_cast<double>(k);
}

/// The coarser closed form g_r(k^r - l) >= k^{r-1} - (l + r!)/k, exposed for
/// comparison with lower_bound_g.
inline double lower_bound_g_slack(std::size_t e, int r, Index k) {
  if (r < 2 || k < 1) throw std::invalid_argument("lower_bound_g_slack needs r >= 2, k >= 1");
  const std::size_t cap = detail::checked_pow(k, r);
  if (e > cap) throw std::invalid_argument("lower_bound_g_slack needs e <= k^r");
  const double l = static_cast<double>(cap - e);
  double rfact = 1.0;
  for (int i = 2; i <= r; ++i) rfact *= i;
  return std::pow(static_cast<double>(k), r - 1) - (l + rfact) / static_cast<double>(k);
}

/// f(x) = (1/r) x^r - x e^{-(r-1)/r} + (r-1)/(re): nonnegative on [0, inf)
/// with its unique zero at x = e^{-1/r}.
inline double f_func(double x, std::size_t e, int r) {
  if (r < 2 || e < 1) throw std::invalid_argument("f_func needs r >= 2, e >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("f_func needs x >= 0");
  const double ed = static_cast<double>(e);
  return std::pow(x, r) / r - x * std::pow(ed, -(r - 1.0) / r) + (r - 1.0) / (r * ed);
}

/// Checks f(x) >= ((r-1)/2) e^{-1+2/r} (x - e^{-1/r})^2, valid for x > e^{-1/r}.
inline bool f_quadratic_bound_check(double x, std::size_t e, int r, double slack = 0.0) {
  const double ed = static_cast<double>(e);
  const double root = std::pow(ed, -1.0 / r);
  if (!(x > root)) throw std::invalid_argument("f_quadratic_bound_check needs x > e^{-1/r}");
  const double rhs = 0.5 * (r - 1.0) * std::pow(ed, -1.0 + 2.0 / r) * (x - root) * (x - root);
  return f_func(x, e, r) + slack >= rhs;
}

/// Large/small split of the stability theorem for a tensor with e = k^r + l
/// ones whose spectral radius reaches the threshold k^{r-1} + eps l/k.
struct StabilityReport {
  Index k = 0;
  int l = 0;
  double epsilon = 0.0;  // 0 for l >= 0, 1 for l < 0
  double c1 = 0.0, c2 = 0.0;
  double rho = 0.0, threshold = 0.0, slack = 0.0;
  std::vector<Index> large;       // vertices of L, ascending, 0-based
  std::size_t zeros_inside = 0;   // N: zeros of the principal block on L
  std::size_t ones_outside = 0;   // M: ones of A outside L^r
  std::vector<double> xr_sorted;  // x_i^r descending, for diagnosing |L|
};

struct StabilityPreconditionError : std::runtime_error {
  StabilityPreconditionError(double rho_, double threshold_)
      : std::runtime_error("stability_extract: measured rho " + std::to_string(rho_) +
                           " is below the threshold " + std::to_string(threshold_)),
        rho(rho_),
        threshold(threshold_) {}
  double rho, threshold;
};

inline StabilityReport stability_extract(const ZeroOneTensor& a, Index k, int l,
                                         const SolverOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("stability_extract needs k >= 1");
  const int r = a.order();
  const std::size_t cube = detail::checked_pow(k, r);
  if (static_cast<long long>(a.ones_count()) != static_cast<long long>(cube) + l)
    throw std::invalid_argument("stability_extract: ones count " + std::to_string(a.ones_count()) +
                                " is not k^r + l = " + std::to_string(static_cast<long long>(cube) + l));

  StabilityReport rep;
  rep.k = k;
  rep.l = l;
  rep.epsilon = (l >= 0) ? 0.0 : 1.0;
  rep.threshold = std::pow(static_cast<double>(k), r - 1) +
                  rep.epsilon * static_cast<double>(l) / static_cast<double>(k);

  const EigenResult er = spectral_radius(a, opts);
  rep.rho = er.lambda;
  rep.slack = rep.rho - rep.threshold;
  if (rep.rho < rep.threshold - 10.0 * opts.tolerance)
    throw StabilityPreconditionError(rep.rho, rep.threshold);

  const double radicand = (2.0 / r - 2.0 * rep.epsilon / (r - 1.0)) * l;
  rep.c2 = std::sqrt(std::max(radicand, 0.0));
  rep.c1 = 0.5 / std::pow(rep.c2 + 1.0, r - 1);

  const double cut = rep.c1 / static_cast<double>(k);
  std::vector<bool> in_large(static_cast<std::size_t>(a.dim()), false);
  for (Index i = 0; i < a.dim(); ++i) {
    const double xr = std::pow(er.x[static_cast<std::size_t>(i)], r);
    rep.xr_sorted.push_back(xr);
    if (xr >= cut) {
      in_large[static_cast<std::size_t>(i)] = true;
      rep.large.push_back(i);
    }
  }
  std::sort(rep.xr_sorted.begin(), rep.xr_sorted.end(), std::greater<double>());

  std::size_t inside = 0;
  for (const IndexTuple& t : a.ones()) {
    bool in = true;
    for (Index v : t)
      if (!in_large[static_cast<std::size_t>(v)]) {
        in = false;
        break;
      }
    if (in) ++inside;
  }
  rep.zeros_inside = detail::checked_pow(static_cast<Index>(rep.large.size()), r) - inside;
  rep.ones_outside = a.ones_count() - inside;
  return rep;
}

/// The extremal construction with e = k^r + l ones, -r-1 <= l <= r, k >= 2:
/// l = 0 is J_k^r; 1 <= l <= r adds ones at the first l slots of the list
/// (k+1,1,...,1), (1,k+1,1,...,1), ..., (1,...,1,k+1); -1 >= l >= -r-1 removes
/// the first |l| of (k,...,k), (k,k-1,k,...,k), ..., (k,...,k,k-1), (k-1,k,...,k).
/// non_unique flags l = 1, where any single added 1 gives the same radius.
struct ExtremalTensor {
  ZeroOneTensor tensor;
  bool non_unique = false;
};

inline ExtremalTensor build_extremal(int r, Index k, int l) {
  if (r < 2) throw std::invalid_argument("build_extremal needs r >= 2");
  if (k < 2) throw std::invalid_argument("build_extremal needs k >= 2");
  if (l < -r - 1 || l > r)
    throw std::invalid_argument("build_extremal needs -r-1 <= l <= r, got l = " + std::to_string(l));

  if (l >= 1) {
    std::vector<IndexTuple> ones = ZeroOneTensor::all_ones(k, r).ones();
    for (int m = 0; m < l; ++m) {
      IndexTuple t(static_cast<std::size_t>(r), 0);
      t[static_cast<std::size_t>(m)] = k;  // vertex k+1, 1-based
      ones.push_back(std::move(t));
    }
    return ExtremalTensor{ZeroOneTensor(r, k + 1, std::move(ones)), l == 1};
  }

  ZeroOneTensor cube = ZeroOneTensor::all_ones(k, r);
  if (l == 0) return ExtremalTensor{std::move(cube), false};

  std::vector<IndexTuple> removed;
  removed.emplace_back(static_cast<std::size_t>(r), k - 1);
  for (int m = 1; m < r; ++m) {
    IndexTuple t(static_cast<std::size_t>(r), k - 1);
    t[static_cast<std::size_t>(m)] = k - 2;
    removed.push_back(std::move(t));
  }
  {
    IndexTuple t(static_cast<std::size_t>(r), k - 1);
    t[0] = k - 2;
    removed.push_back(std::move(t));
  }
  removed.resize(static_cast<std::size_t>(-l));
  std::sort(removed.begin(), removed.end());
  std::vector<IndexTuple> ones;
  ones.reserve(cube.ones_count() - removed.size());
  for (const IndexTuple& t : cube.ones())
    if (!std::binary_search(removed.begin(), removed.end(), t)) ones.push_back(t);
  return ExtremalTensor{ZeroOneTensor(r, k, std::move(ones)), false};
}

}  // namespace tenspec

#endif  // TENSPEC_BOUNDS_HPP
