#ifndef TENSPEC_TESTS_ORACLES_HPP
#define TENSPEC_TESTS_ORACLES_HPP

// Independent reference computations for the test suite. Nothing here calls
// the solver under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "tenspec/tensor.hpp"

namespace oracles {

/// Maximize fn(x1, x2) over x1^r + x2^r = 1, x >= 0, by a dense grid over the
/// constraint curve followed by local ternary refinement.
inline double sphere_max_2d(const std::function<double(double, double)>& fn, int r) {
  const auto value = [&](double t) {
    const double x2 = std::pow(t, 1.0 / r);
    const double x1 = std::pow(1.0 - t, 1.0 / r);
    return fn(x1, x2);
  };
  double best_t = 0.0, best = value(0.0);
  const int grid = 200000;
  for (int i = 1; i <= grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    const double v = value(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - 2.0 / grid), hi = std::min(1.0, best_t + 2.0 / grid);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (value(m1) < value(m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(best, value(0.5 * (lo + hi)));
}

/// Classical matrix power iteration (r = 2 cross-check), on A + I to dodge
/// cycling; returns the Perron root of the nonnegative matrix `a` (row-major).
inline double matrix_power_radius(const std::vector<double>& a, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  double lambda = 0.0;
  for (int it = 0; it < 200000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];  // + I
      for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
      y[i] = s;
    }
    double norm = 0.0;
    for (double v : y) norm += v;
    for (std::size_t i = 0; i < n; ++i) y[i] /= norm;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] < 1e-280) continue;
      const double ratio = y[i] / x[i] * norm;  // unnormalized ratio
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    x = y;
    lambda = 0.5 * (lo + hi);
    if (hi - lo < 1e-12) break;
  }
  return lambda - 1.0;
}

/// Random support of e distinct positions in [0, n^r).
inline tenspec::ZeroOneTensor random_zero_one(std::mt19937& rng, int r, tenspec::Index n,
                                              std::size_t e) {
  const std::size_t cells = [&] {
    std::size_t c = 1;
    for (int i = 0; i < r; ++i) c *= static_cast<std::size_t>(n);
    return c;
  }();
  std::vector<std::size_t> pos(cells);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::shuffle(pos.begin(), pos.end(), rng);
  std::vector<tenspec::IndexTuple> ones;
  for (std::size_t i = 0; i < e && i < cells; ++i)
    ones.push_back(tenspec::tuple_at(pos[i], r, n));
  return tenspec::ZeroOneTensor(r, n, std::move(ones));
}

/// Random tensor guaranteed weakly irreducible: a full cycle through the
/// vertices plus `extra` random ones.
inline tenspec::ZeroOneTensor random_weakly_irreducible(std::mt19937& rng, int r,
                                                        tenspec::Index n, std::size_t extra) {
  std::vector<tenspec::IndexTuple> ones;
  for (tenspec::Index i = 0; i < n; ++i) {
    tenspec::IndexTuple t(static_cast<std::size_t>(r), (i + 1) % n);
    t[0] = i;
    ones.push_back(std::move(t));
  }
  std::size_t cells = 1;
  for (int i = 0; i < r; ++i) cells *= static_cast<std::size_t>(n);
  extra = std::min(extra, cells - ones.size());
  std::uniform_int_distribution<tenspec::Index> vdist(0, n - 1);
  while (extra > 0) {
    tenspec::IndexTuple t(static_cast<std::size_t>(r));
    for (auto& v : t) v = vdist(rng);
    bool fresh = true;
    for (const auto& o : ones)
      if (o == t) {
        fresh = false;
        break;
      }
    if (fresh) {
      ones.push_back(std::move(t));
      --extra;
    }
  }
  return tenspec::ZeroOneTensor(r, n, std::move(ones));
}

}  // namespace oracles

#endif  // TENSPEC_TESTS_ORACLES_HPP
