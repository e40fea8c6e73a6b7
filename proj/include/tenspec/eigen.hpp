#ifndef TENSPEC_EIGEN_HPP
#define TENSPEC_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "digraph.hpp"
#include "tensor.hpp"

namespace tenspec {

struct SolverOptions {
  double tolerance = 1e-10;
  long long max_iterations = 1000000;
  double shift = 1.0;
};

/// Result of a spectral-radius computation.  x has r-norm 1; residual is the
/// max-norm of apply(A,x) - lambda * x^{[r-1]} on the solved (winning) block.
struct EigenResult {
  double lambda = 0.0;
  std::vector<double> x;
  double residual = 0.0;
  long long iterations = 0;
  bool converged = false;
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double r_norm(const std::vector<double>& x, int r) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), r);
  return std::pow(s, 1.0 / r);
}

namespace detail {

inline void check_solver_options(const SolverOptions& o) {
  if (!(o.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (o.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(o.shift >= 0.0)) throw std::invalid_argument("shift must be >= 0");
}

inline void check_x_arg(Index dim, const std::vector<double>& x) {
  check_vector_arg(dim, x.size());
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("vector must be nonnegative and finite");
    sum += v;
  }
  if (sum == 0.0) throw std::invalid_argument("vector must be nonzero");
}

template <class Tensor>
double residual_norm(const Tensor& a, const std::vector<double>& x, double lambda) {
  const std::vector<double> y = tenspec::apply(a, x);
  const int r = a.order();
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    res = std::max(res, std::abs(y[i] - lambda * std::pow(x[i], r - 1)));
  return res;
}

// Shifted power iteration after Ng, Qi and Zhou.  pre: weakly irreducible,
// n >= 1.  The iterate ratios of B = A + shift * I give a certified enclosure
// [lambda_min, lambda_max] of rho(B) at every step.
template <class Tensor>
EigenResult power_iterate(const Tensor& a, const SolverOptions& opts) {
  const Index n = a.dim();
  const int r = a.order();
  EigenResult out;
  std::vector<double> x(static_cast<std::size_t>(n), std::pow(static_cast<double>(n), -1.0 / r));
  double lam_mid = 0.0;
  while (out.iterations < opts.max_iterations) {
    std::vector<double> y = tenspec::apply(a, x);
    double lam_min = std::numeric_limits<double>::infinity();
    double lam_max = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double xp = std::pow(x[i], r - 1);
      y[i] += opts.shift * xp;
      const double ratio = y[i] / std::max(xp, 1e-300);
      lam_min = std::min(lam_min, ratio);
      lam_max = std::max(lam_max, ratio);
    }
    ++out.iterations;
    lam_mid = 0.5 * (lam_min + lam_max);
    if (lam_max - lam_min <= opts.tolerance) {
      out.converged = true;
      break;
    }
    double norm_sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = std::pow(y[i], 1.0 / (r - 1));
      norm_sum += std::pow(y[i], r);
    }
    const double norm = std::pow(norm_sum, 1.0 / r);
    for (double& v : y) v /= norm;
    x = std::move(y);
  }
  out.lambda = std::max(lam_mid - opts.shift, 0.0);
  out.x = std::move(x);
  out.residual = residual_norm(a, out.x, out.lambda);
  return out;
}

}  // namespace detail

/// Spectral radius of a nonnegative tensor.  Weakly irreducible input runs the
/// shifted power iteration directly; otherwise the tensor is block-decomposed
/// and the maximum over diagonal blocks is returned, with the eigenvector
/// assembled on the winning block's vertices and zeros elsewhere.
template <class Tensor>
EigenResult spectral_radius(const Tensor& a, const SolverOptions& opts = {}) {
  detail::check_solver_options(opts);
  if (a.dim() == 0) return EigenResult{0.0, {}, 0.0, 0, true};
  if (is_weakly_irreducible(a)) return detail::power_iterate(a, opts);

  const BlockDecomposition<Tensor> dec = block_decompose(a);
  EigenResult out;
  out.converged = true;
  std::size_t winner = 0;
  EigenResult win;
  win.lambda = -1.0;
  for (std::size_t s = 0; s < dec.tensors.size(); ++s) {
    EigenResult sub = spectral_radius(dec.tensors[s], opts);
    out.iterations += sub.iterations;
    out.converged = out.converged && sub.converged;
    if (sub.lambda > win.lambda) {
      win = std::move(sub);
      winner = s;
    }
  }
  out.lambda = win.lambda;
  out.residual = win.residual;
  out.x.assign(static_cast<std::size_t>(a.dim()), 0.0);
  const std::vector<Index>& verts = dec.blocks[winner];
  for (std::size_t i = 0; i < verts.size(); ++i)
    out.x[static_cast<std::size_t>(verts[i])] = win.x[i];
  return out;
}

/// True iff apply(A,x)_i >= lambda * x_i^{r-1} - slack for every i.  By the
/// nonnegative eigenvalue comparison lemma this certifies rho(A) >= lambda
/// (for slack = 0 and x >= 0, x != 0).
template <class Tensor>
bool certify_lower_bound(const Tensor& a, const std::vector<double>& x, double lambda,
                         double slack = 0.0) {
  detail::check_x_arg(a.dim(), x);
  const std::vector<double> y = tenspec::apply(a, x);
  const int r = a.order();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] < lambda * std::pow(x[i], r - 1) - slack) return false;
  return true;
}

namespace detail {

inline bool slice_confined(const ZeroOneTensor& a, Index j, const std::vector<bool>& in_set) {
  for (const IndexTuple& t : a.ones()) {
    if (t[0] != j) continue;
    for (std::size_t m = 1; m < t.size(); ++m)
      if (!in_set[static_cast<std::size_t>(t[m])]) return false;
  }
  return true;
}

inline bool slice_confined(const DenseTensor& a, Index j, const std::vector<bool>& in_set) {
  IndexTuple trail(static_cast<std::size_t>(a.order() - 1), 0);
  IndexTuple t(static_cast<std::size_t>(a.order()));
  t[0] = j;
  do {
    std::copy(trail.begin(), trail.end(), t.begin() + 1);
    if (a.at(t) > 0.0) {
      for (std::size_t m = 1; m < t.size(); ++m)
        if (!in_set[static_cast<std::size_t>(t[m])]) return false;
    }
  } while (next_tuple(trail, a.dim()));
  return true;
}

}  // namespace detail

/// Turns a nonnegative certificate vector with zeros into a strictly positive
/// one still certifying lambda, for weakly irreducible A.  Walks the vanishing
/// set down the ladder J_0 superset J_1 superset ... (J_i keeps the vertices
/// whose slices stay confined to J_{i-1}), which empties after s steps, and
/// assigns level i the value eps / log^{a_i}(1/eps) with
/// a_i = sum_{j<=i} (r-1)^{s-j}.  eps = 0 picks the largest value from
/// {1e-2, 1e-3, ...} whose output still passes certify_lower_bound.
template <class Tensor>
std::vector<double> positivize_certificate(const Tensor& a, const std::vector<double>& x,
                                           double lambda, double eps = 0.0) {
  if (eps == 0.0) {
    for (double e = 1e-2; e >= 1e-12; e *= 1e-1) {
      try {
        return positivize_certificate(a, x, lambda, e);
      } catch (const CertificateError&) {
      }
    }
    throw CertificateError("positivize_certificate: no epsilon in the retry ladder works");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("positivize_certificate needs lambda > 0");
  if (!(eps > 0.0 && eps < 0.3678)) throw std::invalid_argument("epsilon must lie in (0, 1/e)");
  if (!is_weakly_irreducible(a))
    throw std::invalid_argument("positivize_certificate needs a weakly irreducible tensor");
  if (!certify_lower_bound(a, x, lambda))
    throw std::invalid_argument("positivize_certificate: (x, lambda) is not a certificate");

  const Index n = a.dim();
  const int r = a.order();
  std::vector<bool> in_j(static_cast<std::size_t>(n));
  std::size_t j_size = 0;
  for (Index v = 0; v < n; ++v) {
    in_j[static_cast<std::size_t>(v)] = (x[static_cast<std::size_t>(v)] == 0.0);
    if (in_j[static_cast<std::size_t>(v)]) ++j_size;
  }
  if (j_size == 0) return x;

  // level[v] = i means v lies in J_{i-1} \ J_i.
  std::vector<int> level(static_cast<std::size_t>(n), 0);
  int s = 0;
  while (j_size > 0) {
    ++s;
    std::vector<bool> next = in_j;
    std::size_t next_size = 0;
    for (Index v = 0; v < n; ++v) {
      if (!in_j[static_cast<std::size_t>(v)]) continue;
      if (detail::slice_confined(a, v, in_j)) {
        ++next_size;
      } else {
        next[static_cast<std::size_t>(v)] = false;
        level[static_cast<std::size_t>(v)] = s;
      }
    }
    if (next_size == j_size)
      throw std::logic_error("vanishing-set ladder stalled on a weakly irreducible tensor");
    in_j = std::move(next);
    j_size = next_size;
  }

  const double loglog = std::log(std::log(1.0 / eps));
  std::vector<double> y = x;
  for (Index v = 0; v < n; ++v) {
    const int i = level[static_cast<std::size_t>(v)];
    if (i == 0) continue;
    double a_i = 0.0;
    for (int j = 1; j <= i; ++j) a_i += std::pow(static_cast<double>(r - 1), s - j);
    const double log_eps_i = std::log(eps) - a_i * loglog;
    y[static_cast<std::size_t>(v)] = std::exp(std::max(log_eps_i, -700.0));
  }
  if (!certify_lower_bound(a, y, lambda))
    throw CertificateError("positivize_certificate: epsilon too large, certificate lost");
  return y;
}

/// e/n, the uniform-vector lower bound on the symmetric maximum lambda-bar.
inline double lambda_bar_lower(const ZeroOneTensor& a) {
  if (a.dim() == 0) throw std::invalid_argument("lambda_bar_lower needs dimension >= 1");
  return static_cast<double>(a.ones_count()) / static_cast<double>(a.dim());
}

/// For symmetric A, lambda-bar equals the spectral radius; errors otherwise.
template <class Tensor>
EigenResult lambda_bar_symmetric(const Tensor& a, const SolverOptions& opts = {}) {
  if (!is_symmetric(a)) throw std::invalid_argument("lambda_bar_symmetric needs a symmetric tensor");
  return spectral_radius(a, opts);
}

}  // namespace tenspec

#endif  // TENSPEC_EIGEN_HPP
