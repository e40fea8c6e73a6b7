#ifndef TENSPEC_TENSOR_HPP
#define TENSPEC_TENSOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenspec {

/// Vertex id, 0-based internally.  All file formats, CLI output and error
/// messages are 1-based; the shift happens at the I/O boundary only.
using Index = int;

/// One multi-index (i_1, ..., i_r), 0-based entries.
using IndexTuple = std::vector<Index>;

/// Ones-per-slice counts c_1, ..., c_n.
using SliceCountVector = std::vector<std::size_t>;

namespace detail {

inline void check_order_dim(int order, Index dim) {
  if (order < 2) throw std::invalid_argument("tensor order must be >= 2, got " + std::to_string(order));
  if (dim < 0) throw std::invalid_argument("tensor dimension must be >= 0, got " + std::to_string(dim));
}

inline std::size_t checked_pow(Index base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    std::size_t next = v * static_cast<std::size_t>(base);
    if (base != 0 && next / static_cast<std::size_t>(base) != v)
      throw std::overflow_error("n^r overflows size_t");
    v = next;
  }
  return v;
}

inline std::string tuple_to_string(const IndexTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i] + 1);
  }
  return s + ")";
}

}  // namespace detail

/// Dictionary-order (row-major lexicographic) rank of a tuple in [0,n)^len.
inline std::size_t tuple_position(const IndexTuple& t, Index n) {
  std::size_t pos = 0;
  for (Index v : t) pos = pos * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return pos;
}

/// Inverse of tuple_position.
inline IndexTuple tuple_at(std::size_t pos, int len, Index n) {
  IndexTuple t(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Index>(pos % static_cast<std::size_t>(n));
    pos /= static_cast<std::size_t>(n);
  }
  return t;
}

/// Odometer step through [0,n)^len in dictionary order; false after the last tuple.
inline bool next_tuple(IndexTuple& t, Index n) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

/// Sparse {0,1} tensor of order r and dimension n: the strictly sorted list of
/// index tuples holding a 1.  Immutable once constructed.
class ZeroOneTensor {
 public:
  ZeroOneTensor(int order, Index dim, std::vector<IndexTuple> ones)
      : order_(order), dim_(dim), ones_(std::move(ones)) {
    detail::check_order_dim(order_, dim_);
    for (const IndexTuple& t : ones_) {
      if (static_cast<int>(t.size()) != order_)
        throw std::invalid_argument("tuple arity " + std::to_string(t.size()) +
                                    " does not match tensor order " + std::to_string(order_));
      for (Index v : t)
        if (v < 0 || v >= dim_)
          throw std::invalid_argument("index out of range in tuple " + detail::tuple_to_string(t) +
                                      " for dimension " + std::to_string(dim_));
    }
    std::sort(ones_.begin(), ones_.end());
    if (std::adjacent_find(ones_.begin(), ones_.end()) != ones_.end())
      throw std::invalid_argument("duplicate index tuple in ones list");
  }

  static ZeroOneTensor zeros(int order, Index dim) { return ZeroOneTensor(order, dim, {}); }

  /// J_k^r: every entry of the k x ... x k cube is 1.
  static ZeroOneTensor all_ones(Index k, int order) {
    detail::check_order_dim(order, k);
    std::vector<IndexTuple> ones;
    if (k > 0) {
      ones.reserve(detail::checked_pow(k, order));
      IndexTuple t(static_cast<std::size_t>(order), 0);
      do ones.push_back(t);
      while (next_tuple(t, k));
    }
    return ZeroOneTensor(order, k, std::move(ones));
  }

  /// F*-form tensor of a count vector: slice i carries ones at its first c_i
  /// trailing tuples in dictionary order.
  static ZeroOneTensor from_counts(const SliceCountVector& counts, int order) {
    const Index n = static_cast<Index>(counts.size());
    detail::check_order_dim(order, n);
    const std::size_t cap = detail::checked_pow(n, order - 1);
    std::vector<IndexTuple> ones;
    for (Index i = 0; i < n; ++i) {
      const std::size_t c = counts[static_cast<std::size_t>(i)];
      if (c > cap)
        throw std::invalid_argument("slice count " + std::to_string(c) + " exceeds n^(r-1) = " +
                                    std::to_string(cap));
      IndexTuple trail(static_cast<std::size_t>(order - 1), 0);
      for (std::size_t j = 0; j < c; ++j) {
        IndexTuple t;
        t.reserve(static_cast<std::size_t>(order));
        t.push_back(i);
        t.insert(t.end(), trail.begin(), trail.end());
        ones.push_back(std::move(t));
        next_tuple(trail, n);
      }
    }
    return ZeroOneTensor(order, n, std::move(ones));
  }

  int order() const { return order_; }
  Index dim() const { return dim_; }
  const std::vector<IndexTuple>& ones() const& { return ones_; }
  // rvalue callers get the list by value so iterating over a temporary is safe
  std::vector<IndexTuple> ones() && { return std::move(ones_); }
  std::vector<IndexTuple> ones() const&& { return ones_; }
  std::size_t ones_count() const { return ones_.size(); }

  bool has_one(const IndexTuple& t) const {
    return std::binary_search(ones_.begin(), ones_.end(), t);
  }

  SliceCountVector slice_counts() const {
    SliceCountVector c(static_cast<std::size_t>(dim_), 0);
    for (const IndexTuple& t : ones_) ++c[static_cast<std::size_t>(t[0])];
    return c;
  }

  bool operator==(const ZeroOneTensor& other) const {
    return order_ == other.order_ && dim_ == other.dim_ && ones_ == other.ones_;
  }
  bool operator!=(const ZeroOneTensor& other) const { return !(*this == other); }

 private:
  int order_;
  Index dim_;
  std::vector<IndexTuple> ones_;
};

/// Dense nonnegative tensor: n^r entries stored in dictionary order.
class DenseTensor {
 public:
  DenseTensor(int order, Index dim, std::vector<double> entries)
      : order_(order), dim_(dim), entries_(std::move(entries)) {
    detail::check_order_dim(order_, dim_);
    const std::size_t want = detail::checked_pow(dim_, order_);
    if (entries_.size() != want)
      throw std::invalid_argument("dense tensor needs " + std::to_string(want) + " entries, got " +
                                  std::to_string(entries_.size()));
    for (double v : entries_)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("dense tensor entries must be finite and nonnegative");
  }

  static DenseTensor zeros(int order, Index dim) {
    return DenseTensor(order, dim, std::vector<double>(detail::checked_pow(dim, order), 0.0));
  }

  static DenseTensor from_zero_one(const ZeroOneTensor& a) {
    std::vector<double> e(detail::checked_pow(a.dim(), a.order()), 0.0);
    for (const IndexTuple& t : a.ones()) e[tuple_position(t, a.dim())] = 1.0;
    return DenseTensor(a.order(), a.dim(), std::move(e));
  }

  int order() const { return order_; }
  Index dim() const { return dim_; }
  const std::vector<double>& entries() const& { return entries_; }
  std::vector<double> entries() && { return std::move(entries_); }
  std::vector<double> entries() const&& { return entries_; }
  double at(std::size_t pos) const { return entries_[pos]; }
  double at(const IndexTuple& t) const { return entries_[tuple_position(t, dim_)]; }

  bool operator==(const DenseTensor& other) const {
    return order_ == other.order_ && dim_ == other.dim_ && entries_ == other.entries_;
  }

 private:
  int order_;
  Index dim_;
  std::vector<double> entries_;
};

namespace detail {

inline void check_vector_arg(Index dim, std::size_t got) {
  if (static_cast<std::size_t>(dim) != got)
    throw std::invalid_argument("vector length " + std::to_string(got) +
                                " does not match tensor dimension " + std::to_string(dim));
}

inline std::vector<Index> inverse_permutation(const std::vector<Index>& p, const char* what) {
  std::vector<Index> inv(p.size(), -1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Index v = p[i];
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || inv[static_cast<std::size_t>(v)] != -1)
      throw std::invalid_argument(std::string(what) + " is not a permutation");
    inv[static_cast<std::size_t>(v)] = static_cast<Index>(i);
  }
  return inv;
}

}  // namespace detail

/// (A x^{r-1})_i = sum over i_2..i_r of a_{i i_2 ... i_r} x_{i_2} ... x_{i_r}.
inline std::vector<double> apply(const ZeroOneTensor& a, const std::vector<double>& x) {
  detail::check_vector_arg(a.dim(), x.size());
  std::vector<double> y(x.size(), 0.0);
  for (const IndexTuple& t : a.ones()) {
    double p = 1.0;
    for (int m = 1; m < a.order(); ++m) p *= x[static_cast<std::size_t>(t[static_cast<std::size_t>(m)])];
    y[static_cast<std::size_t>(t[0])] += p;
  }
  return y;
}

inline std::vector<double> apply(const DenseTensor& a, const std::vector<double>& x) {
  detail::check_vector_arg(a.dim(), x.size());
  const Index n = a.dim();
  std::vector<double> y(x.size(), 0.0);
  if (n == 0) return y;
  const std::size_t slice = detail::checked_pow(n, a.order() - 1);
  IndexTuple trail(static_cast<std::size_t>(a.order() - 1), 0);
  std::vector<double> prod(slice);
  std::size_t pos = 0;
  do {
    double p = 1.0;
    for (Index v : trail) p *= x[static_cast<std::size_t>(v)];
    prod[pos++] = p;
  } while (next_tuple(trail, n));
  for (Index i = 0; i < n; ++i) {
    const double* row = a.entries().data() + static_cast<std::size_t>(i) * slice;
    double s = 0.0;
    for (std::size_t j = 0; j < slice; ++j) s += row[j] * prod[j];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

/// Homogeneous form p_A(x) = sum over all tuples of a_{i_1...i_r} x_{i_1} ... x_{i_r}.
template <class Tensor>
double poly_eval(const Tensor& a, const std::vector<double>& x) {
  const std::vector<double> y = tenspec::apply(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

/// A^tau with entries a^tau_{i_1...i_r} = a_{i_{tau(1)}...i_{tau(r)}};
/// tau is a 0-based permutation of the r index positions.
inline ZeroOneTensor transpose(const ZeroOneTensor& a, const std::vector<Index>& tau) {
  if (static_cast<int>(tau.size()) != a.order())
    throw std::invalid_argument("transpose permutation arity mismatch");
  detail::inverse_permutation(tau, "index permutation");
  std::vector<IndexTuple> ones;
  ones.reserve(a.ones_count());
  IndexTuple w(static_cast<std::size_t>(a.order()));
  for (const IndexTuple& s : a.ones()) {
    for (int m = 0; m < a.order(); ++m)
      w[static_cast<std::size_t>(tau[static_cast<std::size_t>(m)])] = s[static_cast<std::size_t>(m)];
    ones.push_back(w);
  }
  return ZeroOneTensor(a.order(), a.dim(), std::move(ones));
}

inline DenseTensor transpose(const DenseTensor& a, const std::vector<Index>& tau) {
  if (static_cast<int>(tau.size()) != a.order())
    throw std::invalid_argument("transpose permutation arity mismatch");
  detail::inverse_permutation(tau, "index permutation");
  if (a.dim() == 0) return a;
  std::vector<double> e(a.entries().size());
  IndexTuple t(static_cast<std::size_t>(a.order()), 0);
  IndexTuple u(static_cast<std::size_t>(a.order()));
  do {
    for (int m = 0; m < a.order(); ++m)
      u[static_cast<std::size_t>(m)] = t[static_cast<std::size_t>(tau[static_cast<std::size_t>(m)])];
    e[tuple_position(t, a.dim())] = a.at(u);
  } while (next_tuple(t, a.dim()));
  return DenseTensor(a.order(), a.dim(), std::move(e));
}

/// phi(A) with entries a_{phi(i_1)...phi(i_r)}; phi is a 0-based vertex relabeling.
inline ZeroOneTensor permute_vertices(const ZeroOneTensor& a, const std::vector<Index>& phi) {
  detail::check_vector_arg(a.dim(), phi.size());
  const std::vector<Index> inv = detail::inverse_permutation(phi, "vertex permutation");
  std::vector<IndexTuple> ones;
  ones.reserve(a.ones_count());
  IndexTuple w(static_cast<std::size_t>(a.order()));
  for (const IndexTuple& s : a.ones()) {
    for (int m = 0; m < a.order(); ++m)
      w[static_cast<std::size_t>(m)] = inv[static_cast<std::size_t>(s[static_cast<std::size_t>(m)])];
    ones.push_back(w);
  }
  return ZeroOneTensor(a.order(), a.dim(), std::move(ones));
}

inline DenseTensor permute_vertices(const DenseTensor& a, const std::vector<Index>& phi) {
  detail::check_vector_arg(a.dim(), phi.size());
  detail::inverse_permutation(phi, "vertex permutation");
  if (a.dim() == 0) return a;
  std::vector<double> e(a.entries().size());
  IndexTuple t(static_cast<std::size_t>(a.order()), 0);
  IndexTuple u(static_cast<std::size_t>(a.order()));
  do {
    for (int m = 0; m < a.order(); ++m)
      u[static_cast<std::size_t>(m)] = phi[static_cast<std::size_t>(t[static_cast<std::size_t>(m)])];
    e[tuple_position(t, a.dim())] = a.at(u);
  } while (next_tuple(t, a.dim()));
  return DenseTensor(a.order(), a.dim(), std::move(e));
}

/// Drops vertices that appear in no 1-entry, compacting ids and preserving
/// their relative order.  kept, if given, receives the surviving original ids.
inline ZeroOneTensor remove_isolated(const ZeroOneTensor& a, std::vector<Index>* kept = nullptr) {
  std::vector<bool> used(static_cast<std::size_t>(a.dim()), false);
  for (const IndexTuple& t : a.ones())
    for (Index v : t) used[static_cast<std::size_t>(v)] = true;
  std::vector<Index> old_to_new(static_cast<std::size_t>(a.dim()), -1);
  std::vector<Index> keep;
  for (Index v = 0; v < a.dim(); ++v)
    if (used[static_cast<std::size_t>(v)]) {
      old_to_new[static_cast<std::size_t>(v)] = static_cast<Index>(keep.size());
      keep.push_back(v);
    }
  std::vector<IndexTuple> ones;
  ones.reserve(a.ones_count());
  IndexTuple w(static_cast<std::size_t>(a.order()));
  for (const IndexTuple& t : a.ones()) {
    for (int m = 0; m < a.order(); ++m)
      w[static_cast<std::size_t>(m)] = old_to_new[static_cast<std::size_t>(t[static_cast<std::size_t>(m)])];
    ones.push_back(w);
  }
  if (kept) *kept = keep;
  return ZeroOneTensor(a.order(), static_cast<Index>(keep.size()), std::move(ones));
}

/// True iff every entry is invariant under all permutations of its indices.
inline bool is_symmetric(const ZeroOneTensor& a) {
  for (IndexTuple t : a.ones()) {
    std::sort(t.begin(), t.end());
    do {
      if (!a.has_one(t)) return false;
    } while (std::next_permutation(t.begin(), t.end()));
  }
  return true;
}

inline bool is_symmetric(const DenseTensor& a) {
  if (a.dim() == 0) return true;
  IndexTuple t(static_cast<std::size_t>(a.order()), 0);
  do {
    IndexTuple s = t;
    std::sort(s.begin(), s.end());
    if (a.at(t) != a.at(s)) return false;
  } while (next_tuple(t, a.dim()));
  return true;
}

}  // namespace tenspec

#endif  // TENSPEC_TENSOR_HPP
