#ifndef TENSPEC_DIGRAPH_HPP
#define TENSPEC_DIGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tensor.hpp"

namespace tenspec {

/// Representation digraph of a nonnegative tensor: arc (i, j) iff some
/// positive entry a_{i i_2 ... i_r} has j among i_2, ..., i_r.
struct Digraph {
  Index n = 0;
  std::vector<std::vector<Index>> adj;  // sorted, unique
};

namespace detail {

inline void digraph_add_tuple(std::vector<std::vector<Index>>& adj, const IndexTuple& t) {
  auto& row = adj[static_cast<std::size_t>(t[0])];
  for (std::size_t m = 1; m < t.size(); ++m) row.push_back(t[m]);
}

inline void digraph_finish(Digraph& g) {
  for (auto& row : g.adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

}  // namespace detail

inline Digraph build_digraph(const ZeroOneTensor& a) {
  Digraph g{a.dim(), std::vector<std::vector<Index>>(static_cast<std::size_t>(a.dim()))};
  for (const IndexTuple& t : a.ones()) detail::digraph_add_tuple(g.adj, t);
  detail::digraph_finish(g);
  return g;
}

inline Digraph build_digraph(const DenseTensor& a) {
  Digraph g{a.dim(), std::vector<std::vector<Index>>(static_cast<std::size_t>(a.dim()))};
  if (a.dim() > 0) {
    IndexTuple t(static_cast<std::size_t>(a.order()), 0);
    do {
      if (a.at(t) > 0.0) detail::digraph_add_tuple(g.adj, t);
    } while (next_tuple(t, a.dim()));
  }
  detail::digraph_finish(g);
  return g;
}

/// Strongly connected components, Tarjan's algorithm (iterative).  Components
/// are emitted in reverse topological order of the condensation: every arc
/// leaving a component points into an earlier-emitted one.  Vertex lists are
/// sorted ascending.
inline std::vector<std::vector<Index>> strongly_connected_components(const Digraph& g) {
  const Index n = g.n;
  std::vector<Index> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Index> stack;
  std::vector<std::vector<Index>> comps;
  Index next_index = 0;

  struct Frame {
    Index v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (Index root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      const Index v = f.v;
      if (f.edge == 0) {
        index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = next_index++;
        stack.push_back(v);
        on_stack[static_cast<std::size_t>(v)] = true;
      }
      const auto& row = g.adj[static_cast<std::size_t>(v)];
      bool descended = false;
      while (f.edge < row.size()) {
        const Index w = row[f.edge++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<std::size_t>(w)])
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
      }
      if (descended) continue;
      if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
        std::vector<Index> comp;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) {
        Frame& parent = call.back();
        low[static_cast<std::size_t>(parent.v)] =
            std::min(low[static_cast<std::size_t>(parent.v)], low[static_cast<std::size_t>(v)]);
      }
    }
  }
  return comps;
}

/// True iff the representation digraph is strongly connected.
template <class Tensor>
bool is_weakly_irreducible(const Tensor& a) {
  if (a.dim() < 1) throw std::invalid_argument("is_weakly_irreducible needs dimension >= 1");
  if (a.dim() == 1) return true;
  return strongly_connected_components(build_digraph(a)).size() == 1;
}

namespace detail {

// Per-slice trailing-index bitmasks of the positive entries, deduplicated.
inline std::vector<std::vector<std::uint32_t>> slice_trail_masks(const ZeroOneTensor& a) {
  std::vector<std::vector<std::uint32_t>> m(static_cast<std::size_t>(a.dim()));
  for (const IndexTuple& t : a.ones()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 1; i < t.size(); ++i) mask |= 1u << t[i];
    m[static_cast<std::size_t>(t[0])].push_back(mask);
  }
  for (auto& row : m) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return m;
}

inline std::vector<std::vector<std::uint32_t>> slice_trail_masks(const DenseTensor& a) {
  std::vector<std::vector<std::uint32_t>> m(static_cast<std::size_t>(a.dim()));
  if (a.dim() > 0) {
    IndexTuple t(static_cast<std::size_t>(a.order()), 0);
    do {
      if (a.at(t) > 0.0) {
        std::uint32_t mask = 0;
        for (std::size_t i = 1; i < t.size(); ++i) mask |= 1u << t[i];
        m[static_cast<std::size_t>(t[0])].push_back(mask);
      }
    } while (next_tuple(t, a.dim()));
    for (auto& row : m) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }
  return m;
}

}  // namespace detail

/// Brute-force irreducibility test: true iff no nonempty proper subset I of
/// the vertices has a_{i_1...i_r} = 0 for every i_1 in I with i_2,...,i_r all
/// outside I.  Exponential in n; refuses beyond max_dim.
template <class Tensor>
bool is_irreducible(const Tensor& a, Index max_dim = 20) {
  const Index n = a.dim();
  if (n < 1) throw std::invalid_argument("is_irreducible needs dimension >= 1");
  if (n > max_dim)
    throw std::invalid_argument("is_irreducible: dimension " + std::to_string(n) +
                                " exceeds brute-force cap " + std::to_string(max_dim));
  if (n == 1) return true;
  const auto masks = detail::slice_trail_masks(a);
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (std::uint32_t I = 1; I < full; ++I) {
    bool killed = false;
    for (Index i = 0; i < n && !killed; ++i) {
      if (!((I >> i) & 1u)) continue;
      for (std::uint32_t tm : masks[static_cast<std::size_t>(i)])
        if ((tm & I) == 0) {
          killed = true;
          break;
        }
    }
    if (!killed) return false;  // I witnesses reducibility
  }
  return true;
}

/// Lower-triangular block form of a weakly reducible tensor.  blocks[s] lists
/// the original vertex ids of diagonal block s; perm[p] is the original vertex
/// at permuted position p (blocks concatenated in emission order); tensors[s]
/// is the principal sub-tensor on blocks[s], relabeled 0..|block|-1 in order.
template <class Tensor>
struct BlockDecomposition {
  std::vector<Index> perm;
  std::vector<std::vector<Index>> blocks;
  std::vector<Tensor> tensors;
};

inline ZeroOneTensor principal_subtensor(const ZeroOneTensor& a, const std::vector<Index>& verts) {
  std::vector<Index> old_to_new(static_cast<std::size_t>(a.dim()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i)
    old_to_new[static_cast<std::size_t>(verts[i])] = static_cast<Index>(i);
  std::vector<IndexTuple> ones;
  IndexTuple w(static_cast<std::size_t>(a.order()));
  for (const IndexTuple& t : a.ones()) {
    bool inside = true;
    for (int m = 0; m < a.order() && inside; ++m) {
      const Index v = old_to_new[static_cast<std::size_t>(t[static_cast<std::size_t>(m)])];
      if (v < 0)
        inside = false;
      else
        w[static_cast<std::size_t>(m)] = v;
    }
    if (inside) ones.push_back(w);
  }
  return ZeroOneTensor(a.order(), static_cast<Index>(verts.size()), std::move(ones));
}

inline DenseTensor principal_subtensor(const DenseTensor& a, const std::vector<Index>& verts) {
  const Index m = static_cast<Index>(verts.size());
  std::vector<double> e(detail::checked_pow(m, a.order()));
  if (m > 0) {
    IndexTuple t(static_cast<std::size_t>(a.order()), 0);
    IndexTuple u(static_cast<std::size_t>(a.order()));
    do {
      for (int i = 0; i < a.order(); ++i)
        u[static_cast<std::size_t>(i)] = verts[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      e[tuple_position(t, m)] = a.at(u);
    } while (next_tuple(t, m));
  }
  return DenseTensor(a.order(), m, std::move(e));
}

/// SCC condensation of the representation digraph.  Blocks are emitted in a
/// reverse topological order (arcs of block s only reach blocks t <= s), with
/// ties broken by smallest original vertex id, so the result is deterministic.
template <class Tensor>
BlockDecomposition<Tensor> block_decompose(const Tensor& a) {
  const Digraph g = build_digraph(a);
  const auto comps = strongly_connected_components(g);
  const std::size_t k = comps.size();
  std::vector<std::size_t> comp_of(static_cast<std::size_t>(g.n));
  for (std::size_t c = 0; c < k; ++c)
    for (Index v : comps[c]) comp_of[static_cast<std::size_t>(v)] = c;

  // Kahn's algorithm on the condensation, emitting a component only once all
  // of its arc targets are out, smallest-vertex component first.
  std::vector<std::vector<std::size_t>> preds(k);  // condensation arc c -> d stored as preds[d] += c
  std::vector<std::size_t> out_remaining(k, 0);
  for (Index v = 0; v < g.n; ++v)
    for (Index w : g.adj[static_cast<std::size_t>(v)]) {
      const std::size_t c = comp_of[static_cast<std::size_t>(v)];
      const std::size_t d = comp_of[static_cast<std::size_t>(w)];
      if (c != d) preds[d].push_back(c);
    }
  for (std::size_t d = 0; d < k; ++d) {
    auto& p = preds[d];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    for (std::size_t c : p) ++out_remaining[c];
  }

  BlockDecomposition<Tensor> dec;
  std::vector<bool> emitted(k, false);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t c = 0; c < k; ++c) {
      if (emitted[c] || out_remaining[c] != 0) continue;
      if (pick == k || comps[c][0] < comps[pick][0]) pick = c;
    }
    emitted[pick] = true;
    for (std::size_t c : preds[pick]) --out_remaining[c];
    dec.blocks.push_back(comps[pick]);
    dec.tensors.push_back(principal_subtensor(a, comps[pick]));
    for (Index v : comps[pick]) dec.perm.push_back(v);
  }
  return dec;
}

}  // namespace tenspec

#endif  // TENSPEC_DIGRAPH_HPP
