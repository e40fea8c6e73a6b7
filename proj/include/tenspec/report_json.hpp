#ifndef TENSPEC_REPORT_JSON_HPP
#define TENSPEC_REPORT_JSON_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "digraph.hpp"
#include "eigen.hpp"
#include "search.hpp"
#include "tensor.hpp"

namespace tenspec {

/// Shortest-round-trip doubles are already emitted by the JSON library; this
/// fixed 17-significant-digit form is carried alongside for consumers that
/// parse decimals with their own readers.
inline std::string dec_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json tensor_json(const ZeroOneTensor& a) {
  nlohmann::json ones = nlohmann::json::array();
  for (const IndexTuple& t : a.ones()) {
    nlohmann::json row = nlohmann::json::array();
    for (Index v : t) row.push_back(v + 1);
    ones.push_back(std::move(row));
  }
  return {{"kind", "sparse01"},
          {"order", a.order()},
          {"dim", a.dim()},
          {"ones_count", a.ones_count()},
          {"ones", std::move(ones)}};
}

inline nlohmann::json eigen_json(const EigenResult& r) {
  return {{"lambda", r.lambda},
          {"lambda_dec", dec_string(r.lambda)},
          {"x", r.x},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

inline nlohmann::json stability_json(const StabilityReport& s) {
  nlohmann::json large = nlohmann::json::array();
  for (Index i : s.large) large.push_back(i + 1);
  return {{"k", s.k},
          {"l", s.l},
          {"epsilon", s.epsilon},
          {"c1", s.c1},
          {"c2", s.c2},
          {"rho", s.rho},
          {"rho_dec", dec_string(s.rho)},
          {"threshold", s.threshold},
          {"slack", s.slack},
          {"large_set", std::move(large)},
          {"large_dim", s.large.size()},
          {"zeros_inside", s.zeros_inside},
          {"ones_outside", s.ones_outside},
          {"xr_sorted", s.xr_sorted}};
}

inline nlohmann::json search_json(const SearchReport& r) {
  nlohmann::json maxims = nlohmann::json::array();
  for (const ZeroOneTensor& m : r.maximizers) maxims.push_back(tensor_json(m));
  return {{"r", r.r},
          {"e", r.e},
          {"n_range", r.n_range},
          {"mode", r.mode},
          {"best_lambda", r.best_lambda},
          {"best_lambda_dec", dec_string(r.best_lambda)},
          {"theoretical_upper", r.theoretical_upper},
          {"structure_match", to_string(r.structure_match)},
          {"candidates", r.candidates},
          {"maximizers", std::move(maxims)},
          {"warnings", r.warnings}};
}

inline nlohmann::json decomposition_json(const BlockDecomposition<ZeroOneTensor>& d) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const std::vector<Index>& b : d.blocks) {
    nlohmann::json verts = nlohmann::json::array();
    for (Index v : b) verts.push_back(v + 1);
    blocks.push_back(std::move(verts));
  }
  nlohmann::json perm = nlohmann::json::array();
  for (Index v : d.perm) perm.push_back(v + 1);
  return {{"perm", std::move(perm)}, {"blocks", std::move(blocks)}};
}

}  // namespace tenspec

#endif  // TENSPEC_REPORT_JSON_HPP
