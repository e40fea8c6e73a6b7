#ifndef TENSPEC_IO_HPP
#define TENSPEC_IO_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tensor.hpp"

namespace tenspec {

/// A parsed .tns file: either a sparse {0,1} tensor or a dense one.
using TnsTensor = std::variant<ZeroOneTensor, DenseTensor>;

struct TnsFormatError : std::runtime_error {
  explicit TnsFormatError(const std::string& msg) : std::runtime_error(".tns: " + msg) {}
};

namespace detail {

// Strips '#' comments and splits the stream into whitespace-separated tokens.
inline std::vector<std::string> tns_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

inline long long tns_int(const std::string& tok, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw TnsFormatError(std::string("expected integer for ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size())
    throw TnsFormatError(std::string("expected integer for ") + what + ", got '" + tok + "'");
  return v;
}

inline double tns_real(const std::string& tok) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw TnsFormatError("expected real entry, got '" + tok + "'");
  }
  if (used != tok.size()) throw TnsFormatError("expected real entry, got '" + tok + "'");
  return v;
}

}  // namespace detail

/// Reads a tensor from `.tns` text: header "r n kind" with kind in
/// {sparse01, dense}, then for sparse01 one 1-based r-tuple per 1-entry in
/// strict dictionary order, or for dense all n^r entries in dictionary order.
inline TnsTensor read_tns(std::istream& in) {
  const std::vector<std::string> tok = detail::tns_tokens(in);
  if (tok.size() < 3) throw TnsFormatError("missing header 'r n kind'");
  const long long r = detail::tns_int(tok[0], "order r");
  const long long n = detail::tns_int(tok[1], "dimension n");
  const std::string& kind = tok[2];
  if (r < 2) throw TnsFormatError("order r must be >= 2");
  if (n < 0) throw TnsFormatError("dimension n must be >= 0");
  std::size_t p = 3;
  if (kind == "sparse01") {
    if ((tok.size() - p) % static_cast<std::size_t>(r) != 0)
      throw TnsFormatError("sparse01 body is not a whole number of " + std::to_string(r) + "-tuples");
    std::vector<IndexTuple> ones;
    IndexTuple prev;
    while (p < tok.size()) {
      IndexTuple t(static_cast<std::size_t>(r));
      for (long long m = 0; m < r; ++m) {
        const long long v = detail::tns_int(tok[p++], "index");
        if (v < 1 || v > n)
          throw TnsFormatError("index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
        t[static_cast<std::size_t>(m)] = static_cast<Index>(v - 1);
      }
      if (!prev.empty() && !(prev < t))
        throw TnsFormatError("tuples must be in strict dictionary order; " +
                             detail::tuple_to_string(t) + " follows " + detail::tuple_to_string(prev));
      prev = t;
      ones.push_back(std::move(t));
    }
    return ZeroOneTensor(static_cast<int>(r), static_cast<Index>(n), std::move(ones));
  }
  if (kind == "dense") {
    const std::size_t want = detail::checked_pow(static_cast<Index>(n), static_cast<int>(r));
    if (tok.size() - p != want)
      throw TnsFormatError("dense body needs " + std::to_string(want) + " entries, got " +
                           std::to_string(tok.size() - p));
    std::vector<double> e;
    e.reserve(want);
    while (p < tok.size()) {
      const double v = detail::tns_real(tok[p++]);
      if (!(v >= 0.0)) throw TnsFormatError("dense entries must be nonnegative");
      e.push_back(v);
    }
    return DenseTensor(static_cast<int>(r), static_cast<Index>(n), std::move(e));
  }
  throw TnsFormatError("unknown kind '" + kind + "' (expected sparse01 or dense)");
}

inline TnsTensor read_tns_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TnsFormatError("cannot open '" + path + "'");
  return read_tns(in);
}

inline void write_tns(std::ostream& out, const ZeroOneTensor& a) {
  out << a.order() << " " << a.dim() << " sparse01\n";
  for (const IndexTuple& t : a.ones()) {
    for (int m = 0; m < a.order(); ++m) {
      if (m) out << " ";
      out << t[static_cast<std::size_t>(m)] + 1;
    }
    out << "\n";
  }
}

inline void write_tns(std::ostream& out, const DenseTensor& a) {
  out << a.order() << " " << a.dim() << " dense\n";
  char buf[40];
  for (double v : a.entries()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  }
}

inline void write_tns(std::ostream& out, const TnsTensor& t) {
  std::visit([&out](const auto& a) { write_tns(out, a); }, t);
}

inline void write_tns_file(const std::string& path, const TnsTensor& t) {
  std::ofstream out(path);
  if (!out) throw TnsFormatError("cannot open '" + path + "' for writing");
  write_tns(out, t);
}

}  // namespace tenspec

#endif  // TENSPEC_IO_HPP
