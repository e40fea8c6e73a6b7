// tenspec: spectral radii of nonnegative tensors and extremal search over
// {0,1}-tensors. Subcommands: rho, bound, search, canon, decompose,
// stability, extremal, check-structure, demo.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "tenspec/tenspec.hpp"

namespace {

using namespace tenspec;

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitUsage = 2;

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TnsTensor load(const std::string& path) {
  try {
    return read_tns_file(path);
  } catch (const TnsFormatError& e) {
    std::string msg = e.what();
    if (msg.find(path) == std::string::npos) msg = path + ": " + msg;
    throw UsageFailure(msg);
  }
}

ZeroOneTensor load_sparse(const std::string& path, const char* what) {
  TnsTensor t = load(path);
  if (const ZeroOneTensor* z = std::get_if<ZeroOneTensor>(&t)) return *z;
  throw UsageFailure(std::string(what) + " requires a sparse01 tensor, got dense: " + path);
}

void emit_json(const nlohmann::json& j, const std::string& dest) {
  if (dest == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(dest);
  if (!out) throw UsageFailure("cannot write " + dest);
  out << j.dump(2) << "\n";
}

unsigned env_default_jobs() {
  if (const char* s = std::getenv("TENSPEC_JOBS")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return Executor::default_jobs();
}

int cmd_rho(const std::string& path, const SolverOptions& opts, const std::string& json_dest) {
  const TnsTensor t = load(path);
  const EigenResult res = std::visit([&](const auto& a) { return spectral_radius(a, opts); }, t);
  const bool wi = std::visit([](const auto& a) { return is_weakly_irreducible(a); }, t);
  const std::size_t blocks =
      std::visit([](const auto& a) { return block_decompose(a).blocks.size(); }, t);
  if (!json_dest.empty()) {
    nlohmann::json j = eigen_json(res);
    j["weakly_irreducible"] = wi;
    j["blocks"] = blocks;
    emit_json(j, json_dest);
  } else {
    std::printf("lambda = %.12g\n", res.lambda);
    std::printf("residual = %.3e  iterations = %lld  converged = %s\n", res.residual,
                res.iterations, res.converged ? "yes" : "no");
    std::printf("weakly_irreducible = %s  blocks = %zu\n", wi ? "yes" : "no", blocks);
  }
  return res.converged ? kExitOk : kExitComputational;
}

int cmd_bound(std::size_t e, int r, std::optional<Index> k, const std::string& json_dest) {
  const double upper = upper_bound(e, r);
  nlohmann::json j{{"e", e}, {"r", r}, {"upper", upper}, {"upper_dec", dec_string(upper)}};
  if (k) {
    j["k"] = *k;
    j["lower_g"] = lower_bound_g(e, r, *k);
    j["lower_g_slack_form"] = lower_bound_g_slack(e, r, *k);
  }
  if (!json_dest.empty()) {
    emit_json(j, json_dest);
  } else {
    std::printf("upper_bound(e=%zu, r=%d) = %.12g\n", e, r, upper);
    if (k)
      std::printf("lower_bound_g(k=%d) = %.12g   slack form = %.12g\n", *k,
                  j["lower_g"].get<double>(), j["lower_g_slack_form"].get<double>());
  }
  return kExitOk;
}

void print_search_human(const SearchReport& rep) {
  std::printf("mode = %s  r = %d  e = %zu  candidates = %zu\n", rep.mode.c_str(), rep.r, rep.e,
              rep.candidates);
  std::printf("best_lambda = %.12g   upper bound = %.12g\n", rep.best_lambda,
              rep.theoretical_upper);
  std::printf("structure: %s\n", to_string(rep.structure_match));
  std::printf("maximizer classes: %zu\n", rep.maximizers.size());
  for (const ZeroOneTensor& m : rep.maximizers) {
    std::printf("  dim %d ones", m.dim());
    for (const IndexTuple& t : m.ones()) std::printf(" %s", detail::tuple_to_string(t).c_str());
    std::printf("\n");
  }
  for (const std::string& w : rep.warnings) std::printf("note: %s\n", w.c_str());
}

SearchReport merge_exhaustive(int r, std::size_t e, const std::vector<Index>& dims,
                              const SearchOptions& opts) {
  SearchReport merged;
  merged.r = r;
  merged.e = e;
  merged.mode = "exhaustive";
  merged.theoretical_upper = upper_bound(e, r);
  std::vector<std::pair<double, ZeroOneTensor>> found;
  bool any = false;
  for (Index n : dims) {
    if (detail::checked_pow(n, r) < e) continue;
    any = true;
    merged.n_range.push_back(n);
    SearchReport rep = search_exhaustive(r, e, n, opts);
    merged.candidates += rep.candidates;
    for (ZeroOneTensor& m : rep.maximizers) found.emplace_back(rep.best_lambda, std::move(m));
  }
  if (!any) throw UsageFailure("no n in range can host the requested ones count");
  detail::reduce_candidates(merged, found, opts.tie_tolerance);
  return merged;
}

int cmd_search(int r, std::size_t e, const std::string& mode, std::optional<Index> n_min,
               std::optional<Index> n_max, bool audit, const SearchOptions& opts,
               const std::string& json_dest) {
  std::vector<Index> dims;
  if (n_min || n_max) {
    const Index lo = n_min.value_or(1);
    const Index hi = n_max.value_or(n_min.value_or(1));
    if (lo < 1 || hi < lo) throw UsageFailure("bad n range");
    for (Index n = lo; n <= hi; ++n) dims.push_back(n);
  }
  SearchReport rep;
  if (mode == "fstar") {
    SearchOptions o = opts;
    o.sorted_counts = !audit;
    rep = search_fstar(r, e, dims, o);
  } else {
    if (dims.empty()) dims.push_back(min_host_dim(e, r));
    rep = merge_exhaustive(r, e, dims, opts);
  }
  if (!json_dest.empty())
    emit_json(search_json(rep), json_dest);
  else
    print_search_human(rep);
  return kExitOk;
}

int cmd_canon(const std::string& path, const std::string& out) {
  const ZeroOneTensor c = canonicalize(load_sparse(path, "canon"));
  if (out.empty())
    write_tns(std::cout, TnsTensor(c));
  else
    write_tns_file(out, TnsTensor(c));
  return kExitOk;
}

int cmd_decompose(const std::string& path, const SolverOptions& opts,
                  const std::string& json_dest) {
  const ZeroOneTensor a = load_sparse(path, "decompose");
  const BlockDecomposition<ZeroOneTensor> dec = block_decompose(a);
  std::vector<double> rhos;
  for (const ZeroOneTensor& b : dec.tensors) rhos.push_back(spectral_radius(b, opts).lambda);
  if (!json_dest.empty()) {
    nlohmann::json j = decomposition_json(dec);
    j["block_rhos"] = rhos;
    j["weakly_irreducible"] = is_weakly_irreducible(a);
    emit_json(j, json_dest);
  } else {
    std::printf("blocks = %zu  weakly_irreducible = %s\n", dec.blocks.size(),
                is_weakly_irreducible(a) ? "yes" : "no");
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
      std::printf("block %zu: vertices", b + 1);
      for (Index v : dec.blocks[b]) std::printf(" %d", v + 1);
      std::printf("  rho = %.12g\n", rhos[b]);
    }
  }
  return kExitOk;
}

int cmd_stability(const std::string& path, Index k, int l, const SolverOptions& opts,
                  const std::string& json_dest) {
  const ZeroOneTensor a = load_sparse(path, "stability");
  const StabilityReport rep = stability_extract(a, k, l, opts);
  if (!json_dest.empty()) {
    emit_json(stability_json(rep), json_dest);
  } else {
    std::printf("rho = %.12g  threshold = %.12g  slack = %.3e\n", rep.rho, rep.threshold,
                rep.slack);
    std::printf("|L| = %zu  N (zeros inside) = %zu  M (ones outside) = %zu\n", rep.large.size(),
                rep.zeros_inside, rep.ones_outside);
    std::printf("c1 = %.6g  c2 = %.6g  epsilon = %g\n", rep.c1, rep.c2, rep.epsilon);
  }
  return kExitOk;
}

int cmd_extremal(int r, Index k, int l, const std::string& out) {
  const ExtremalTensor ext = build_extremal(r, k, l);
  std::ostringstream head;
  head << "# extremal tensor r=" << r << " k=" << k << " l=" << l;
  if (ext.non_unique) head << " (one representative; the added 1 may go to any 0-position)";
  head << "\n";
  if (out.empty()) {
    std::cout << head.str();
    write_tns(std::cout, TnsTensor(ext.tensor));
  } else {
    std::ofstream f(out);
    if (!f) throw UsageFailure("cannot write " + out);
    f << head.str();
    write_tns(f, TnsTensor(ext.tensor));
  }
  return kExitOk;
}

int cmd_check_structure(const std::string& path, Index k, int l, const std::string& json_dest) {
  const ZeroOneTensor a = load_sparse(path, "check-structure");
  const bool ok = check_structure(a, a.order(), k, l);
  if (!json_dest.empty())
    emit_json(nlohmann::json{{"k", k}, {"l", l}, {"matched", ok}}, json_dest);
  else
    std::printf("%s\n", ok ? "matched" : "not_matched");
  return kExitOk;
}

struct DemoCheck {
  std::string name;
  bool pass;
  std::string detail;
};

DenseTensor demo_counterexample(bool corrupt) {
  // slices [[1,2],[2,2]] and [[2,1],[3,1]]; rho = 7 at the uniform vector
  std::vector<double> entries = {1, 2, 2, 2, 2, 1, 3, 1};
  if (corrupt) entries[0] = 2;
  return DenseTensor(3, 2, entries);
}

int cmd_demo(double tol, unsigned seed, unsigned jobs, bool corrupt) {
  std::vector<DemoCheck> checks;
  const auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
  };
  char buf[512];

  for (int r : {3, 4})
    for (Index k : {2, 3}) {
      const double want = std::pow(k, r - 1);
      const double got = spectral_radius(ZeroOneTensor::all_ones(k, r)).lambda;
      std::snprintf(buf, sizeof(buf), "rho = %.12g, expected %g", got, want);
      add("rho(J_" + std::to_string(k) + "^" + std::to_string(r) + ") = k^(r-1)",
          std::abs(got - want) <= std::max(tol, 1e-9), buf);
    }

  const DenseTensor a = demo_counterexample(corrupt);
  const double rho_a = spectral_radius(a).lambda;
  std::snprintf(buf, sizeof(buf), "rho = %.12g, expected 7", rho_a);
  add("counterexample rho(A) = 7", std::abs(rho_a - 7.0) <= std::max(tol, 1e-9), buf);

  const DenseTensor m = transpose(a, {2, 1, 0});
  const double rho_m = spectral_radius(m).lambda;
  std::snprintf(buf, sizeof(buf), "rho = %.12g, expected 6.91618", rho_m);
  add("transpose rho(M) = 6.91618", std::abs(rho_m - 6.91618) <= std::max(tol, 1e-4), buf);

  SearchOptions sopts;
  sopts.jobs = jobs;
  for (std::size_t e : {std::size_t{8}, std::size_t{9}}) {
    const SearchReport rep = search_fstar(3, e, {1, 2, 3, 4}, sopts);
    std::snprintf(buf, sizeof(buf), "best_lambda = %.12g, expected 4", rep.best_lambda);
    add("g_3(" + std::to_string(e) + ") = 4",
        std::abs(rep.best_lambda - 4.0) <= std::max(tol, 1e-8), buf);
  }

  {
    bool pass = true;
    std::string detail = "g_3(e) vs e^(2/3):";
    for (std::size_t e = 1; e <= 10; ++e) {
      const SearchReport rep = search_fstar(3, e, {}, sopts);
      const double upper = upper_bound(e, 3);
      const bool equal = std::abs(rep.best_lambda - upper) <= 1e-8;
      const bool cube = (e == 1 || e == 8);
      if (rep.best_lambda > upper + std::max(tol, 1e-9) || equal != cube) pass = false;
      std::snprintf(buf, sizeof(buf), " %zu:%.4g/%.4g", e, rep.best_lambda, upper);
      detail += buf;
    }
    add("bound table e=1..10, equality only at cubes", pass, detail);
  }

  {
    std::mt19937 rng(seed);
    bool pass = true;
    std::string detail = "20 seeded tensors, r=3 n=3";
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<std::size_t> edist(1, 27);
      const std::size_t e = edist(rng);
      std::vector<std::size_t> pos(27);
      std::iota(pos.begin(), pos.end(), std::size_t{0});
      std::shuffle(pos.begin(), pos.end(), rng);
      std::vector<IndexTuple> ones;
      for (std::size_t i = 0; i < e; ++i) ones.push_back(tuple_at(pos[i], 3, 3));
      const ZeroOneTensor t(3, 3, std::move(ones));
      const double rho = spectral_radius(t).lambda;
      double block_max = 0.0;
      for (const ZeroOneTensor& b : block_decompose(t).tensors)
        block_max = std::max(block_max, spectral_radius(b).lambda);
      if (rho > upper_bound(e, 3) + 1e-8 || std::abs(rho - block_max) > 1e-8) {
        pass = false;
        std::snprintf(buf, sizeof(buf), "trial %d failed: rho=%.12g", trial, rho);
        detail = buf;
        break;
      }
    }
    add("random spot-check (bound + block consistency)", pass, detail);
  }

  bool all = true;
  for (const DemoCheck& c : checks) {
    all = all && c.pass;
    std::printf("[%s] %-45s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  }
  std::printf("%s\n", all ? "demo: all checks passed" : "demo: CHECKS FAILED");
  return all ? kExitOk : kExitComputational;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral radii of nonnegative tensors and {0,1} extremal search"};
  app.require_subcommand(1);

  SolverOptions solver;
  unsigned jobs = env_default_jobs();
  unsigned seed = 0;

  std::string file, out, json_dest;
  std::size_t e = 0;
  int r = 3, l = 0;
  Index k = 0;
  std::optional<Index> opt_k, n_min, n_max;
  std::string mode = "fstar";
  bool audit = false, corrupt = false;

  const auto add_solver = [&](CLI::App* c) {
    c->add_option("--tol", solver.tolerance, "enclosure gap tolerance");
    c->add_option("--max-iter", solver.max_iterations, "iteration cap");
    c->add_option("--shift", solver.shift, "diagonal shift");
  };
  const auto add_json = [&](CLI::App* c) {
    c->add_option("--json", json_dest, "JSON output to stdout, or to a file when a path is given")
        ->expected(0, 1);
  };

  CLI::App* rho = app.add_subcommand("rho", "spectral radius of a .tns tensor");
  rho->add_option("file", file, "input .tns")->required();
  add_solver(rho);
  add_json(rho);

  CLI::App* bound = app.add_subcommand("bound", "closed-form bounds for (e, r)");
  bound->add_option("--e", e, "ones count")->required();
  bound->add_option("--r", r, "order")->required();
  bound->add_option("--k", opt_k, "host dimension for the lower bound");
  add_json(bound);

  CLI::App* search = app.add_subcommand("search", "maximize rho over tensors with e ones");
  search->add_option("--r", r, "order")->required();
  search->add_option("--e", e, "ones count")->required();
  search->add_option("--mode", mode, "fstar | exhaustive")
      ->check(CLI::IsMember({"fstar", "exhaustive"}));
  search->add_option("--n-min", n_min, "smallest dimension");
  search->add_option("--n-max", n_max, "largest dimension");
  search->add_flag("--audit", audit, "fstar: also try unsorted slice-count assignments");
  search->add_option("--jobs", jobs, "worker threads (default: TENSPEC_JOBS or hardware)");
  add_solver(search);
  add_json(search);

  CLI::App* canon = app.add_subcommand("canon", "canonical form of a sparse01 tensor");
  canon->add_option("file", file)->required();
  canon->add_option("-o,--out", out, "output .tns path (default stdout)");

  CLI::App* decomp = app.add_subcommand("decompose", "SCC block decomposition");
  decomp->add_option("file", file)->required();
  add_solver(decomp);
  add_json(decomp);

  CLI::App* stab = app.add_subcommand("stability", "large/small split per the stability theorem");
  stab->add_option("file", file)->required();
  stab->add_option("--k", k, "target cube dimension")->required();
  stab->add_option("--l", l, "ones offset from k^r")->required();
  add_solver(stab);
  add_json(stab);

  CLI::App* extremal = app.add_subcommand("extremal", "construct the extremal tensor");
  extremal->add_option("--r", r)->required();
  extremal->add_option("--k", k)->required();
  extremal->add_option("--l", l)->required();
  extremal->add_option("-o,--out", out, "output .tns path (default stdout)");

  CLI::App* checks = app.add_subcommand("check-structure", "match against the extremal family");
  checks->add_option("file", file)->required();
  checks->add_option("--k", k)->required();
  checks->add_option("--l", l)->required();
  add_json(checks);

  CLI::App* demo = app.add_subcommand("demo", "reproduce the headline values, machine-checked");
  demo->add_option("--tol", solver.tolerance, "loosen the check tolerances");
  demo->add_option("--jobs", jobs, "worker threads");
  demo->add_option("--seed", seed, "seed for the random spot-check");
  demo->add_flag("--corrupt-fixture", corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // --json without a value selects stdout (CLI11 stores "true" for a bare flag)
  const auto json_given = [&](CLI::App* c) {
    if (c->count("--json") && (json_dest.empty() || json_dest == "true")) json_dest = "-";
  };

  try {
    if (*rho) {
      json_given(rho);
      return cmd_rho(file, solver, json_dest);
    }
    if (*bound) {
      json_given(bound);
      return cmd_bound(e, r, opt_k, json_dest);
    }
    if (*search) {
      json_given(search);
      SearchOptions opts;
      opts.solver = solver;
      opts.jobs = jobs;
      return cmd_search(r, e, mode, n_min, n_max, audit, opts, json_dest);
    }
    if (*canon) return cmd_canon(file, out);
    if (*decomp) {
      json_given(decomp);
      return cmd_decompose(file, solver, json_dest);
    }
    if (*stab) {
      json_given(stab);
      return cmd_stability(file, k, l, solver, json_dest);
    }
    if (*extremal) return cmd_extremal(r, k, l, out);
    if (*checks) {
      json_given(checks);
      return cmd_check_structure(file, k, l, json_dest);
    }
    if (*demo) return cmd_demo(solver.tolerance, seed, jobs, corrupt);
  } catch (const UsageFailure& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitComputational;
  }
  return kExitUsage;
}
