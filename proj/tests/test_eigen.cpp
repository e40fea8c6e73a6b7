#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tenspec/eigen.hpp"

using namespace tenspec;

namespace {

ZeroOneTensor two_block_tensor() {
  std::vector<IndexTuple> ones = ZeroOneTensor::all_ones(2, 3).ones();
  ones.push_back({2, 2, 2});
  ones.push_back({2, 0, 1});
  return ZeroOneTensor(3, 3, std::move(ones));
}

}  // namespace

TEST_CASE("rho of J_k^r is k^(r-1)") {
  for (int r : {3, 4})
    for (Index k : {1, 2, 3, 4}) {
      const EigenResult res = spectral_radius(ZeroOneTensor::all_ones(k, r));
      REQUIRE(res.converged);
      REQUIRE(res.lambda == Catch::Approx(std::pow(double(k), r - 1)).margin(1e-9));
      REQUIRE(res.residual < 1e-8);
      REQUIRE(r_norm(res.x, r) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("dense pair with distinct radii") {
  const DenseTensor a(3, 2, {1, 2, 2, 2, 2, 1, 3, 1});
  const EigenResult ra = spectral_radius(a);
  REQUIRE(ra.converged);
  REQUIRE(ra.lambda == Catch::Approx(7.0).margin(1e-9));

  const DenseTensor m = transpose(a, {2, 1, 0});
  const EigenResult rm = spectral_radius(m);
  REQUIRE(rm.converged);
  REQUIRE(rm.lambda == Catch::Approx(6.91618).margin(1e-4));
  REQUIRE(rm.lambda < ra.lambda - 1e-3);
}

TEST_CASE("hand-solved nonuniform example") {
  // apply = (2 x1 x2, x1^2): lambda^3 = 4 at the Perron pair.
  const ZeroOneTensor a(3, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  const EigenResult res = spectral_radius(a);
  REQUIRE(res.converged);
  REQUIRE(res.lambda == Catch::Approx(std::cbrt(4.0)).margin(1e-9));
}

TEST_CASE("sparse and dense solves agree") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const ZeroOneTensor a = oracles::random_weakly_irreducible(rng, 3, 4, 6);
    const EigenResult rs = spectral_radius(a);
    const EigenResult rd = spectral_radius(DenseTensor::from_zero_one(a));
    REQUIRE(rs.converged);
    REQUIRE(rs.lambda == Catch::Approx(rd.lambda).margin(1e-8));
  }
}

TEST_CASE("shift invariance") {
  std::mt19937 rng(43);
  const ZeroOneTensor a = oracles::random_weakly_irreducible(rng, 3, 4, 8);
  SolverOptions o;
  o.shift = 0.5;
  const double l1 = spectral_radius(a, o).lambda;
  o.shift = 1.0;
  const double l2 = spectral_radius(a, o).lambda;
  o.shift = 2.0;
  const double l3 = spectral_radius(a, o).lambda;
  REQUIRE(l1 == Catch::Approx(l2).margin(2e-10));
  REQUIRE(l2 == Catch::Approx(l3).margin(2e-10));
}

TEST_CASE("r=2 agrees with classical matrix power iteration") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 4;
    const ZeroOneTensor a =
        oracles::random_weakly_irreducible(rng, 2, n, static_cast<std::size_t>(n));
    std::vector<double> mat(static_cast<std::size_t>(n) * n, 0.0);
    for (const IndexTuple& t : a.ones())
      mat[static_cast<std::size_t>(t[0]) * n + static_cast<std::size_t>(t[1])] = 1.0;
    const double want = oracles::matrix_power_radius(mat, static_cast<std::size_t>(n));
    REQUIRE(spectral_radius(a).lambda == Catch::Approx(want).margin(1e-8));
  }
}

TEST_CASE("reducible tensor takes the block maximum") {
  const EigenResult res = spectral_radius(two_block_tensor());
  REQUIRE(res.converged);
  REQUIRE(res.lambda == Catch::Approx(4.0).margin(1e-9));
  REQUIRE(res.x.size() == 3);
  REQUIRE(res.x[2] == 0.0);
  REQUIRE(res.x[0] == Catch::Approx(res.x[1]).margin(1e-9));
  REQUIRE(res.x[0] > 0.0);
  REQUIRE(certify_lower_bound(two_block_tensor(), res.x, res.lambda - 1e-8));
}

TEST_CASE("degenerate inputs") {
  REQUIRE(spectral_radius(ZeroOneTensor::zeros(3, 2)).lambda == 0.0);
  REQUIRE(spectral_radius(ZeroOneTensor::zeros(3, 0)).lambda == 0.0);
  REQUIRE(spectral_radius(ZeroOneTensor::zeros(3, 0)).converged);
  REQUIRE(spectral_radius(ZeroOneTensor(3, 1, {{0, 0, 0}})).lambda ==
          Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("solver option validation") {
  SolverOptions o;
  o.tolerance = 0.0;
  REQUIRE_THROWS_AS(spectral_radius(ZeroOneTensor::all_ones(2, 3), o), std::invalid_argument);
  o = SolverOptions{};
  o.max_iterations = 0;
  REQUIRE_THROWS_AS(spectral_radius(ZeroOneTensor::all_ones(2, 3), o), std::invalid_argument);
  o = SolverOptions{};
  o.shift = -1.0;
  REQUIRE_THROWS_AS(spectral_radius(ZeroOneTensor::all_ones(2, 3), o), std::invalid_argument);
}

TEST_CASE("iteration cap reports non-convergence") {
  const DenseTensor m = transpose(DenseTensor(3, 2, {1, 2, 2, 2, 2, 1, 3, 1}), {2, 1, 0});
  SolverOptions o;
  o.max_iterations = 1;
  const EigenResult res = spectral_radius(m, o);
  REQUIRE_FALSE(res.converged);
  REQUIRE(res.iterations == 1);
  REQUIRE(std::isfinite(res.lambda));
}

TEST_CASE("min-ratio certificates hold against mixed solves") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> xd(0.1, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ZeroOneTensor a = oracles::random_zero_one(rng, 3, 4, 10 + trial % 15);
    std::vector<double> x(4);
    for (auto& v : x) v = xd(rng);
    const auto y = tenspec::apply(a, x);
    double lam = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) lam = std::min(lam, y[i] / (x[i] * x[i]));
    lam *= 1.0 - 1e-13;  // back off the exact boundary ratio by a few ulps
    REQUIRE(certify_lower_bound(a, x, lam));
    REQUIRE(spectral_radius(a).lambda >= lam - 1e-8);
  }
}

TEST_CASE("entrywise domination is monotone") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const ZeroOneTensor b = oracles::random_weakly_irreducible(rng, 3, 4, 4);
    std::vector<IndexTuple> ones = b.ones();
    IndexTuple t{0, 0, 0};
    do {
      if (!b.has_one(t)) {
        ones.push_back(t);
        break;
      }
    } while (next_tuple(t, 4));
    const ZeroOneTensor a(3, 4, std::move(ones));
    REQUIRE(spectral_radius(a).lambda >= spectral_radius(b).lambda - 1e-10);
  }
}

TEST_CASE("positivize_certificate fills in zeros") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  const std::vector<double> x{1.0, 0.0};
  REQUIRE(certify_lower_bound(j, x, 1.0));
  const std::vector<double> y = positivize_certificate(j, x, 1.0);
  REQUIRE(y[0] > 0.0);
  REQUIRE(y[1] > 0.0);
  REQUIRE(certify_lower_bound(j, y, 1.0));
  REQUIRE(spectral_radius(j).lambda >= 1.0);
}

TEST_CASE("positivize_certificate leaves positive vectors alone") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  const std::vector<double> x{0.5, 0.5};
  REQUIRE(positivize_certificate(j, x, 1.0) == x);
}

TEST_CASE("positivize_certificate argument validation") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  const std::vector<double> x{1.0, 0.0};
  REQUIRE_THROWS_AS(positivize_certificate(j, x, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(positivize_certificate(j, x, 1.0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(positivize_certificate(j, x, 5.0), std::invalid_argument);
  REQUIRE_THROWS_AS(positivize_certificate(two_block_tensor(), {1.0, 1.0, 0.0}, 0.1),
                    std::invalid_argument);
}

TEST_CASE("positivize_certificate on a deeper vanishing ladder") {
  // chain 3 -> 2 -> {1,2} with x supported on {1} only
  const ZeroOneTensor a(3, 3, {{0, 0, 0}, {1, 0, 0}, {1, 1, 1}, {2, 1, 1}, {0, 2, 2}});
  REQUIRE(is_weakly_irreducible(a));
  const std::vector<double> x{1.0, 0.0, 0.0};
  REQUIRE(certify_lower_bound(a, x, 1.0));
  const std::vector<double> y = positivize_certificate(a, x, 1.0);
  for (double v : y) REQUIRE(v > 0.0);
  REQUIRE(certify_lower_bound(a, y, 1.0));
}

TEST_CASE("lambda_bar helpers") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  REQUIRE(lambda_bar_lower(j) == Catch::Approx(4.0));
  REQUIRE(lambda_bar_symmetric(j).lambda == Catch::Approx(4.0).margin(1e-9));
  REQUIRE(lambda_bar_symmetric(j).lambda >= lambda_bar_lower(j) - 1e-9);

  const ZeroOneTensor orbit(3, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  REQUIRE(lambda_bar_symmetric(orbit).lambda >= lambda_bar_lower(orbit) - 1e-9);
  REQUIRE_THROWS_AS(lambda_bar_symmetric(ZeroOneTensor(3, 2, {{0, 0, 1}})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(lambda_bar_lower(ZeroOneTensor::zeros(3, 0)), std::invalid_argument);
}
