#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tenspec/tensor.hpp"

using namespace tenspec;

TEST_CASE("tuple position round-trip") {
  const Index n = 3;
  IndexTuple t{0, 0, 0};
  std::size_t pos = 0;
  do {
    REQUIRE(tuple_position(t, n) == pos);
    REQUIRE(tuple_at(pos, 3, n) == t);
    ++pos;
  } while (next_tuple(t, n));
  REQUIRE(pos == 27);
}

TEST_CASE("constructor validation") {
  REQUIRE_THROWS_AS(ZeroOneTensor(1, 2, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(ZeroOneTensor(3, 2, {{0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(ZeroOneTensor(3, 2, {{0, 0, 2}}), std::invalid_argument);
  REQUIRE_THROWS_AS(ZeroOneTensor(3, 2, {{0, 0, 1}, {0, 0, 1}}), std::invalid_argument);
  REQUIRE_NOTHROW(ZeroOneTensor(3, 0, {}));
  REQUIRE_THROWS_AS(DenseTensor(3, 2, std::vector<double>(7, 0.0)), std::invalid_argument);
  REQUIRE_THROWS_AS(DenseTensor(3, 2, std::vector<double>{0, 0, 0, 0, 0, 0, 0, -1}),
                    std::invalid_argument);
}

TEST_CASE("all_ones sizes") {
  REQUIRE(ZeroOneTensor::all_ones(1, 3).ones_count() == 1);
  REQUIRE(ZeroOneTensor::all_ones(2, 3).ones_count() == 8);
  REQUIRE(ZeroOneTensor::all_ones(3, 3).ones_count() == 27);
  REQUIRE(ZeroOneTensor::all_ones(2, 4).ones_count() == 16);
}

TEST_CASE("from_counts") {
  const ZeroOneTensor j = ZeroOneTensor::from_counts({4, 4}, 3);
  REQUIRE(j == ZeroOneTensor::all_ones(2, 3));
  const ZeroOneTensor t = ZeroOneTensor::from_counts({4, 3}, 3);
  REQUIRE(t.ones_count() == 7);
  REQUIRE_FALSE(t.has_one({1, 1, 1}));  // a_222 absent
  REQUIRE(ZeroOneTensor::from_counts({0, 0}, 3).ones_count() == 0);
  REQUIRE_THROWS_AS(ZeroOneTensor::from_counts({5, 0}, 3), std::invalid_argument);
}

TEST_CASE("slice_counts round-trip on from_counts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SliceCountVector c(3);
    std::uniform_int_distribution<std::size_t> d(0, 9);
    for (auto& v : c) v = d(rng);
    REQUIRE(ZeroOneTensor::from_counts(c, 3).slice_counts() == c);
  }
}

TEST_CASE("apply on known tensors") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  REQUIRE(tenspec::apply(j, {1.0, 1.0}) == std::vector<double>{4.0, 4.0});

  const DenseTensor a(3, 2, {1, 2, 2, 2, 2, 1, 3, 1});
  REQUIRE(tenspec::apply(a, {1.0, 1.0}) == std::vector<double>{7.0, 7.0});

  REQUIRE(tenspec::apply(ZeroOneTensor::zeros(3, 2), {1.0, 1.0}) == std::vector<double>{0.0, 0.0});
  REQUIRE_THROWS_AS(tenspec::apply(j, {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("apply homogeneity and sparse-dense agreement") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xd(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ZeroOneTensor a = oracles::random_zero_one(rng, 3, 3, 1 + trial % 20);
    const DenseTensor d = DenseTensor::from_zero_one(a);
    std::vector<double> x{xd(rng), xd(rng), xd(rng)};
    const auto ys = tenspec::apply(a, x);
    const auto yd = tenspec::apply(d, x);
    for (int i = 0; i < 3; ++i) REQUIRE(ys[i] == Catch::Approx(yd[i]).margin(1e-12));

    const double t = xd(rng);
    std::vector<double> tx = x;
    for (auto& v : tx) v *= t;
    const auto yt = tenspec::apply(a, tx);
    for (int i = 0; i < 3; ++i)
      REQUIRE(yt[i] == Catch::Approx(std::pow(t, 2) * ys[i]).margin(1e-9));
  }
}

TEST_CASE("poly_eval") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(3, 3);
  const double u = std::pow(3.0, -1.0 / 3.0);
  REQUIRE(poly_eval(j, {u, u, u}) == Catch::Approx(9.0).margin(1e-12));

  const DenseTensor a(3, 2, {1, 2, 2, 2, 2, 1, 3, 1});
  REQUIRE(poly_eval(a, {1.0, 1.0}) == Catch::Approx(14.0).margin(1e-12));
  REQUIRE(poly_eval(ZeroOneTensor::zeros(3, 2), {1.0, 1.0}) == 0.0);

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> xd(0.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ZeroOneTensor t = oracles::random_zero_one(rng, 3, 3, 9);
    std::vector<double> x{xd(rng), xd(rng), xd(rng)};
    const auto y = tenspec::apply(t, x);
    double dot = 0.0;
    for (int i = 0; i < 3; ++i) dot += x[i] * y[i];
    REQUIRE(poly_eval(t, x) == Catch::Approx(dot).margin(1e-10));
  }
}

TEST_CASE("transpose dense counterexample") {
  const DenseTensor a(3, 2, {1, 2, 2, 2, 2, 1, 3, 1});
  const DenseTensor id = transpose(a, {0, 1, 2});
  for (std::size_t p = 0; p < 8; ++p) REQUIRE(id.at(p) == a.at(p));

  // tau(i) = 4 - i reverses the indices: a'_ijk = a_kji
  const DenseTensor m = transpose(a, {2, 1, 0});
  const std::vector<double> want = {1, 2, 2, 3, 2, 1, 2, 1};  // slices [[1,2],[2,3]], [[2,1],[2,1]]
  for (std::size_t p = 0; p < 8; ++p) REQUIRE(m.at(p) == want[p]);
}

TEST_CASE("transpose fixing first index preserves apply") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> xd(0.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ZeroOneTensor a = oracles::random_zero_one(rng, 3, 3, 10);
    const ZeroOneTensor t = transpose(a, {0, 2, 1});
    REQUIRE(t.ones_count() == a.ones_count());
    std::vector<double> x{xd(rng), xd(rng), xd(rng)};
    const auto ya = tenspec::apply(a, x);
    const auto yt = tenspec::apply(t, x);
    for (int i = 0; i < 3; ++i) REQUIRE(ya[i] == Catch::Approx(yt[i]).margin(1e-12));
  }
}

TEST_CASE("transpose of symmetric tensor is identity") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  REQUIRE(transpose(j, {2, 0, 1}) == j);
  REQUIRE(transpose(j, {1, 0, 2}) == j);
}

TEST_CASE("permute_vertices") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  REQUIRE(permute_vertices(j, {0, 1}) == j);
  REQUIRE(permute_vertices(j, {1, 0}) == j);

  const ZeroOneTensor s(3, 2, {{0, 1, 1}});
  const ZeroOneTensor p = permute_vertices(s, {1, 0});
  REQUIRE(p.ones().size() == 1);
  REQUIRE(p.ones()[0] == IndexTuple{1, 0, 0});
}

TEST_CASE("remove_isolated") {
  std::vector<IndexTuple> ones = ZeroOneTensor::all_ones(2, 3).ones();
  const ZeroOneTensor padded(3, 3, ones);  // vertex 3 unused
  const ZeroOneTensor r = remove_isolated(padded);
  REQUIRE(r.dim() == 2);
  REQUIRE(r == ZeroOneTensor::all_ones(2, 3));
  REQUIRE(remove_isolated(r) == r);
  REQUIRE(remove_isolated(ZeroOneTensor::zeros(3, 5)).dim() == 0);
}

TEST_CASE("is_symmetric") {
  REQUIRE(is_symmetric(ZeroOneTensor::all_ones(2, 3)));
  REQUIRE(is_symmetric(ZeroOneTensor::all_ones(3, 4)));
  REQUIRE_FALSE(is_symmetric(ZeroOneTensor(3, 2, {{0, 0, 1}})));
  REQUIRE_FALSE(is_symmetric(DenseTensor(3, 2, {1, 2, 2, 2, 2, 1, 3, 1})));
  // symmetric support: the orbit of (1,1,2)
  REQUIRE(is_symmetric(ZeroOneTensor(3, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})));
}
