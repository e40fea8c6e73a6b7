#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tenspec/io.hpp"

using namespace tenspec;

namespace {

TnsTensor parse(const std::string& text) {
  std::istringstream in(text);
  return read_tns(in);
}

std::string dump(const TnsTensor& t) {
  std::ostringstream out;
  write_tns(out, t);
  return out.str();
}

}  // namespace

TEST_CASE("sparse01 round-trip") {
  const ZeroOneTensor j = ZeroOneTensor::all_ones(2, 3);
  const std::string text = dump(TnsTensor(j));
  const TnsTensor back = parse(text);
  REQUIRE(std::holds_alternative<ZeroOneTensor>(back));
  REQUIRE(std::get<ZeroOneTensor>(back) == j);
  REQUIRE(dump(back) == text);
}

TEST_CASE("dense round-trip keeps every bit") {
  const DenseTensor a(3, 2, {1, 2, 2, 2, 2, 1, 3, 0.1});
  const std::string text = dump(TnsTensor(a));
  const TnsTensor back = parse(text);
  REQUIRE(std::holds_alternative<DenseTensor>(back));
  REQUIRE(std::get<DenseTensor>(back) == a);
  REQUIRE(dump(back) == text);
}

TEST_CASE("comments and loose whitespace are ignored") {
  const TnsTensor t = parse(
      "# order dim kind\n"
      "3 2 sparse01   # header\n"
      "\n"
      "1 1 1\n"
      "  1 2\n"
      "2 # trailing\n"
      "2 2 2\n");
  const auto& a = std::get<ZeroOneTensor>(t);
  REQUIRE(a.ones_count() == 3);
  REQUIRE(a.has_one({0, 0, 0}));
  REQUIRE(a.has_one({0, 1, 1}));
  REQUIRE(a.has_one({1, 1, 1}));
}

TEST_CASE("empty sparse body is the zero tensor") {
  const auto a = std::get<ZeroOneTensor>(parse("4 3 sparse01\n"));
  REQUIRE(a.order() == 4);
  REQUIRE(a.dim() == 3);
  REQUIRE(a.ones_count() == 0);
}

TEST_CASE("header errors") {
  REQUIRE_THROWS_AS(parse(""), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("1 2 sparse01\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 -1 sparse01\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 csv\n1 1 1\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("x 2 sparse01\n"), TnsFormatError);
}

TEST_CASE("sparse body errors") {
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n1 1\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n0 1 1\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n1 1 3\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n1 1 2\n1 1 1\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n1 1 1\n1 1 1\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("3 2 sparse01\n1 1 1.5\n"), TnsFormatError);
}

TEST_CASE("dense body errors") {
  REQUIRE_THROWS_AS(parse("2 2 dense\n1 2 3\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("2 2 dense\n1 2 3 4 5\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("2 2 dense\n1 2 3 -4\n"), TnsFormatError);
  REQUIRE_THROWS_AS(parse("2 2 dense\n1 2 3 four\n"), TnsFormatError);
}

TEST_CASE("read_tns_file missing path") {
  REQUIRE_THROWS_AS(read_tns_file("/nonexistent/path.tns"), TnsFormatError);
}

TEST_CASE("dense scientific notation parses") {
  const auto a = std::get<DenseTensor>(parse("2 2 dense\n1e0 2.5 0 3.25e-1\n"));
  REQUIRE(a.at(std::size_t{0}) == 1.0);
  REQUIRE(a.at(std::size_t{3}) == 0.325);
}
