#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cwbound/code_oracle.hpp"
#include "cwbound/combinatorics.hpp"
#include "cwbound/tbound.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cwbound;

namespace {

DoublyParams dp(int w1, int n1, int w2, int n2, int d) { return DoublyParams::make(w1, n1, w2, n2, d); }

TBoundTable table_from(const std::string& text) {
  std::istringstream in(text);
  return TBoundTable::parse(in, "test");
}

}  // namespace

TEST_CASE("canonical representatives") {
  CHECK(canonicalize(dp(11, 13, 11, 14, 8)) == dp(2, 13, 3, 14, 8));
  CHECK(canonicalize(dp(10, 12, 9, 12, 8)) == dp(2, 12, 3, 12, 8));
  CHECK(canonicalize(dp(1, 4, 1, 4, 4)) == dp(1, 4, 1, 4, 4));
  CHECK(canonicalize(dp(3, 14, 2, 13, 8)) == dp(2, 13, 3, 14, 8));
  CHECK(canonicalize(dp(12, 13, 12, 14, 8)) == dp(1, 13, 2, 14, 8));
  CHECK(dp(1, 4, 1, 4, 3).d == 4);
  CHECK_THROWS_AS(dp(5, 4, 1, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(dp(1, 4, 1, 4, 0), std::invalid_argument);
}

TEST_CASE("closed forms") {
  CHECK(exact_t(canonicalize(dp(0, 5, 2, 6, 4))) == Integer(3));
  CHECK(exact_t(canonicalize(dp(12, 13, 12, 14, 8))) == Integer(1));
  CHECK(exact_t(canonicalize(dp(2, 6, 3, 7, 2))) == Integer(525));
  CHECK(exact_t(canonicalize(dp(1, 3, 1, 3, 4))) == Integer(3));
  CHECK_FALSE(exact_t(canonicalize(dp(2, 13, 3, 14, 8))).has_value());
}

TEST_CASE("lookup against the seed table") {
  const auto& seed = TBoundTable::seed();
  CHECK(seed.size() == 2);
  auto a = lookup_t(dp(11, 13, 11, 14, 8), seed);
  CHECK(a.bound == 26);
  CHECK(a.source == TSource::Table);
  CHECK(lookup_t(dp(10, 12, 9, 12, 8), seed).bound == 20);
  CHECK(lookup_t(dp(1, 3, 1, 3, 4), seed).bound == 3);
  auto p = lookup_t(dp(3, 13, 4, 14, 8), seed);
  CHECK(p.bound == binomial(13, 3) * binomial(14, 4));
}

TEST_CASE("lookup is sound against exhaustive search") {
  const TBoundTable empty;
  for (int n1 = 1; n1 <= 5; ++n1) {
    for (int n2 = n1; n2 <= 5; ++n2) {
      for (int w1 = 0; w1 <= n1; ++w1) {
        for (int w2 = 0; w2 <= n2; ++w2) {
          for (int d = 2; d <= n1 + n2; d += 2) {
            const auto truth = exhaustive_max(CodeShape::doubly(w1, n1, w2, n2), d).size;
            const auto t = lookup_t(dp(w1, n1, w2, n2, d), empty);
            CHECK(t.bound >= Integer(static_cast<long>(truth)));
            if (auto e = exact_t(canonicalize(dp(w1, n1, w2, n2, d)))) {
              INFO("T(" << w1 << "," << n1 << "," << w2 << "," << n2 << "," << d << ")");
              CHECK(*e == Integer(static_cast<long>(truth)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("table parsing") {
  auto t = table_from("# comment\n\n2,13,3,14,8,26,some source, with commas\n10,12,9,12,8,20,x\n");
  CHECK(t.size() == 2);
  const TEntry* e = t.find(dp(2, 13, 3, 14, 8));
  REQUIRE(e);
  CHECK(e->provenance == "some source, with commas");
  CHECK(t.find(dp(2, 12, 3, 12, 8))->bound == 20);

  CHECK_THROWS_AS(table_from("2,13,3,14,8,26\n"), TableError);
  CHECK_THROWS_AS(table_from("2,13,3,14,8,zero,x\n"), TableError);
  CHECK_THROWS_AS(table_from("2,13,3,14,8,0,x\n"), TableError);
  CHECK_THROWS_AS(table_from("2,13,3,14,8,26,a\n11,13,11,14,8,25,b\n"), TableError);
  CHECK_THROWS_AS(TBoundTable::load("/nonexistent/tbounds.csv"), TableError);
}

TEST_CASE("merge keeps minima") {
  auto a = table_from("2,13,3,14,8,26,a\n");
  a.merge(table_from("2,13,3,14,8,30,b\n1,4,2,6,4,7,c\n"));
  CHECK(a.find(dp(2, 13, 3, 14, 8))->bound == 26);
  a.merge(table_from("2,13,3,14,8,25,d\n"));
  CHECK(a.find(dp(2, 13, 3, 14, 8))->bound == 25);
  CHECK(a.find(dp(2, 13, 3, 14, 8))->provenance == "d");
  CHECK(a.size() == 2);
}

TEST_CASE("exact value wins over a looser table entry") {
  auto t = table_from("1,3,1,3,4,5,loose\n");
  auto r = lookup_t(dp(1, 3, 1, 3, 4), t);
  CHECK(r.bound == 3);
  CHECK(r.source == TSource::Exact);
}

TEST_CASE("load from file") {
  const auto path = std::filesystem::temp_directory_path() / "cwbound_tbound_test.csv";
  {
    std::ofstream f(path);
    f << "2,12,3,12,8,19,file\n";
  }
  auto t = TBoundTable::load(path.string());
  CHECK(lookup_t(dp(2, 12, 3, 12, 8), t).bound == 19);
  std::filesystem::remove(path);
}
