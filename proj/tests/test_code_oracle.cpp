#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cwbound/code_oracle.hpp"
#include "cwbound/combinatorics.hpp"

#include <sstream>

using namespace cwbound;

namespace {

std::uint64_t bits(const std::string& s) {
  std::uint64_t v = 0;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (s[p] == '1') v |= std::uint64_t{1} << p;
  }
  return v;
}

}  // namespace

TEST_CASE("shapes") {
  CHECK(CodeShape::constant_weight(6, 3).candidate_count() == 20);
  CHECK(CodeShape::doubly(1, 3, 2, 4).candidate_count() == 18);
  CHECK(CodeShape::binary(10).candidate_count() == 1024);
  CHECK(candidate_words(CodeShape::constant_weight(6, 3)).size() == 20);
  CHECK(candidate_words(CodeShape::doubly(1, 3, 2, 4)).size() == 18);
  for (auto v : candidate_words(CodeShape::doubly(1, 3, 2, 4))) CHECK(CodeShape::doubly(1, 3, 2, 4).admits(v));
  CHECK_THROWS_AS(candidate_words(CodeShape::constant_weight(40, 20)), std::length_error);
  CHECK_THROWS_AS(CodeShape::constant_weight(5, 6), std::invalid_argument);
}

TEST_CASE("explicit codes are validated on construction") {
  const auto shape = CodeShape::constant_weight(4, 2);
  CHECK_NOTHROW(ExplicitCode::make(shape, 4, {bits("1100"), bits("0011")}));
  CHECK_THROWS_AS(ExplicitCode::make(shape, 4, {bits("1100"), bits("0111")}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitCode::make(shape, 4, {bits("1100"), bits("1010")}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitCode::make(shape, 4, {bits("1100"), bits("1100")}), std::invalid_argument);
}

TEST_CASE("exhaustive maxima") {
  CHECK(exhaustive_max(CodeShape::constant_weight(6, 3), 4).size == 4);
  auto two = exhaustive_max(CodeShape::constant_weight(4, 2), 4);
  CHECK(two.size == 2);
  CHECK(two.witness.words() == std::vector<std::uint64_t>{bits("1100"), bits("0011")});
  CHECK(exhaustive_max(CodeShape::binary(4), 2).size == 8);
  CHECK(exhaustive_max(CodeShape::binary(5), 3).size == 4);
  CHECK(exhaustive_max(CodeShape::doubly(1, 3, 1, 3), 4).size == 3);
  // Known values of A(n,4,3): Steiner-type packings.
  CHECK(exhaustive_max(CodeShape::constant_weight(7, 3), 4).size == 7);
  CHECK(exhaustive_max(CodeShape::constant_weight(8, 3), 4).size == 8);
  CHECK(exhaustive_max(CodeShape::constant_weight(9, 3), 4).size == 12);
  CHECK(exhaustive_max(CodeShape::constant_weight(8, 4), 4).size == 14);
  CHECK(exhaustive_max(CodeShape::binary(7), 3).size == 16);
}

TEST_CASE("distance distributions") {
  auto code = ExplicitCode::make(CodeShape::constant_weight(4, 2), 4, {bits("1100"), bits("0011")});
  auto a = distance_distribution(code);
  CHECK(a.at(0) == 1);
  CHECK(a.at(4) == 1);
  CHECK(a.at(2) == 0);
  CHECK(half_distance_distribution(code).at(2) == 1);
  auto single = ExplicitCode::make(CodeShape::constant_weight(4, 2), 4, {bits("1100")});
  for (const auto& [i, v] : distance_distribution(single)) CHECK(v == (i == 0 ? 1 : 0));
}

TEST_CASE("greedy codes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(greedy_lower_bound(CodeShape::constant_weight(6, 3), 4, seed).size() >= 2);
    const auto d = greedy_lower_bound(CodeShape::doubly(1, 3, 1, 3), 4, seed);
    CHECK(d.size() <= 3);
    CHECK(d.size() >= 1);
  }
  const auto a = greedy_lower_bound(CodeShape::constant_weight(12, 5), 6, 0);
  const auto b = greedy_lower_bound(CodeShape::constant_weight(12, 5), 6, 0);
  CHECK(a.words() == b.words());
  CHECK(a.size() == 9);  // regression value for seed 0
  const auto big = greedy_lower_bound(CodeShape::constant_weight(40, 10), 12, 3);
  CHECK(big.size() >= 1);
}

TEST_CASE("lemma checks") {
  const CodeParams p{8, 4, 3, std::nullopt};
  const auto peers = build_peer_bounds(p, TBoundTable::seed());
  const auto best = exhaustive_max(CodeShape::constant_weight(8, 3), 4);
  CHECK(verify_lemmas(best.witness, p, peers).empty());

  const CodeParams big{27, 8, 13, std::nullopt};
  const auto big_peers = build_peer_bounds(big, TBoundTable::seed());
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto code = greedy_lower_bound(CodeShape::constant_weight(27, 13), 8, seed);
    CHECK(code.size() > 10);
    CHECK(verify_lemmas(code, big, big_peers).empty());
  }
  // A code that is too dense for the supplied caps is reported.
  PeerBoundSet tight = peers;
  for (auto& [i, s] : tight.single) s.bound = 0;
  CHECK_FALSE(verify_lemmas(best.witness, p, tight).empty());
}

TEST_CASE("column identities") {
  auto pair = ExplicitCode::make(CodeShape::constant_weight(4, 2), 4, {bits("1100"), bits("0011")});
  auto r = verify_column_identities(pair, 1);
  CHECK(r.ok);
  CHECK(r.one_row_columns == 4);
  CHECK(r.one_row_rows == 4);
  // Every column holds exactly one 1, so each of the 4 columns splits the
  // pair: 2 t (M - t) = 2 per column.
  CHECK(r.odd_pairs_by_columns == 8);
  CHECK(r.odd_pairs_by_rows == 8);

  const auto best = exhaustive_max(CodeShape::constant_weight(9, 4), 4).witness;
  for (int k = 1; k <= 9; ++k) {
    auto q = verify_column_identities(best, k);
    CHECK(q.ok);
    CHECK(q.one_row_columns == Integer(static_cast<long>(best.size())) * krawtchouk_minus(k, 9, 4));
  }
  CHECK_THROWS_AS(verify_column_identities(best, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_column_identities(greedy_lower_bound(CodeShape::constant_weight(30, 5), 8, 1), 15),
                  std::length_error);
}

TEST_CASE("witness round trip") {
  for (const auto& shape : {CodeShape::constant_weight(8, 3), CodeShape::doubly(1, 4, 2, 5), CodeShape::binary(6)}) {
    const auto code = greedy_lower_bound(shape, 3, 7);
    std::istringstream in(serialize_witness(code));
    const auto back = parse_witness(in);
    CHECK(back.words() == code.words());
    CHECK(back.shape().kind_name() == shape.kind_name());
  }
  std::istringstream bad("4 4 2 constant-weight\n1100\n0111\n");
  CHECK_THROWS_AS(parse_witness(bad), std::invalid_argument);
}
