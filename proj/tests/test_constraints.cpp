#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cwbound/code_oracle.hpp"
#include "cwbound/combinatorics.hpp"
#include "cwbound/constraints.hpp"

#include <algorithm>
#include <bit>

using namespace cwbound;

namespace {

CodeParams cp(int n, int d, int w, std::optional<std::int64_t> m = std::nullopt) { return CodeParams{n, d, w, m}; }

// True when `c` equals `target` up to a positive scale factor.
bool same_up_to_scale(const LinearConstraint& c, const LinearConstraint& target) {
  if (c.sense != target.sense || c.coefficients.size() != target.coefficients.size()) return false;
  if (target.coefficients.empty()) return false;
  const auto& [k0, v0] = *target.coefficients.begin();
  auto it = c.coefficients.find(k0);
  if (it == c.coefficients.end()) return false;
  const Rational s = it->second / v0;
  if (s <= 0) return false;
  for (const auto& [k, v] : target.coefficients) {
    auto jt = c.coefficients.find(k);
    if (jt == c.coefficients.end() || jt->second != s * v) return false;
  }
  return c.rhs == s * target.rhs;
}

bool contains(const std::vector<LinearConstraint>& list, const LinearConstraint& target) {
  return std::any_of(list.begin(), list.end(), [&](const LinearConstraint& c) { return same_up_to_scale(c, target); });
}

const LinearConstraint* by_provenance(const std::vector<LinearConstraint>& list, const std::string& tag) {
  for (const auto& c : list) {
    if (c.provenance == tag) return &c;
  }
  return nullptr;
}

LinearConstraint le(std::map<int, Rational> coef, Rational rhs) { return {Sense::LessEqual, std::move(coef), rhs, ""}; }

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_families("delsarte,t-cap") == FamilySet{Family::Delsarte, Family::TCap});
  CHECK(parse_families("delsarte,t-cap,pairs,d-pairs,columns") == all_families());
  CHECK_THROWS_AS(parse_families("delsarte,bogus"), std::invalid_argument);
  CHECK(to_string(parse_family("d-pairs")) == "d-pairs");
}

TEST_CASE("delsarte at (4,4,2)") {
  const auto cs = delsarte_constraints(cp(4, 4, 2));
  const auto* c = by_provenance(cs, "delsarte(1)");
  REQUIRE(c);
  CHECK(c->sense == Sense::GreaterEqual);
  CHECK(c->coefficients.at(2) == -1);
  CHECK(c->rhs == -1);
  std::map<int, Rational> code{{2, 1}};  // {1100, 0011}
  CHECK(c->evaluate(code) == c->rhs);
}

TEST_CASE("max distance") {
  const auto p = cp(27, 8, 13);
  CHECK(max_distance(11, 12, p) == 8);
  CHECK(max_distance(11, 13, p) == 6);
  CHECK(max_distance(12, 13, p) == 4);
  for (int n = 8; n <= 28; ++n) {
    for (int w = 4; 2 * w <= n; ++w) {
      const auto q = cp(n, 4, w);
      for (int i : q.half_distances()) {
        for (int j : q.half_distances()) CHECK(max_distance(i, j, q) == max_distance(j, i, q));
      }
    }
  }
}

TEST_CASE("cross block parameters") {
  const auto p = cp(27, 8, 13);
  const auto a = cross_block_params(11, 12, p);
  CHECK(canonicalize(a) == canonicalize(DoublyParams::make(10, 11, 9, 11, 8)));
  CHECK(lookup_t(a, TBoundTable::seed()).bound == 1);
  const auto b = cross_block_params(12, 11, p);
  CHECK(canonicalize(b) == canonicalize(DoublyParams::make(10, 12, 9, 12, 8)));
  CHECK(lookup_t(b, TBoundTable::seed()).bound == 20);
  CHECK_THROWS_AS(cross_block_params(11, 13, p), std::invalid_argument);
  CHECK_THROWS_AS(cross_block_params(11, 11, p), std::invalid_argument);
}

TEST_CASE("constraints for (27,8,13)") {
  const auto p = cp(27, 8, 13);
  const auto peers = build_peer_bounds(p, TBoundTable::seed());
  CHECK(peers.p(13) == 1);
  CHECK(peers.p(12) == 1);
  CHECK(peers.p(11) == 26);
  CHECK(peers.p(11, 12) == 20);
  CHECK(peers.p(12, 11) == 1);

  const auto caps = t_cap_constraints(p, peers);
  CHECK(contains(caps, le({{13, 1}}, 1)));
  CHECK(contains(caps, le({{11, 1}}, 26)));
  CHECK(contains(caps, le({{12, 1}}, 1)));

  const auto pairs = pair_and_set_constraints(p, peers);
  CHECK(contains(pairs, le({{12, 1}, {13, 1}}, 1)));

  const auto dpairs = d_equal_constraints(p, peers);
  CHECK(contains(dpairs, le({{11, 1}, {12, 6}, {13, 26}}, 26)));

  const auto all = generate(p, all_families(), peers);
  CHECK(contains(all, le({{12, 1}, {13, 1}}, 1)));
  CHECK(contains(all, le({{11, 1}, {12, 6}, {13, 26}}, 26)));
}

TEST_CASE("column constraints for (27,12,12) at M = 140") {
  const auto p = cp(27, 12, 12, 140);
  const auto cs = column_constraints(p, {1, 2, 3}, ColumnSides::MinusOnly);
  REQUIRE(cs.size() == 3);
  const std::vector<std::vector<long>> coef = {{12, 14, 16, 18, 20, 22, 24},
                                               {180, 182, 176, 162, 140, 110, 72},
                                               {1480, 1456, 1440, 1464, 1560, 1760, 2096}};
  const std::vector<Rational> rhs = {Rational(9333, 5), Rational(859356, 35), Rational(204715)};
  for (int k = 0; k < 3; ++k) {
    std::map<int, Rational> m;
    for (int i = 6; i <= 12; ++i) m[i] = coef[k][i - 6];
    CHECK(same_up_to_scale(cs[k], le(m, rhs[k])));
    CHECK(cs[k].rhs == rhs[k]);
  }
  CHECK(column_constraints(p, {1, 2, 3}, ColumnSides::Both).size() == 6);
  CHECK_THROWS_AS(column_constraints(cp(27, 12, 12), {1}), std::invalid_argument);
  CHECK_THROWS_AS(column_constraints(p, {0}), std::invalid_argument);
  CHECK_THROWS_AS(column_constraints(p, {28}), std::invalid_argument);
}

TEST_CASE("column right-hand side with zero remainder") {
  for (int n = 6; n <= 14; ++n) {
    for (int w = 2; 2 * w <= n; ++w) {
      for (std::int64_t m = 2; m <= 40; ++m) {
        for (int k = 1; k <= 4; ++k) {
          const auto [q, r] = column_quotient(n, w, m, k);
          const Integer c = binomial(n, k);
          CHECK(q * c + r == m * krawtchouk_minus(k, n, w));
          CHECK(r >= 0);
          CHECK(r < c);
          if (r == 0) CHECK(column_rhs(n, w, m, k) == make_rational(2 * c * q * (m - q), Integer(m)));
        }
      }
    }
  }
}

TEST_CASE("binary constraints") {
  const auto base = binary_constraints(6, 2, std::nullopt);
  const auto* k0 = by_provenance(base, "binary-delsarte(0)");
  REQUIRE(k0);
  for (const auto& [i, v] : k0->coefficients) CHECK(v == 1);
  CHECK(k0->rhs == -1);
  CHECK(k0->sense == Sense::GreaterEqual);
  // Vacuous rows disappear after deduplication.
  for (const auto& c : deduplicate(base)) CHECK(c.provenance != "binary-delsarte(0)");
  CHECK_THROWS_AS(binary_constraints(4, 5, std::nullopt), std::invalid_argument);
}

TEST_CASE("split binary constraints sum to the parity-refined inequality") {
  const std::vector<std::tuple<int, int, std::int64_t>> triples = {
      {4, 2, 8}, {5, 3, 4}, {7, 3, 16}, {8, 4, 15}, {10, 3, 77}};
  for (const auto& [n, d, m] : triples) {
    const auto cs = binary_constraints(n, d, m);
    for (int k = 0; k <= n; ++k) {
      const std::string suffix = std::to_string(k) + "," + std::to_string(m) + ")";
      const auto* minus = by_provenance(cs, "binary-split-minus(" + suffix);
      const auto* plus = by_provenance(cs, "binary-split-plus(" + suffix);
      const auto* refined = by_provenance(cs, (m % 2 ? "binary-delsarte-odd(" + suffix
                                                     : "binary-delsarte(" + std::to_string(k) + ")"));
      REQUIRE(minus);
      REQUIRE(plus);
      REQUIRE(refined);
      // minus + plus reads  sum (P^- - P^+) A_i <= rhs;  negated it is the base row.
      for (int i = d; i <= n; ++i) {
        const Rational sum = (minus->coefficients.count(i) ? minus->coefficients.at(i) : Rational(0)) +
                             (plus->coefficients.count(i) ? plus->coefficients.at(i) : Rational(0));
        const Rational base = refined->coefficients.count(i) ? refined->coefficients.at(i) : Rational(0);
        CHECK(-sum == base);
      }
      CHECK(-(minus->rhs + plus->rhs) == refined->rhs);
    }
    const auto [m1, m2] = split_pair_counts(m);
    if (m % 2 == 0) {
      CHECK(m1 * 4 == Integer(m * m));
      CHECK(m2 * 4 == Integer(m * (m - 2)));
    } else {
      CHECK(m1 * 4 == Integer(m * m - 1));
      CHECK(m2 * 4 == Integer((m - 1) * (m - 1)));
    }
  }
}

TEST_CASE("deduplicate") {
  std::vector<LinearConstraint> cs = {
      le({{1, 1}, {2, 2}}, 4),
      le({{1, 2}, {2, 4}}, 6),
      {Sense::GreaterEqual, {{1, -1}, {2, -2}}, Rational(-5), "neg"},
      le({}, 3),
      {Sense::Equal, {{1, 1}}, Rational(2), "e1"},
      {Sense::Equal, {{1, 2}}, Rational(4), "e2"},
      {Sense::Equal, {{1, 1}}, Rational(3), "e3"},
  };
  const auto out = deduplicate(cs);
  REQUIRE(out.size() == 3);
  CHECK(out[0].rhs == 6);
  CHECK(out[0].coefficients.at(2) == 4);
  CHECK(out[1].provenance == "e1");
  CHECK(out[2].provenance == "e3");
}

TEST_CASE("every constraint holds on exhaustive optimal codes") {
  for (int n = 6; n <= 9; ++n) {
    for (int d = 4; d <= n; d += 2) {
      for (int w = d / 2 + 1; 2 * w <= n; ++w) {
        const CodeParams p = cp(n, d, w);
        const auto best = exhaustive_max(CodeShape::constant_weight(n, w), d);
        const auto dist = half_distance_distribution(best.witness);
        const auto peers = build_peer_bounds(p, TBoundTable::seed());
        auto cs = generate(p, all_families(), peers);
        const auto m = static_cast<std::int64_t>(best.size);
        if (m >= 2) {
          CodeParams at = p;
          at.size = m;
          std::vector<int> ks;
          for (int k = 1; k <= n; ++k) ks.push_back(k);
          for (auto& c : column_constraints(at, ks)) cs.push_back(c);
          cs.push_back(size_equality(p.half_distances(), m));
        }
        for (const auto& c : cs) {
          INFO("(" << n << "," << d << "," << w << ") " << c.provenance);
          CHECK(c.satisfied_by(dist));
        }
        CHECK(verify_lemmas(best.witness, p, peers).empty());
      }
    }
  }
}

TEST_CASE("binary constraints hold on the even-weight code of length 4") {
  std::vector<std::uint64_t> words;
  for (std::uint64_t v = 0; v < 16; ++v) {
    if (std::popcount(v) % 2 == 0) words.push_back(v);
  }
  const auto code = ExplicitCode::make(CodeShape::binary(4), 2, words);
  const auto dist = distance_distribution(code);
  for (const auto& c : binary_constraints(4, 2, 8)) {
    INFO(c.provenance);
    CHECK(c.satisfied_by(dist));
  }
}
