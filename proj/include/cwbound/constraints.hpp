#pragma once

// Linear inequalities satisfied by the distance distribution {A_2i} of every
// constant-weight code (and {A_i} of every binary code).

#include "cwbound/params.hpp"
#include "cwbound/rational.hpp"
#include "cwbound/tbound.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cwbound {

enum class Sense { LessEqual, GreaterEqual, Equal };

std::string to_string(Sense s);
Sense parse_sense(const std::string& s);

/// sum_i coefficients[i] * x_i  (sense)  rhs. Keys are half-distances i for
/// constant-weight codes (variable A_{2i}) and distances i for binary codes
/// (variable A_i). Zero coefficients are never stored.
struct LinearConstraint {
  Sense sense = Sense::LessEqual;
  std::map<int, Rational> coefficients;
  Rational rhs;
  std::string provenance;

  Rational evaluate(const std::map<int, Rational>& x) const;
  bool satisfied_by(const std::map<int, Rational>& x) const;
};

std::string to_string(const LinearConstraint& c, const std::string& variable_prefix = "A");

enum class Family { Delsarte, TCap, Pairs, DPairs, Columns };

using FamilySet = std::set<Family>;

std::string to_string(Family f);
/// Accepts "delsarte", "t-cap", "pairs", "d-pairs", "columns"; throws
/// std::invalid_argument on anything else.
Family parse_family(const std::string& name);
/// Comma-separated family list. Unknown names are an error.
FamilySet parse_families(const std::string& list);
std::string to_string(const FamilySet& families);

const FamilySet& all_families();

/// One peer bound with the T query it came from.
struct PeerSource {
  Integer bound;
  TLookup lookup;
};

/// P_i >= T(i, w, i, n-w, d) for every i in H, and P_ij for every ordered
/// pair with m_{i,j} = d: P_ij bounds |S_2i(c)| whenever S_2j(c) is nonempty.
struct PeerBoundSet {
  std::map<int, PeerSource> single;
  std::map<std::pair<int, int>, PeerSource> cross;

  const Integer& p(int i) const { return single.at(i).bound; }
  const Integer& p(int i, int j) const { return cross.at({i, j}).bound; }
};

/// Populates every P_i and every P_ij the generators can ask for.
PeerBoundSet build_peer_bounds(const CodeParams& p, const TBoundTable& table);

/// m_{i,j}: the largest distance between a word of V_i and a word of V_j,
/// where V_i holds the words with i ones among the first w coordinates and
/// i ones among the last n - w.
int max_distance(int i, int j, const CodeParams& p);

/// Block parameters of the doubly-constant-weight code that S_2j(c) must form
/// once S_2i(c) is nonempty; its T value bounds P_ji. Requires i != j and
/// m_{i,j} = d (throws std::invalid_argument otherwise).
DoublyParams cross_block_params(int i, int j, const CodeParams& p);

std::vector<LinearConstraint> delsarte_constraints(const CodeParams& p);

std::vector<LinearConstraint> t_cap_constraints(const CodeParams& p, const PeerBoundSet& peers);

/// sum_{i in H1} A_2i / P_i <= 1 for every maximal H1 (|H1| >= 2) whose
/// members pairwise have m < d.
std::vector<LinearConstraint> pair_and_set_constraints(const CodeParams& p, const PeerBoundSet& peers);

/// Constraints for pairs at m_{i,j} = d, extended over a greedily grown set
/// H1 whose other pairs all sit below d.
std::vector<LinearConstraint> d_equal_constraints(const CodeParams& p, const PeerBoundSet& peers);

/// Which of the two column inequalities to emit per k.
enum class ColumnSides { MinusOnly, Both };

/// 2-row k-column inequalities for a code of exactly p.size codewords, one
/// or two per k in `ks`. Throws std::invalid_argument when size is unset or
/// below 2, or when some k lies outside [1, n].
std::vector<LinearConstraint> column_constraints(const CodeParams& p, const std::vector<int>& ks,
                                                 ColumnSides sides = ColumnSides::Both);

/// sum_i A_2i = M - 1 for an assumed size M.
LinearConstraint size_equality(const std::vector<int>& keys, std::int64_t size);

/// q_k and r_k with M * P_k^-(n; w) = q_k C(n, k) + r_k, 0 <= r_k < C(n, k).
std::pair<Integer, Integer> column_quotient(int n, int w, std::int64_t size, int k);

/// (2/M) [ (C(n,k) - r_k) q_k (M - q_k) + r_k (q_k + 1)(M - q_k - 1) ]
Rational column_rhs(int n, int w, std::int64_t size, int k);

/// Binary-code Delsarte inequalities over A_d..A_n for k = 0..n. With a size,
/// the odd-M right-hand side refinement and the split P^- / P^+ pair per k.
std::vector<LinearConstraint> binary_constraints(int n, int d, std::optional<std::int64_t> size);

/// (M1, M2) for the split binary inequalities.
std::pair<Integer, Integer> split_pair_counts(std::int64_t size);

/// Drops constraints that are positive multiples of another with a looser
/// right-hand side, and rows already implied by x >= 0 (including all-zero
/// rows). Order of survivors is stable.
std::vector<LinearConstraint> deduplicate(std::vector<LinearConstraint> constraints);

/// Every M-independent family in `families`, deduplicated.
std::vector<LinearConstraint> generate(const CodeParams& p, const FamilySet& families, const PeerBoundSet& peers);

}  // namespace cwbound
