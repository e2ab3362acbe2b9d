#pragma once

// Ground truth at small scale: explicit codes, their distance distributions,
// exhaustive maximum codes via maximum clique, randomized greedy codes, and
// per-codeword checks of the counting lemmas behind every constraint family.

#include "cwbound/constraints.hpp"
#include "cwbound/params.hpp"
#include "cwbound/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cwbound {

enum class CodeKind { ConstantWeight, Doubly, Binary };

/// Which words of length n a code may contain. Bit p of a word is coordinate
/// p; a doubly-constant-weight word has w1 ones in bits [0, n1) and w2 ones
/// in bits [n1, n1 + n2).
struct CodeShape {
  CodeKind kind = CodeKind::Binary;
  int n = 0;
  int w = 0;
  int w1 = 0, n1 = 0, w2 = 0, n2 = 0;

  static CodeShape constant_weight(int n, int w);
  static CodeShape doubly(int w1, int n1, int w2, int n2);
  static CodeShape binary(int n);

  bool admits(std::uint64_t word) const;
  /// Number of admissible words (no enumeration).
  Integer candidate_count() const;
  std::string kind_name() const;
};

class ExplicitCode {
 public:
  /// Validates word shapes, distinctness and pairwise distance >= d; throws
  /// std::invalid_argument on any violation.
  static ExplicitCode make(const CodeShape& shape, int d, std::vector<std::uint64_t> words);

  const CodeShape& shape() const { return shape_; }
  int n() const { return shape_.n; }
  int d() const { return d_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  ExplicitCode(CodeShape shape, int d, std::vector<std::uint64_t> words)
      : shape_(shape), d_(d), words_(std::move(words)) {}

  CodeShape shape_;
  int d_ = 1;
  std::vector<std::uint64_t> words_;
};

int hamming_distance(std::uint64_t a, std::uint64_t b);

/// Enumeration is refused above this many admissible words.
inline constexpr std::int64_t kMaxCandidates = 2'000'000;
/// Clique search is refused above this many vertices.
inline constexpr std::int64_t kMaxCliqueVertices = 1 << 15;

/// All admissible words in increasing order. Throws std::length_error over
/// the candidate guard.
std::vector<std::uint64_t> candidate_words(const CodeShape& shape);

struct OracleResult {
  std::size_t size = 0;
  ExplicitCode witness;
};

/// Exact maximum code size by maximum clique search over the compatibility
/// graph (edges at distance >= d). Throws std::length_error over the guards.
OracleResult exhaustive_max(const CodeShape& shape, int d);

/// A valid, usually non-optimal code by randomized greedy insertion.
/// Deterministic for a given seed on every platform.
ExplicitCode greedy_lower_bound(const CodeShape& shape, int d, std::uint64_t seed);

/// A_i = (1/|C|) sum_c |S_i(c)| for i = 0..n.
std::map<int, Rational> distance_distribution(const ExplicitCode& code);

/// Constant-weight view: i -> A_{2i} for i >= 1.
std::map<int, Rational> half_distance_distribution(const ExplicitCode& code);

/// Checks every per-codeword inequality behind the t-cap, pair/set and
/// d-pair/d-set families: |S_2i(c)| <= P_i, the either-or claim for
/// m_{i,j} < d, the conditional cap |S_2j(c)| <= P_ji for m_{i,j} = d, and
/// the per-codeword form of each generated constraint. Returns one message
/// per violation (empty means all hold).
std::vector<std::string> verify_lemmas(const ExplicitCode& code, const CodeParams& p, const PeerBoundSet& peers);

struct ColumnIdentityReport {
  Integer one_row_columns;      // sum over k-column sets of wt(u1' + ... + uk')
  Integer one_row_rows;         // sum over rows of P_k^-(n; wt(row))
  Integer odd_pairs_by_rows;    // sum over ordered row pairs of P_k^-(n; d(u,v))
  Integer odd_pairs_by_columns; // sum over k-column sets of 2 t (M - t)
  Integer odd_pairs_max;        // the q_k / r_k maximum of the column side
  Integer even_pairs_by_rows;   // sum over ordered row pairs of P_k^+(n; d(u,v))
  Integer even_pairs_by_columns;
  bool ok = false;
};

/// Computes both sides of the 1-row and 2-row k-column counts. Throws
/// std::length_error when C(n, k) > 100000 and std::invalid_argument for k
/// outside [1, n].
ColumnIdentityReport verify_column_identities(const ExplicitCode& code, int k);

/// Header "n d w kind", then one line of '0'/'1' per codeword (coordinate 0
/// first). w is "-" for binary codes.
std::string serialize_witness(const ExplicitCode& code);
ExplicitCode parse_witness(std::istream& in);

}  // namespace cwbound
