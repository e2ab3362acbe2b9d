#include "cwbound/code_oracle.hpp"

#include "cwbound/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cwbound {

namespace {

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

// Next integer with the same popcount (Gosper).
std::uint64_t next_same_weight(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<std::uint64_t> weight_words(int n, int w) {
  std::vector<std::uint64_t> out;
  if (w == 0) return {0};
  const std::uint64_t limit = low_mask(n);
  for (std::uint64_t v = low_mask(w); v <= limit && v != 0;) {
    out.push_back(v);
    if (v == (low_mask(w) << (n - w))) break;
    v = next_same_weight(v);
  }
  return out;
}

// Uniform draw in [0, bound) from mt19937_64, independent of the standard
// library's distribution implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t mask = std::bit_ceil(bound) - 1;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

std::uint64_t random_weight_word(std::mt19937_64& rng, int offset, int n, int w) {
  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[p] = p;
  std::uint64_t word = 0;
  for (int t = 0; t < w; ++t) {
    const auto pick = t + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(n - t)));
    std::swap(pos[t], pos[pick]);
    word |= std::uint64_t{1} << (offset + pos[t]);
  }
  return word;
}

std::uint64_t random_word(std::mt19937_64& rng, const CodeShape& s) {
  switch (s.kind) {
    case CodeKind::ConstantWeight: return random_weight_word(rng, 0, s.n, s.w);
    case CodeKind::Doubly: return random_weight_word(rng, 0, s.n1, s.w1) | random_weight_word(rng, s.n1, s.n2, s.w2);
    case CodeKind::Binary: return rng() & low_mask(s.n);
  }
  return 0;
}

// Dense bitset over clique-search vertices.
struct VertexSet {
  std::vector<std::uint64_t> bits;

  explicit VertexSet(std::size_t n = 0) : bits((n + 63) / 64, 0) {}
  void set(std::size_t v) { bits[v / 64] |= std::uint64_t{1} << (v % 64); }
  void reset(std::size_t v) { bits[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  bool none() const {
    return std::all_of(bits.begin(), bits.end(), [](std::uint64_t b) { return b == 0; });
  }
  long first() const {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) return static_cast<long>(i * 64 + std::countr_zero(bits[i]));
    }
    return -1;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] &= o.bits[i];
    return *this;
  }
  VertexSet& remove_all(const VertexSet& o) {
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] &= ~o.bits[i];
    return *this;
  }
};

// Branch and bound with greedy-colouring bounds; vertices pre-sorted by
// decreasing degree.
class MaxClique {
 public:
  explicit MaxClique(std::vector<VertexSet> adjacency) : adj_(std::move(adjacency)) {}

  std::vector<std::size_t> run() {
    VertexSet all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
    std::vector<std::size_t> current;
    if (!adj_.empty()) expand(current, all);
    return best_;
  }

 private:
  void expand(std::vector<std::size_t>& current, VertexSet candidates) {
    std::vector<std::pair<std::size_t, std::size_t>> coloured;  // (vertex, colour)
    VertexSet uncoloured = candidates;
    std::size_t colour = 0;
    while (!uncoloured.none()) {
      ++colour;
      VertexSet open = uncoloured;
      for (long v = open.first(); v >= 0; v = open.first()) {
        uncoloured.reset(v);
        open.reset(v);
        open.remove_all(adj_[v]);
        coloured.emplace_back(static_cast<std::size_t>(v), colour);
      }
    }
    for (auto it = coloured.rbegin(); it != coloured.rend(); ++it) {
      const auto [v, c] = *it;
      if (current.size() + c <= best_.size()) return;
      current.push_back(v);
      VertexSet next = candidates;
      next &= adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  std::vector<VertexSet> adj_;
  std::vector<std::size_t> best_;
};

}  // namespace

int hamming_distance(std::uint64_t a, std::uint64_t b) { return std::popcount(a ^ b); }

CodeShape CodeShape::constant_weight(int n, int w) {
  if (n < 1 || n > 64 || w < 0 || w > n) throw std::invalid_argument("constant-weight shape out of range");
  CodeShape s;
  s.kind = CodeKind::ConstantWeight;
  s.n = n;
  s.w = w;
  return s;
}

CodeShape CodeShape::doubly(int w1, int n1, int w2, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 < 1 || n1 + n2 > 64 || w1 < 0 || w2 < 0 || w1 > n1 || w2 > n2) {
    throw std::invalid_argument("doubly-constant-weight shape out of range");
  }
  CodeShape s;
  s.kind = CodeKind::Doubly;
  s.n = n1 + n2;
  s.w = w1 + w2;
  s.w1 = w1;
  s.n1 = n1;
  s.w2 = w2;
  s.n2 = n2;
  return s;
}

CodeShape CodeShape::binary(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("binary shape out of range");
  CodeShape s;
  s.kind = CodeKind::Binary;
  s.n = n;
  return s;
}

bool CodeShape::admits(std::uint64_t word) const {
  if ((word & ~low_mask(n)) != 0) return false;
  switch (kind) {
    case CodeKind::ConstantWeight: return std::popcount(word) == w;
    case CodeKind::Doubly:
      return std::popcount(word & low_mask(n1)) == w1 && std::popcount(word >> n1) == w2;
    case CodeKind::Binary: return true;
  }
  return false;
}

Integer CodeShape::candidate_count() const {
  switch (kind) {
    case CodeKind::ConstantWeight: return binomial(n, w);
    case CodeKind::Doubly: return binomial(n1, w1) * binomial(n2, w2);
    case CodeKind::Binary: return Integer(1) << n;
  }
  return 0;
}

std::string CodeShape::kind_name() const {
  switch (kind) {
    case CodeKind::ConstantWeight: return "constant-weight";
    case CodeKind::Doubly:
      return "doubly(" + std::to_string(w1) + "," + std::to_string(n1) + "," + std::to_string(w2) + "," +
             std::to_string(n2) + ")";
    case CodeKind::Binary: return "binary";
  }
  return "?";
}

ExplicitCode ExplicitCode::make(const CodeShape& shape, int d, std::vector<std::uint64_t> words) {
  if (d < 1) throw std::invalid_argument("minimum distance must be positive");
  for (std::size_t a = 0; a < words.size(); ++a) {
    if (!shape.admits(words[a])) {
      throw std::invalid_argument("codeword " + std::to_string(a) + " does not fit the " + shape.kind_name() + " shape");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (hamming_distance(words[a], words[b]) < d) {
        throw std::invalid_argument("codewords " + std::to_string(b) + " and " + std::to_string(a) +
                                    " are closer than d = " + std::to_string(d));
      }
    }
  }
  return ExplicitCode(shape, d, std::move(words));
}

std::vector<std::uint64_t> candidate_words(const CodeShape& shape) {
  if (shape.candidate_count() > kMaxCandidates) {
    throw std::length_error("search space of " + shape.candidate_count().get_str() + " words exceeds the guard");
  }
  switch (shape.kind) {
    case CodeKind::ConstantWeight: return weight_words(shape.n, shape.w);
    case CodeKind::Doubly: {
      std::vector<std::uint64_t> out;
      for (auto hi : weight_words(std::max(shape.n2, 1), shape.w2)) {
        if (shape.n2 == 0 && hi != 0) continue;
        for (auto lo : weight_words(std::max(shape.n1, 1), shape.w1)) {
          if (shape.n1 == 0 && lo != 0) continue;
          out.push_back(lo | (hi << shape.n1));
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case CodeKind::Binary: {
      std::vector<std::uint64_t> out(std::size_t{1} << shape.n);
      for (std::size_t v = 0; v < out.size(); ++v) out[v] = v;
      return out;
    }
  }
  return {};
}

OracleResult exhaustive_max(const CodeShape& shape, int d) {
  const auto words = candidate_words(shape);
  // The automorphism group acts transitively on admissible words, so some
  // maximum code contains words[0]; search its compatible neighbours only.
  const std::uint64_t anchor = words.front();
  std::vector<std::uint64_t> neighbours;
  for (std::size_t v = 1; v < words.size(); ++v) {
    if (hamming_distance(anchor, words[v]) >= d) neighbours.push_back(words[v]);
  }
  if (static_cast<std::int64_t>(neighbours.size()) > kMaxCliqueVertices) {
    throw std::length_error("compatibility graph with " + std::to_string(neighbours.size()) +
                            " vertices exceeds the clique guard");
  }
  std::vector<std::size_t> degree(neighbours.size(), 0);
  for (std::size_t a = 0; a < neighbours.size(); ++a) {
    for (std::size_t b = a + 1; b < neighbours.size(); ++b) {
      if (hamming_distance(neighbours[a], neighbours[b]) >= d) {
        ++degree[a];
        ++degree[b];
      }
    }
  }
  std::vector<std::size_t> order(neighbours.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

  std::vector<VertexSet> adjacency(order.size(), VertexSet(order.size()));
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (hamming_distance(neighbours[order[a]], neighbours[order[b]]) >= d) {
        adjacency[a].set(b);
        adjacency[b].set(a);
      }
    }
  }
  const auto clique = MaxClique(std::move(adjacency)).run();
  std::vector<std::uint64_t> code{anchor};
  for (std::size_t v : clique) code.push_back(neighbours[order[v]]);
  std::sort(code.begin(), code.end());
  auto witness = ExplicitCode::make(shape, d, std::move(code));
  return OracleResult{witness.size(), std::move(witness)};
}

ExplicitCode greedy_lower_bound(const CodeShape& shape, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> code;
  auto try_insert = [&](std::uint64_t word) {
    for (std::uint64_t c : code) {
      if (hamming_distance(c, word) < d) return;
    }
    code.push_back(word);
  };

  constexpr std::int64_t kEnumerateLimit = 200'000;
  if (shape.candidate_count() <= kEnumerateLimit) {
    auto words = candidate_words(shape);
    for (std::size_t i = words.size(); i > 1; --i) {
      std::swap(words[i - 1], words[draw_below(rng, i)]);
    }
    for (std::uint64_t word : words) try_insert(word);
  } else {
    constexpr int kAttempts = 20'000;
    for (int t = 0; t < kAttempts; ++t) try_insert(random_word(rng, shape));
  }
  return ExplicitCode::make(shape, d, std::move(code));
}

std::map<int, Rational> distance_distribution(const ExplicitCode& code) {
  std::vector<long> ordered_pairs(code.n() + 1, 0);
  const auto& words = code.words();
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) ++ordered_pairs[hamming_distance(words[a], words[b])];
  }
  std::map<int, Rational> out;
  if (words.empty()) return out;
  const Integer m(static_cast<long>(words.size()));
  for (int i = 0; i <= code.n(); ++i) out[i] = make_rational(Integer(ordered_pairs[i]), m);
  return out;
}

std::map<int, Rational> half_distance_distribution(const ExplicitCode& code) {
  std::map<int, Rational> out;
  for (const auto& [i, a] : distance_distribution(code)) {
    if (i >= 2 && i % 2 == 0) out[i / 2] = a;
  }
  return out;
}

std::vector<std::string> verify_lemmas(const ExplicitCode& code, const CodeParams& p, const PeerBoundSet& peers) {
  if (code.shape().kind != CodeKind::ConstantWeight || code.n() != p.n || code.shape().w != p.w || code.d() < p.d) {
    throw std::invalid_argument("verify_lemmas: code does not match the parameters");
  }
  std::vector<std::string> violations;
  const auto h = p.half_distances();

  std::vector<LinearConstraint> per_codeword = t_cap_constraints(p, peers);
  for (auto& c : pair_and_set_constraints(p, peers)) per_codeword.push_back(std::move(c));
  for (auto& c : d_equal_constraints(p, peers)) per_codeword.push_back(std::move(c));

  const auto& words = code.words();
  for (std::size_t a = 0; a < words.size(); ++a) {
    std::map<int, Rational> s;
    for (int i : h) s[i] = 0;
    for (std::size_t b = 0; b < words.size(); ++b) {
      const int dist = hamming_distance(words[a], words[b]);
      if (b != a) s[dist / 2] += 1;
    }
    const std::string at = "codeword " + std::to_string(a) + ": ";
    for (int i : h) {
      if (s[i] > Rational(peers.p(i))) violations.push_back(at + "|S_" + std::to_string(2 * i) + "| exceeds P_i");
    }
    for (int i : h) {
      for (int j : h) {
        if (i == j) continue;
        const int m = max_distance(i, j, p);
        if (m < p.d && i < j && s[i] > 0 && s[j] > 0) {
          violations.push_back(at + "both S_" + std::to_string(2 * i) + " and S_" + std::to_string(2 * j) +
                               " nonempty with m < d");
        }
        if (m == p.d && s[i] >= 1 && s[j] > Rational(peers.p(j, i))) {
          violations.push_back(at + "|S_" + std::to_string(2 * j) + "| exceeds P_ji given S_" + std::to_string(2 * i));
        }
      }
    }
    for (const auto& c : per_codeword) {
      if (!c.satisfied_by(s)) violations.push_back(at + "per-codeword form of " + c.provenance + " fails");
    }
  }
  return violations;
}

ColumnIdentityReport verify_column_identities(const ExplicitCode& code, int k) {
  const int n = code.n();
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  const Integer subsets = binomial(n, k);
  if (subsets > 100'000) throw std::length_error("C(n,k) exceeds the column-identity guard");

  const auto& rows = code.words();
  const long m = static_cast<long>(rows.size());
  ColumnIdentityReport r;
  r.one_row_columns = 0;
  r.odd_pairs_by_columns = 0;
  r.even_pairs_by_columns = 0;
  for (std::uint64_t mask : weight_words(n, k)) {
    long t = 0;
    for (std::uint64_t row : rows) t += std::popcount(row & mask) % 2;
    r.one_row_columns += t;
    r.odd_pairs_by_columns += Integer(2 * t * (m - t));
    r.even_pairs_by_columns += Integer(t * (t - 1) + (m - t) * (m - t - 1));
  }
  std::vector<Integer> minus(n + 1), plus(n + 1);
  for (int x = 0; x <= n; ++x) {
    minus[x] = krawtchouk_minus(k, n, x);
    plus[x] = krawtchouk_plus(k, n, x);
  }
  r.one_row_rows = 0;
  for (std::uint64_t row : rows) r.one_row_rows += minus[std::popcount(row)];

  std::vector<long> pairs_at(n + 1, 0);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows.size(); ++b) {
      if (a != b) ++pairs_at[hamming_distance(rows[a], rows[b])];
    }
  }
  r.odd_pairs_by_rows = 0;
  r.even_pairs_by_rows = 0;
  for (int x = 0; x <= n; ++x) {
    r.odd_pairs_by_rows += pairs_at[x] * minus[x];
    r.even_pairs_by_rows += pairs_at[x] * plus[x];
  }
  Integer q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.one_row_rows.get_mpz_t(), subsets.get_mpz_t());
  const Integer mm(m);
  r.odd_pairs_max = 2 * ((subsets - rem) * q * (mm - q) + rem * (q + 1) * (mm - q - 1));
  r.ok = r.one_row_columns == r.one_row_rows && r.odd_pairs_by_rows == r.odd_pairs_by_columns &&
         r.even_pairs_by_rows == r.even_pairs_by_columns && r.odd_pairs_by_rows <= r.odd_pairs_max;
  return r;
}

std::string serialize_witness(const ExplicitCode& code) {
  std::ostringstream out;
  const auto& s = code.shape();
  out << code.n() << " " << code.d() << " ";
  if (s.kind == CodeKind::Binary) {
    out << "-";
  } else {
    out << s.w;
  }
  out << " " << s.kind_name() << "\n";
  for (std::uint64_t word : code.words()) {
    for (int p = 0; p < code.n(); ++p) out << (((word >> p) & 1) ? '1' : '0');
    out << "\n";
  }
  return out.str();
}

ExplicitCode parse_witness(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("witness: missing header");
  std::istringstream h(header);
  int n = 0, d = 0;
  std::string w_text, kind;
  if (!(h >> n >> d >> w_text >> kind)) throw std::invalid_argument("witness: malformed header");

  CodeShape shape;
  if (kind == "binary") {
    shape = CodeShape::binary(n);
  } else if (kind == "constant-weight") {
    shape = CodeShape::constant_weight(n, std::stoi(w_text));
  } else if (kind.rfind("doubly(", 0) == 0 && kind.back() == ')') {
    int w1 = 0, n1 = 0, w2 = 0, n2 = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream ks(kind.substr(7, kind.size() - 8));
    if (!(ks >> w1 >> c1 >> n1 >> c2 >> w2 >> c3 >> n2) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::invalid_argument("witness: malformed doubly kind");
    }
    shape = CodeShape::doubly(w1, n1, w2, n2);
    if (shape.n != n) throw std::invalid_argument("witness: block lengths disagree with n");
  } else {
    throw std::invalid_argument("witness: unknown kind '" + kind + "'");
  }

  std::vector<std::uint64_t> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (static_cast<int>(line.size()) != n) throw std::invalid_argument("witness: codeword of wrong length");
    std::uint64_t word = 0;
    for (int p = 0; p < n; ++p) {
      if (line[p] == '1') {
        word |= std::uint64_t{1} << p;
      } else if (line[p] != '0') {
        throw std::invalid_argument("witness: codeword characters must be 0/1");
      }
    }
    words.push_back(word);
  }
  return ExplicitCode::make(shape, d, std::move(words));
}

}  // namespace cwbound
