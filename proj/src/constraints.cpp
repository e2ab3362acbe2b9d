#include "cwbound/constraints.hpp"

#include "cwbound/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cwbound {

std::string to_string(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "?";
}

Sense parse_sense(const std::string& s) {
  if (s == "<=") return Sense::LessEqual;
  if (s == ">=") return Sense::GreaterEqual;
  if (s == "=") return Sense::Equal;
  throw std::invalid_argument("unknown constraint sense '" + s + "'");
}

Rational LinearConstraint::evaluate(const std::map<int, Rational>& x) const {
  Rational sum = 0;
  for (const auto& [i, c] : coefficients) {
    auto it = x.find(i);
    if (it != x.end()) sum += c * it->second;
  }
  return sum;
}

bool LinearConstraint::satisfied_by(const std::map<int, Rational>& x) const {
  const Rational lhs = evaluate(x);
  switch (sense) {
    case Sense::LessEqual: return lhs <= rhs;
    case Sense::GreaterEqual: return lhs >= rhs;
    case Sense::Equal: return lhs == rhs;
  }
  return false;
}

std::string to_string(const LinearConstraint& c, const std::string& variable_prefix) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, coef] : c.coefficients) {
    out << (first ? "" : " + ") << coef.get_str() << "*" << variable_prefix << i;
    first = false;
  }
  if (first) out << "0";
  out << " " << to_string(c.sense) << " " << c.rhs.get_str() << "   [" << c.provenance << "]";
  return out.str();
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Delsarte: return "delsarte";
    case Family::TCap: return "t-cap";
    case Family::Pairs: return "pairs";
    case Family::DPairs: return "d-pairs";
    case Family::Columns: return "columns";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : all_families()) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown constraint family '" + name + "'");
}

FamilySet parse_families(const std::string& list) {
  FamilySet out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.insert(parse_family(item));
  }
  return out;
}

std::string to_string(const FamilySet& families) {
  std::string s;
  for (Family f : families) s += (s.empty() ? "" : ",") + to_string(f);
  return s;
}

const FamilySet& all_families() {
  static const FamilySet all{Family::Delsarte, Family::TCap, Family::Pairs, Family::DPairs, Family::Columns};
  return all;
}

int max_distance(int i, int j, const CodeParams& p) {
  const int s = i + j;
  const int a = s <= p.w ? s : s - 2 * (s - p.w);
  const int b = s <= p.n - p.w ? s : s - 2 * (s - (p.n - p.w));
  return a + b;
}

DoublyParams cross_block_params(int i, int j, const CodeParams& p) {
  if (i == j || max_distance(i, j, p) != p.d) {
    throw std::invalid_argument("cross_block_params needs i != j with m_{i,j} = d");
  }
  auto block_weight = [&](int t) { return std::abs(i + j - t); };
  auto block_length = [&](int t) { return t < i + j ? i : t - i; };
  const int t1 = p.w;
  const int t2 = p.n - p.w;
  return DoublyParams::make(block_weight(t1), block_length(t1), block_weight(t2), block_length(t2), p.d);
}

PeerBoundSet build_peer_bounds(const CodeParams& p, const TBoundTable& table) {
  PeerBoundSet peers;
  const auto h = p.half_distances();
  for (int i : h) {
    TLookup t = lookup_t(DoublyParams::make(i, p.w, i, p.n - p.w, p.d), table);
    peers.single.emplace(i, PeerSource{t.bound, t});
  }
  for (int i : h) {
    for (int j : h) {
      if (i == j || max_distance(i, j, p) != p.d) continue;
      // P_ij caps |S_2i(c)| given a word in S_2j(c).
      TLookup t = lookup_t(cross_block_params(j, i, p), table);
      peers.cross.emplace(std::pair(i, j), PeerSource{t.bound, t});
    }
  }
  return peers;
}

namespace {

void put(LinearConstraint& c, int i, const Rational& v) {
  if (v != 0) c.coefficients[i] += v;
  auto it = c.coefficients.find(i);
  if (it != c.coefficients.end() && it->second == 0) c.coefficients.erase(it);
}

std::string set_label(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

Rational inverse(const Integer& v) { return make_rational(Integer(1), v); }

void bron_kerbosch(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   const std::map<int, std::set<int>>& adj, std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  while (!p.empty()) {
    const int v = p.front();
    std::vector<int> p2, x2;
    for (int u : p) {
      if (adj.at(v).count(u)) p2.push_back(u);
    }
    for (int u : x) {
      if (adj.at(v).count(u)) x2.push_back(u);
    }
    r.push_back(v);
    bron_kerbosch(r, p2, x2, adj, out);
    r.pop_back();
    p.erase(p.begin());
    x.push_back(v);
  }
}

}  // namespace

std::vector<LinearConstraint> delsarte_constraints(const CodeParams& p) {
  std::vector<LinearConstraint> out;
  const auto h = p.half_distances();
  for (int k = 1; k <= p.w; ++k) {
    LinearConstraint c{Sense::GreaterEqual, {}, Rational(-1), "delsarte(" + std::to_string(k) + ")"};
    for (int i : h) put(c, i, delsarte_q(k, i, p.n, p.w));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LinearConstraint> t_cap_constraints(const CodeParams& p, const PeerBoundSet& peers) {
  std::vector<LinearConstraint> out;
  for (int i : p.half_distances()) {
    LinearConstraint c{Sense::LessEqual, {}, Rational(peers.p(i)), "t-cap(" + std::to_string(i) + ")"};
    put(c, i, Rational(1));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LinearConstraint> pair_and_set_constraints(const CodeParams& p, const PeerBoundSet& peers) {
  const auto h = p.half_distances();
  std::map<int, std::set<int>> adj;
  for (int i : h) {
    adj[i];
    for (int j : h) {
      if (i != j && max_distance(i, j, p) < p.d) adj[i].insert(j);
    }
  }
  std::vector<std::vector<int>> cliques;
  std::vector<int> r;
  bron_kerbosch(r, h, {}, adj, cliques);

  std::vector<LinearConstraint> out;
  for (auto& clique : cliques) {
    if (clique.size() < 2) continue;
    std::sort(clique.begin(), clique.end());
    LinearConstraint c{Sense::LessEqual, {}, Rational(1),
                       clique.size() == 2 ? "pair(" + std::to_string(clique[0]) + "," + std::to_string(clique[1]) + ")"
                                          : "set(" + set_label(clique) + ")"};
    for (int i : clique) put(c, i, inverse(peers.p(i)));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const LinearConstraint& a, const LinearConstraint& b) { return a.provenance < b.provenance; });
  return out;
}

std::vector<LinearConstraint> d_equal_constraints(const CodeParams& p, const PeerBoundSet& peers) {
  const auto h = p.half_distances();
  std::vector<LinearConstraint> out;
  for (int i : h) {
    for (int j : h) {
      if (j <= i || max_distance(i, j, p) != p.d) continue;

      std::vector<int> members{i, j};
      std::vector<int> rest;
      for (int k : h) {
        if (k == i || k == j) continue;
        const bool fits = std::all_of(members.begin(), members.end(),
                                      [&](int l) { return max_distance(k, l, p) < p.d; });
        if (fits) {
          members.push_back(k);
          rest.push_back(k);
        }
      }
      std::sort(members.begin(), members.end());

      const Integer& pi = peers.p(i);
      const Integer& pj = peers.p(j);
      const Integer& pij = peers.p(i, j);
      const Integer& pji = peers.p(j, i);
      const Rational balance = make_rational(pij, pi) + make_rational(pji, pj);

      auto label = [&](const std::string& variant) {
        const std::string pair = std::to_string(i) + "," + std::to_string(j);
        if (rest.empty()) return "d-pair(" + pair + "," + variant + ")";
        return "d-set(" + set_label(members) + "," + pair + "," + variant + ")";
      };
      auto with_rest = [&](LinearConstraint c) {
        for (int k : rest) put(c, k, inverse(peers.p(k)));
        return c;
      };

      if (balance >= 1) {
        LinearConstraint left{Sense::LessEqual, {}, Rational(1), label("left")};
        put(left, i, make_rational(pj - pji, pj * pij));
        put(left, j, inverse(pj));
        out.push_back(with_rest(std::move(left)));

        LinearConstraint right{Sense::LessEqual, {}, Rational(1), label("right")};
        put(right, i, inverse(pi));
        put(right, j, make_rational(pi - pij, pi * pji));
        out.push_back(with_rest(std::move(right)));
      }
      if (balance <= 1) {
        LinearConstraint plain{Sense::LessEqual, {}, Rational(1), label("plain")};
        put(plain, i, inverse(pi));
        put(plain, j, inverse(pj));
        out.push_back(with_rest(std::move(plain)));
      }
    }
  }
  return out;
}

std::pair<Integer, Integer> column_quotient(int n, int w, std::int64_t size, int k) {
  const Integer total = Integer(static_cast<long>(size)) * krawtchouk_minus(k, n, w);
  const Integer c = binomial(n, k);
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), total.get_mpz_t(), c.get_mpz_t());
  return {q, r};
}

Rational column_rhs(int n, int w, std::int64_t size, int k) {
  const auto [q, r] = column_quotient(n, w, size, k);
  const Integer m(static_cast<long>(size));
  const Integer c = binomial(n, k);
  const Integer pairs = (c - r) * q * (m - q) + r * (q + 1) * (m - q - 1);
  return make_rational(2 * pairs, m);
}

std::vector<LinearConstraint> column_constraints(const CodeParams& p, const std::vector<int>& ks, ColumnSides sides) {
  if (!p.size || *p.size < 2) {
    throw std::invalid_argument("column constraints need an assumed code size M >= 2");
  }
  const std::int64_t m = *p.size;
  const std::string tag = "," + std::to_string(m) + ")";
  std::vector<LinearConstraint> out;
  for (int k : ks) {
    if (k < 1 || k > p.n) throw std::invalid_argument("column index k out of range: " + std::to_string(k));
    const Rational rhs = column_rhs(p.n, p.w, m, k);
    LinearConstraint minus{Sense::LessEqual, {}, rhs, "columns-minus(" + std::to_string(k) + tag};
    for (int i : p.half_distances()) put(minus, i, Rational(krawtchouk_minus(k, p.n, 2 * i)));
    out.push_back(std::move(minus));
    if (sides == ColumnSides::Both) {
      LinearConstraint plus{Sense::LessEqual, {}, rhs - Rational(Integer(static_cast<long>(m - 1)) * binomial(p.n, k)),
                            "columns-plus(" + std::to_string(k) + tag};
      for (int i : p.half_distances()) put(plus, i, Rational(-krawtchouk_plus(k, p.n, 2 * i)));
      out.push_back(std::move(plus));
    }
  }
  return out;
}

LinearConstraint size_equality(const std::vector<int>& keys, std::int64_t size) {
  LinearConstraint c{Sense::Equal, {}, Rational(Integer(static_cast<long>(size - 1))),
                     "size-equality(" + std::to_string(size) + ")"};
  for (int i : keys) put(c, i, Rational(1));
  return c;
}

std::pair<Integer, Integer> split_pair_counts(std::int64_t size) {
  const Integer m(static_cast<long>(size));
  if (size % 2 == 0) return {m * m / 4, m * (m - 2) / 4};
  return {(m * m - 1) / 4, (m - 1) * (m - 1) / 4};
}

std::vector<LinearConstraint> binary_constraints(int n, int d, std::optional<std::int64_t> size) {
  if (d < 1 || d > n) throw std::invalid_argument("binary constraints need 1 <= d <= n");
  std::vector<LinearConstraint> out;
  for (int k = 0; k <= n; ++k) {
    const Integer c = binomial(n, k);
    Rational rhs = -Rational(c);
    std::string tag = "binary-delsarte(" + std::to_string(k) + ")";
    if (size && *size % 2 == 1) {
      rhs = make_rational(Integer(static_cast<long>(1 - *size)) * c, Integer(static_cast<long>(*size)));
      tag = "binary-delsarte-odd(" + std::to_string(k) + "," + std::to_string(*size) + ")";
    }
    LinearConstraint base{Sense::GreaterEqual, {}, rhs, tag};
    for (int i = d; i <= n; ++i) put(base, i, Rational(krawtchouk(k, n, i)));
    out.push_back(std::move(base));
  }
  if (size) {
    const Integer m(static_cast<long>(*size));
    const auto [m1, m2] = split_pair_counts(*size);
    const std::string tag = "," + std::to_string(*size) + ")";
    for (int k = 0; k <= n; ++k) {
      const Integer c = binomial(n, k);
      LinearConstraint minus{Sense::LessEqual, {}, make_rational(2 * m1 * c, m),
                             "binary-split-minus(" + std::to_string(k) + tag};
      LinearConstraint plus{Sense::LessEqual, {}, -make_rational(2 * m2 * c, m),
                            "binary-split-plus(" + std::to_string(k) + tag};
      for (int i = d; i <= n; ++i) {
        put(minus, i, Rational(krawtchouk_minus(k, n, i)));
        put(plus, i, Rational(-krawtchouk_plus(k, n, i)));
      }
      out.push_back(std::move(minus));
      out.push_back(std::move(plus));
    }
  }
  return out;
}

std::vector<LinearConstraint> deduplicate(std::vector<LinearConstraint> constraints) {
  struct Slot {
    std::size_t index;
    Rational scaled_rhs;
  };
  std::map<std::string, Slot> seen;
  std::vector<bool> keep(constraints.size(), true);

  for (std::size_t idx = 0; idx < constraints.size(); ++idx) {
    const LinearConstraint& c = constraints[idx];
    // Fold >= into <= by negation; equalities are compared up to sign.
    Rational sign = c.sense == Sense::GreaterEqual ? -1 : 1;
    Rational scale = 0;
    for (const auto& [i, v] : c.coefficients) scale = std::max(scale, Rational(abs(v)));
    if (scale == 0) {
      const Rational r = sign * c.rhs;
      const bool vacuous = c.sense == Sense::Equal ? c.rhs == 0 : r >= 0;
      if (vacuous) keep[idx] = false;
      continue;
    }
    if (c.sense != Sense::Equal && sign * c.rhs >= 0 &&
        std::all_of(c.coefficients.begin(), c.coefficients.end(),
                    [&sign](const auto& kv) { return sign * kv.second <= 0; })) {
      keep[idx] = false;  // implied by x >= 0
      continue;
    }
    if (c.sense == Sense::Equal && c.coefficients.begin()->second < 0) sign = -1;
    std::string key = c.sense == Sense::Equal ? "=" : "<";
    for (const auto& [i, v] : c.coefficients) {
      key += std::to_string(i) + ":" + Rational(sign * v / scale).get_str() + ";";
    }
    const Rational scaled_rhs = sign * c.rhs / scale;
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, Slot{idx, scaled_rhs});
      continue;
    }
    Slot& slot = it->second;
    if (c.sense == Sense::Equal) {
      // Distinct right-hand sides on the same equality make the system
      // infeasible; keep both so the solver reports it.
      if (scaled_rhs == slot.scaled_rhs) keep[idx] = false;
    } else if (scaled_rhs < slot.scaled_rhs) {
      // Tighter copy takes the earlier position.
      constraints[slot.index] = c;
      slot.scaled_rhs = scaled_rhs;
      keep[idx] = false;
    } else {
      keep[idx] = false;
    }
  }
  std::vector<LinearConstraint> out;
  for (std::size_t idx = 0; idx < constraints.size(); ++idx) {
    if (keep[idx]) out.push_back(std::move(constraints[idx]));
  }
  return out;
}

std::vector<LinearConstraint> generate(const CodeParams& p, const FamilySet& families, const PeerBoundSet& peers) {
  std::vector<LinearConstraint> out;
  auto append = [&out](std::vector<LinearConstraint> more) {
    for (auto& c : more) out.push_back(std::move(c));
  };
  if (families.count(Family::Delsarte)) append(delsarte_constraints(p));
  if (families.count(Family::TCap)) append(t_cap_constraints(p, peers));
  if (families.count(Family::Pairs)) append(pair_and_set_constraints(p, peers));
  if (families.count(Family::DPairs)) append(d_equal_constraints(p, peers));
  return deduplicate(std::move(out));
}

}  // namespace cwbound
