#include "cwbound/engine.hpp"

#include "cwbound/combinatorics.hpp"

#include <algorithm>

namespace cwbound {

namespace {

std::string query_name(int n, int d, int w) {
  return "A(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(w) + ")";
}

std::string instance_name(const CodeParams& p) { return query_name(p.n, p.d, p.w); }

bool uses_peers(const FamilySet& f) {
  return f.count(Family::TCap) || f.count(Family::Pairs) || f.count(Family::DPairs);
}

void record_peers(const PeerBoundSet& peers, const FamilySet& families, BoundResult& out) {
  if (families.count(Family::TCap) || families.count(Family::Pairs)) {
    for (const auto& [i, src] : peers.single) out.t_entries.push_back(src.lookup);
  }
  if (families.count(Family::DPairs)) {
    for (const auto& [ij, src] : peers.cross) out.t_entries.push_back(src.lookup);
  }
  std::sort(out.t_entries.begin(), out.t_entries.end(),
            [](const TLookup& a, const TLookup& b) { return a.key < b.key; });
  out.t_entries.erase(std::unique(out.t_entries.begin(), out.t_entries.end(),
                                  [](const TLookup& a, const TLookup& b) { return a.key == b.key; }),
                      out.t_entries.end());
}

}  // namespace

std::optional<Integer> LPRecord::implied_bound() const {
  if (assumed_size || solution.status != LPStatus::Optimal) return std::nullopt;
  return floor(solution.optimum) + 1;
}

bool LPRecord::rules_out_size() const {
  if (!assumed_size) return false;
  if (solution.status == LPStatus::Infeasible) return true;
  return solution.status == LPStatus::Optimal && floor(solution.optimum) + 1 < *assumed_size;
}

BoundEngine::BoundEngine(TBoundTable table, EngineOptions options)
    : table_(std::move(table)), options_(std::move(options)) {}

std::vector<int> BoundEngine::column_ks(const CodeParams& p) const {
  if (!options_.column_ks.empty()) return options_.column_ks;
  std::vector<int> ks;
  for (int k = 1; k <= std::min(p.n, 8); ++k) ks.push_back(k);
  return ks;
}

LPRecord BoundEngine::run_lp(std::string role, std::string instance, std::optional<std::int64_t> size,
                             LPProblem problem) {
  LPRecord rec{std::move(role), std::move(instance), size, std::move(problem), {}};
  rec.solution = solve(rec.problem);
  if (auto v = certificate_violation(rec.problem, rec.solution)) {
    throw InternalError("LP certificate check failed for " + rec.instance + ": " + *v);
  }
  return rec;
}

std::vector<LinearConstraint> BoundEngine::fixed_constraints(const CodeParams& p, BoundResult* trace) {
  PeerBoundSet peers;
  if (uses_peers(options_.families)) {
    peers = build_peer_bounds(p, table_);
    if (trace) record_peers(peers, options_.families, *trace);
  }
  return generate(p, options_.families, peers);
}

BoundResult BoundEngine::lp_bound(const CodeParams& p) {
  BoundResult out;
  out.query = instance_name(p);
  out.params = p;
  out.method = "lp";
  auto constraints = fixed_constraints(p, &out);
  LPRecord rec = run_lp("lp", out.query, std::nullopt, assemble_constant_weight(p.half_distances(), constraints));
  switch (rec.solution.status) {
    case LPStatus::Infeasible:
      throw InternalError("size-free LP for " + out.query + " is infeasible");
    case LPStatus::Unbounded:
      out.bound = binomial(p.n, p.w);
      out.method = "trivial";
      out.derivation.push_back("LP unbounded under families {" + to_string(options_.families) +
                               "}; fall back to C(n,w)");
      break;
    case LPStatus::Optimal:
      out.bound = *rec.implied_bound();
      out.derivation.push_back("LP optimum " + to_string(rec.solution.optimum) + " -> bound " +
                               to_string(out.bound));
      break;
  }
  out.lps.push_back(std::move(rec));
  return out;
}

BoundResult BoundEngine::m_descent(const CodeParams& p, const Integer& start, const std::string& start_source) {
  BoundResult out;
  out.query = instance_name(p);
  out.params = p;
  out.method = "m-descent";
  out.bound = start;
  out.assumed_bound = start;
  out.assumed_source = start_source;

  const auto fixed = fixed_constraints(p, &out);
  const auto ks = column_ks(p);
  const auto keys = p.half_distances();

  std::size_t steps = 0;
  while (out.bound >= 2) {
    if (steps++ == options_.max_descent_steps) {
      out.derivation.push_back("descent stopped after " + std::to_string(options_.max_descent_steps) + " steps");
      break;
    }
    const std::int64_t m = out.bound.get_si();
    CodeParams at = p;
    at.size = m;
    auto constraints = fixed;
    for (auto& c : column_constraints(at, ks, ColumnSides::Both)) constraints.push_back(std::move(c));
    constraints.push_back(size_equality(keys, m));
    LPRecord rec = run_lp("descent", out.query, m, assemble_constant_weight(keys, deduplicate(std::move(constraints))));
    const bool ruled_out = rec.rules_out_size();
    out.lps.push_back(std::move(rec));
    if (!ruled_out) {
      out.derivation.push_back("M=" + std::to_string(m) + " feasible: stop");
      break;
    }
    out.derivation.push_back("M=" + std::to_string(m) + " infeasible: no code of this size");
    out.bound -= 1;
  }
  return out;
}

CrossCheck BoundEngine::cross_check(const CodeParams& p, std::int64_t size) {
  CodeParams at = p;
  at.size = size;
  auto constraints = fixed_constraints(p, nullptr);
  for (auto& c : column_constraints(at, column_ks(p), ColumnSides::MinusOnly)) constraints.push_back(std::move(c));
  LPRecord rec = run_lp("cross-check", instance_name(p), size,
                        assemble_constant_weight(p.half_distances(), deduplicate(std::move(constraints))));
  CrossCheck out{std::move(rec), {}, {}, Integer(size)};
  if (out.record.solution.status == LPStatus::Optimal) {
    out.optimum = out.record.solution.optimum;
    out.lp_value = floor(out.optimum) + 1;
    if (out.lp_value < size) out.bound = size - 1;
  } else if (out.record.solution.status == LPStatus::Infeasible) {
    out.bound = size - 1;
  }
  return out;
}

Integer BoundEngine::memo_bound(int n, int d, int w) {
  const Normalized norm = normalize(n, d, w);
  if (norm.exact) return *norm.exact;
  const auto key = std::tuple(norm.params.n, norm.params.d, norm.params.w);
  {
    std::lock_guard lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Integer value = compute(n, d, w, std::nullopt).bound;
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(key, value);
  return value;
}

Integer BoundEngine::johnson_bound(const CodeParams& p) {
  const Integer by_weight = Integer(p.n) * memo_bound(p.n - 1, p.d, p.w - 1) / p.w;
  const Integer by_length = Integer(p.n) * memo_bound(p.n - 1, p.d, p.w) / (p.n - p.w);
  return std::min(by_weight, by_length);
}

BoundResult BoundEngine::bound(int n, int d, int w) { return compute(n, d, w, options_.known_bound); }

BoundResult BoundEngine::compute(int n, int d, int w, const std::optional<Integer>& known) {
  const Normalized norm = normalize(n, d, w);
  BoundResult out;
  out.query = query_name(n, d, w);
  out.derivation = norm.steps;
  if (norm.exact) {
    out.bound = *norm.exact;
    out.method = "exact";
    return out;
  }
  const CodeParams p = norm.params;
  out.params = p;

  out.bound = binomial(p.n, p.w);
  out.method = "trivial";
  auto offer = [&out](const Integer& value, const std::string& method) {
    if (value < out.bound) {
      out.bound = value;
      out.method = method;
    }
  };

  FamilySet fixed = options_.families;
  fixed.erase(Family::Columns);
  if (!fixed.empty()) {
    BoundResult lp = lp_bound(p);
    for (auto& s : lp.derivation) out.derivation.push_back(s);
    for (auto& rec : lp.lps) out.lps.push_back(std::move(rec));
    out.t_entries = std::move(lp.t_entries);
    offer(lp.bound, lp.method);
  }
  if (options_.use_johnson && p.w >= 1) {
    const Integer j = johnson_bound(p);
    out.derivation.push_back("Johnson recursion -> " + to_string(j));
    offer(j, "johnson");
  }
  if (known) {
    out.derivation.push_back("known bound " + to_string(*known));
    offer(*known, "known-bound");
  }

  const Integer start = out.bound;
  const std::string start_method = out.method;
  if (options_.families.count(Family::Columns)) {
    BoundResult descent = m_descent(p, start, start_method);
    if (descent.bound < start) out.method = "m-descent";
    out.bound = descent.bound;
    for (auto& s : descent.derivation) out.derivation.push_back(s);
    for (auto& rec : descent.lps) out.lps.push_back(std::move(rec));
  }
  // Only the LP start is certified by a record in this result.
  if (start_method != "lp") {
    out.assumed_bound = start;
    out.assumed_source = start_method;
  }
  return out;
}

BoundResult BoundEngine::binary_bound(int n, int d, std::optional<Integer> start) {
  if (n < 1 || d < 1 || d > n) {
    throw std::invalid_argument("binary bound needs 1 <= d <= n, got (" + std::to_string(n) + "," +
                                std::to_string(d) + ")");
  }
  BoundResult out;
  out.query = "A(" + std::to_string(n) + "," + std::to_string(d) + ")";
  out.bound = Integer(1) << n;
  out.method = "trivial";

  std::vector<int> keys;
  for (int i = d; i <= n; ++i) keys.push_back(i);
  const std::string instance = out.query;

  if (options_.families.count(Family::Delsarte)) {
    LPRecord rec = run_lp("binary-lp", instance, std::nullopt,
                          assemble_binary(keys, deduplicate(binary_constraints(n, d, std::nullopt))));
    if (rec.solution.status == LPStatus::Infeasible) {
      throw InternalError("size-free binary LP for " + instance + " is infeasible");
    }
    if (auto b = rec.implied_bound(); b && *b < out.bound) {
      out.bound = *b;
      out.method = "lp";
      out.derivation.push_back("LP optimum " + to_string(rec.solution.optimum) + " -> bound " + to_string(*b));
    }
    out.lps.push_back(std::move(rec));
  }
  if (start && *start < out.bound) {
    out.bound = *start;
    out.method = "known-bound";
    out.derivation.push_back("known bound " + to_string(*start));
  }

  const std::string start_method = out.method;
  const Integer start_bound = out.bound;
  if (options_.families.count(Family::Columns)) {
    std::size_t steps = 0;
    while (out.bound >= 2 && steps++ < options_.max_descent_steps) {
      const std::int64_t m = out.bound.get_si();
      auto constraints = binary_constraints(n, d, m);
      constraints.push_back(size_equality(keys, m));
      LPRecord rec = run_lp("binary-descent", instance, m, assemble_binary(keys, deduplicate(std::move(constraints))));
      const bool ruled_out = rec.rules_out_size();
      out.lps.push_back(std::move(rec));
      if (!ruled_out) {
        out.derivation.push_back("M=" + std::to_string(m) + " feasible: stop");
        break;
      }
      out.derivation.push_back("M=" + std::to_string(m) + " infeasible: no code of this size");
      out.bound -= 1;
      out.method = "m-descent";
    }
  }
  if (start_method != "lp") {
    out.assumed_bound = start_bound;
    out.assumed_source = start_method;
  }
  return out;
}

}  // namespace cwbound
