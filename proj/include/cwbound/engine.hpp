#pragma once

// Orchestrates normalization, Johnson recursion, LP assembly and M-descent
// into certified integer upper bounds on A(n, d, w) and A(n, d).

#include "cwbound/constraints.hpp"
#include "cwbound/params.hpp"
#include "cwbound/simplex.hpp"
#include "cwbound/tbound.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cwbound {

/// Raised when a solver result fails its own certificate, or when an LP
/// without any size assumption is infeasible (a generator defect).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EngineOptions {
  FamilySet families = all_families();
  /// k values for column constraints; empty selects {1, ..., min(n, 8)}.
  std::vector<int> column_ks;
  /// An externally proven upper bound for the top-level query.
  std::optional<Integer> known_bound;
  bool use_johnson = true;
  std::size_t max_descent_steps = 10000;
};

/// One solved LP together with what it proves.
struct LPRecord {
  std::string role;  // "lp", "descent", "cross-check", "binary-lp", "binary-descent"
  std::string instance;
  std::optional<std::int64_t> assumed_size;
  LPProblem problem;
  LPSolution solution;

  /// floor(optimum) + 1 for an unconditional sum-maximizing LP.
  std::optional<Integer> implied_bound() const;
  /// True when this LP shows no code of size assumed_size exists.
  bool rules_out_size() const;
};

struct BoundResult {
  std::string query;
  std::optional<CodeParams> params;  // canonical form; empty for closed forms
  Integer bound;
  std::string method;  // "exact", "lp", "johnson", "known-bound", "trivial", "m-descent"
  std::vector<std::string> derivation;
  std::vector<LPRecord> lps;
  std::vector<TLookup> t_entries;
  /// Starting bound of a descent that is not itself certified by an LP here.
  std::optional<Integer> assumed_bound;
  std::string assumed_source;
};

/// Result of the fixed-M maximization check: maximize the sum under the
/// M-independent families plus the P^- column inequalities at M.
struct CrossCheck {
  LPRecord record;
  Rational optimum;
  Integer lp_value;  // floor(optimum) + 1
  Integer bound;     // M - 1 when lp_value < M, else M
};

class BoundEngine {
 public:
  explicit BoundEngine(TBoundTable table = TBoundTable::seed(), EngineOptions options = {});

  const EngineOptions& options() const { return options_; }
  const TBoundTable& table() const { return table_; }

  /// Best bound on A(n, d, w): closed forms, LP, Johnson, known bound, then
  /// M-descent when columns are enabled.
  BoundResult bound(int n, int d, int w);

  /// floor(max sum A_2i) + 1 over the M-independent families.
  BoundResult lp_bound(const CodeParams& p);

  /// Rules out sizes start, start - 1, ... until the size-M system is
  /// feasible; returns that M.
  BoundResult m_descent(const CodeParams& p, const Integer& start, const std::string& start_source);

  CrossCheck cross_check(const CodeParams& p, std::int64_t size);

  /// min of floor(n/w A(n-1,d,w-1)) and floor(n/(n-w) A(n-1,d,w)), with the
  /// sub-bounds from the memoized engine.
  Integer johnson_bound(const CodeParams& p);

  /// Bound on A(n, d) for unrestricted binary codes.
  BoundResult binary_bound(int n, int d, std::optional<Integer> start = std::nullopt);

  std::vector<int> column_ks(const CodeParams& p) const;

 private:
  Integer memo_bound(int n, int d, int w);
  BoundResult compute(int n, int d, int w, const std::optional<Integer>& known);
  std::vector<LinearConstraint> fixed_constraints(const CodeParams& p, BoundResult* trace);
  LPRecord run_lp(std::string role, std::string instance, std::optional<std::int64_t> size, LPProblem problem);

  TBoundTable table_;
  EngineOptions options_;
  std::mutex memo_mutex_;
  std::map<std::tuple<int, int, int>, Integer> memo_;
};

}  // namespace cwbound
