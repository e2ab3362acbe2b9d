#pragma once

// Exact LP front end: problems over named variables with provenance-tagged
// rows, solved by DenseSimplex<Rational>, plus an independent certificate
// checker that uses nothing from the solver.

#include "cwbound/constraints.hpp"
#include "cwbound/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cwbound {

/// maximize objective . x  s.t.  row_r(x) (senses[r]) rhs[r],  x >= 0.
struct LPProblem {
  std::vector<std::string> variables;
  RationalVector objective;
  RationalMatrix coefficients;  // one row per constraint
  std::vector<Sense> senses;
  RationalVector rhs;
  std::vector<std::string> provenance;

  Eigen::Index variable_count() const { return static_cast<Eigen::Index>(variables.size()); }
  Eigen::Index constraint_count() const { return static_cast<Eigen::Index>(senses.size()); }
};

/// "A_{2i}" labels for constant-weight variables, "A_i" for binary ones.
std::string half_distance_label(int i);
std::string distance_label(int i);

/// Dense problem "maximize the sum of all variables" over the given keys.
/// Throws std::invalid_argument when a constraint references an undeclared
/// key.
LPProblem assemble_constant_weight(const std::vector<int>& half_distances,
                                   const std::vector<LinearConstraint>& constraints);
LPProblem assemble_binary(const std::vector<int>& distances, const std::vector<LinearConstraint>& constraints);

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus s);
LPStatus parse_status(const std::string& s);

struct LPSolution {
  LPStatus status = LPStatus::Optimal;
  Rational optimum;        // Optimal only
  RationalVector primal;   // Optimal / Unbounded: a feasible point
  RationalVector dual;     // Optimal: duals. Infeasible: Farkas multipliers.
  RationalVector ray;      // Unbounded: improving direction
  std::size_t pivots = 0;
};

LPSolution solve(const LPProblem& problem);

/// First violated certificate condition, or nullopt when the certificate
/// holds. Optimal: primal feasibility, dual sign feasibility, dual
/// feasibility (y^T A >= c) and zero duality gap. Infeasible: Farkas
/// conditions. Unbounded: feasible point plus improving recession ray.
std::optional<std::string> certificate_violation(const LPProblem& problem, const LPSolution& solution);

bool check_certificate(const LPProblem& problem, const LPSolution& solution);

}  // namespace cwbound
