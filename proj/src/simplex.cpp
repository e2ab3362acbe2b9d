#include "cwbound/simplex.hpp"

#include "cwbound/dense_simplex.hpp"

#include <map>
#include <stdexcept>

namespace cwbound {

std::string half_distance_label(int i) { return "A_" + std::to_string(2 * i); }
std::string distance_label(int i) { return "A_" + std::to_string(i); }

namespace {

LPProblem assemble_with(const std::vector<int>& keys, const std::vector<LinearConstraint>& constraints,
                        std::string (*label)(int)) {
  LPProblem lp;
  std::map<int, Eigen::Index> column;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    column[keys[j]] = static_cast<Eigen::Index>(j);
    lp.variables.push_back(label(keys[j]));
  }
  const auto n = static_cast<Eigen::Index>(keys.size());
  const auto m = static_cast<Eigen::Index>(constraints.size());
  lp.objective = RationalVector::Ones(n);
  lp.coefficients = RationalMatrix::Zero(m, n);
  lp.rhs = RationalVector::Zero(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const LinearConstraint& c = constraints[r];
    for (const auto& [key, value] : c.coefficients) {
      auto it = column.find(key);
      if (it == column.end()) {
        throw std::invalid_argument("constraint " + c.provenance + " references undeclared variable " +
                                    std::to_string(key));
      }
      lp.coefficients(r, it->second) = value;
    }
    lp.senses.push_back(c.sense);
    lp.rhs(r) = c.rhs;
    lp.provenance.push_back(c.provenance);
  }
  return lp;
}

RowKind row_kind(Sense s) {
  switch (s) {
    case Sense::LessEqual: return RowKind::LessEqual;
    case Sense::GreaterEqual: return RowKind::GreaterEqual;
    case Sense::Equal: return RowKind::Equal;
  }
  return RowKind::Equal;
}

std::string row_name(const LPProblem& lp, Eigen::Index r) {
  return "row " + std::to_string(r) + " [" + (r < static_cast<Eigen::Index>(lp.provenance.size()) ? lp.provenance[r] : "") + "]";
}

bool sign_ok(Sense s, const Rational& y) {
  switch (s) {
    case Sense::LessEqual: return y >= 0;
    case Sense::GreaterEqual: return y <= 0;
    case Sense::Equal: return true;
  }
  return false;
}

bool holds(Sense s, const Rational& lhs, const Rational& rhs) {
  switch (s) {
    case Sense::LessEqual: return lhs <= rhs;
    case Sense::GreaterEqual: return lhs >= rhs;
    case Sense::Equal: return lhs == rhs;
  }
  return false;
}

std::optional<std::string> shape_violation(const LPProblem& lp, const LPSolution& s) {
  const Eigen::Index n = lp.variable_count();
  const Eigen::Index m = lp.constraint_count();
  if (lp.objective.size() != n || lp.coefficients.rows() != m || lp.coefficients.cols() != n ||
      lp.rhs.size() != m) {
    return "malformed problem: dimension mismatch";
  }
  if (s.status != LPStatus::Infeasible && s.primal.size() != n) return "primal vector has wrong length";
  if (s.status != LPStatus::Unbounded && s.dual.size() != m) return "dual vector has wrong length";
  if (s.status == LPStatus::Unbounded && s.ray.size() != n) return "ray vector has wrong length";
  return std::nullopt;
}

std::optional<std::string> primal_violation(const LPProblem& lp, const RationalVector& x) {
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0) return "primal feasibility: " + lp.variables[j] + " is negative";
  }
  const RationalVector ax = lp.coefficients * x;
  for (Eigen::Index r = 0; r < lp.constraint_count(); ++r) {
    if (!holds(lp.senses[r], ax(r), lp.rhs(r))) return "primal feasibility: " + row_name(lp, r) + " violated";
  }
  return std::nullopt;
}

std::optional<std::string> dual_sign_violation(const LPProblem& lp, const RationalVector& y) {
  for (Eigen::Index r = 0; r < lp.constraint_count(); ++r) {
    if (!sign_ok(lp.senses[r], y(r))) return "dual feasibility: multiplier of " + row_name(lp, r) + " has wrong sign";
  }
  return std::nullopt;
}

}  // namespace

LPProblem assemble_constant_weight(const std::vector<int>& half_distances,
                                   const std::vector<LinearConstraint>& constraints) {
  return assemble_with(half_distances, constraints, &half_distance_label);
}

LPProblem assemble_binary(const std::vector<int>& distances, const std::vector<LinearConstraint>& constraints) {
  return assemble_with(distances, constraints, &distance_label);
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

LPStatus parse_status(const std::string& s) {
  if (s == "optimal") return LPStatus::Optimal;
  if (s == "infeasible") return LPStatus::Infeasible;
  if (s == "unbounded") return LPStatus::Unbounded;
  throw std::invalid_argument("unknown LP status '" + s + "'");
}

LPSolution solve(const LPProblem& problem) {
  std::vector<RowKind> kinds;
  for (Sense s : problem.senses) kinds.push_back(row_kind(s));
  DenseSimplex<Rational> simplex(problem.coefficients, kinds, problem.rhs, problem.objective);
  auto outcome = simplex.solve();

  LPSolution out;
  out.pivots = outcome.pivots;
  using Status = SimplexOutcome<Rational>::Status;
  switch (outcome.status) {
    case Status::Optimal:
      out.status = LPStatus::Optimal;
      out.optimum = outcome.objective;
      out.primal = std::move(outcome.primal);
      out.dual = std::move(outcome.dual);
      break;
    case Status::Infeasible:
      out.status = LPStatus::Infeasible;
      out.dual = std::move(outcome.dual);
      break;
    case Status::Unbounded:
      out.status = LPStatus::Unbounded;
      out.primal = std::move(outcome.primal);
      out.ray = std::move(outcome.ray);
      break;
  }
  return out;
}

std::optional<std::string> certificate_violation(const LPProblem& lp, const LPSolution& s) {
  if (auto v = shape_violation(lp, s)) return v;
  const Eigen::Index n = lp.variable_count();

  switch (s.status) {
    case LPStatus::Optimal: {
      if (auto v = primal_violation(lp, s.primal)) return v;
      if (lp.objective.dot(s.primal) != s.optimum) return "objective value does not match primal vector";
      if (auto v = dual_sign_violation(lp, s.dual)) return v;
      const RationalVector yta = lp.coefficients.transpose() * s.dual;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (yta(j) < lp.objective(j)) return "dual feasibility: reduced cost of " + lp.variables[j] + " is positive";
      }
      if (lp.rhs.dot(s.dual) != s.optimum) return "duality gap: dual objective differs from optimum";
      return std::nullopt;
    }
    case LPStatus::Infeasible: {
      if (auto v = dual_sign_violation(lp, s.dual)) return v;
      const RationalVector yta = lp.coefficients.transpose() * s.dual;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (yta(j) < 0) return "farkas: combined coefficient of " + lp.variables[j] + " is negative";
      }
      if (!(lp.rhs.dot(s.dual) < 0)) return "farkas: combined right-hand side is not negative";
      return std::nullopt;
    }
    case LPStatus::Unbounded: {
      if (auto v = primal_violation(lp, s.primal)) return v;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (s.ray(j) < 0) return "ray: negative component";
      }
      const RationalVector ar = lp.coefficients * s.ray;
      for (Eigen::Index r = 0; r < lp.constraint_count(); ++r) {
        if (!holds(lp.senses[r], ar(r), Rational(0))) return "ray: leaves " + row_name(lp, r);
      }
      if (!(lp.objective.dot(s.ray) > 0)) return "ray: does not improve the objective";
      return std::nullopt;
    }
  }
  return "unknown status";
}

bool check_certificate(const LPProblem& problem, const LPSolution& solution) {
  return !certificate_violation(problem, solution).has_value();
}

}  // namespace cwbound
