#pragma once

// Two-phase primal simplex on a dense Eigen tableau, generic over an exact
// field type. Bland's rule (lowest index enters, lowest basic index leaves on
// ratio ties) makes the pivot sequence deterministic and cycle-free.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace cwbound {

enum class RowKind { LessEqual, GreaterEqual, Equal };

template <typename Scalar>
struct SimplexOutcome {
  enum class Status { Optimal, Infeasible, Unbounded } status = Status::Optimal;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Scalar objective{};
  Vector primal;  // structural variables
  /// Optimal: dual multipliers. Infeasible: Farkas multipliers. Both follow
  /// the row senses as given (>= 0 on <=, <= 0 on >=, free on =).
  Vector dual;
  /// Unbounded: a nonnegative improving direction.
  Vector ray;
  std::size_t pivots = 0;
};

/// maximize c.x  subject to  rows(a, kinds, b),  x >= 0.
template <typename Scalar>
class DenseSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Outcome = SimplexOutcome<Scalar>;

  DenseSimplex(const Matrix& a, const std::vector<RowKind>& kinds, const Vector& b, const Vector& c)
      : rows_(a.rows()), structural_(a.cols()), objective_(c) {
    flipped_.assign(rows_, false);
    unit_col_.assign(rows_, 0);

    // Column layout: structural | one slack or surplus per inequality |
    // one artificial per >= or = row (after making b >= 0) | rhs.
    std::vector<RowKind> kind(kinds);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (b(r) < 0) {
        flipped_[r] = true;
        if (kind[r] == RowKind::LessEqual) {
          kind[r] = RowKind::GreaterEqual;
        } else if (kind[r] == RowKind::GreaterEqual) {
          kind[r] = RowKind::LessEqual;
        }
      }
    }
    Eigen::Index slack_count = 0, art_count = 0;
    for (RowKind k : kind) {
      if (k != RowKind::Equal) ++slack_count;
      if (k != RowKind::LessEqual) ++art_count;
    }
    first_art_ = structural_ + slack_count;
    cols_ = first_art_ + art_count;
    rhs_col_ = cols_;

    tableau_ = Matrix::Zero(rows_ + 1, cols_ + 1);
    basis_.assign(rows_, 0);
    Eigen::Index next_slack = structural_, next_art = first_art_;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Scalar sign = flipped_[r] ? Scalar(-1) : Scalar(1);
      for (Eigen::Index j = 0; j < structural_; ++j) tableau_(r, j) = sign * a(r, j);
      tableau_(r, rhs_col_) = sign * b(r);
      if (kind[r] == RowKind::LessEqual) {
        tableau_(r, next_slack) = 1;
        unit_col_[r] = next_slack;
        basis_[r] = next_slack++;
      } else {
        if (kind[r] == RowKind::GreaterEqual) tableau_(r, next_slack++) = -1;
        tableau_(r, next_art) = 1;
        unit_col_[r] = next_art;
        basis_[r] = next_art++;
      }
    }
  }

  Outcome solve() {
    Outcome out;
    const Eigen::Index obj = rows_;

    // Phase 1: maximize -(sum of artificials).
    Vector phase1 = Vector::Zero(cols_);
    for (Eigen::Index j = first_art_; j < cols_; ++j) phase1(j) = -1;
    load_costs(phase1);
    if (first_art_ < cols_) {
      run(cols_, out);
      if (tableau_(obj, rhs_col_) != 0) {
        // Phase-1 optimum is negative: its duals are a Farkas certificate.
        out.status = Outcome::Status::Infeasible;
        out.dual = row_multipliers(phase1);
        return out;
      }
      drive_out_artificials(out);
    }

    // Phase 2 never lets an artificial re-enter.
    Vector phase2 = Vector::Zero(cols_);
    phase2.head(structural_) = objective_;
    load_costs(phase2);
    const Eigen::Index entering = run(first_art_, out);
    if (entering >= 0) {
      out.status = Outcome::Status::Unbounded;
      out.primal = primal();
      out.ray = Vector::Zero(structural_);
      if (entering < structural_) out.ray(entering) = 1;
      for (Eigen::Index r = 0; r < rows_; ++r) {
        if (basis_[r] < structural_) out.ray(basis_[r]) = -tableau_(r, entering);
      }
      return out;
    }
    out.status = Outcome::Status::Optimal;
    out.primal = primal();
    out.objective = -tableau_(obj, rhs_col_);
    out.dual = row_multipliers(phase2);
    return out;
  }

 private:
  // Reduced costs d_j = c_j - c_B B^-1 A_j in the last row; its rhs cell
  // holds minus the current objective value.
  void load_costs(const Vector& costs) {
    costs_ = costs;
    const Eigen::Index obj = rows_;
    for (Eigen::Index j = 0; j < cols_; ++j) tableau_(obj, j) = costs(j);
    tableau_(obj, rhs_col_) = 0;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Scalar cb = costs(basis_[r]);
      if (cb != 0) tableau_.row(obj) -= cb * tableau_.row(r);
    }
  }

  // Pivots until optimal over columns [0, limit). Returns -1 when optimal or
  // the entering column of an unbounded direction.
  Eigen::Index run(Eigen::Index limit, Outcome& out) {
    const Eigen::Index obj = rows_;
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (tableau_(obj, j) > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return -1;

      Eigen::Index leaving = -1;
      Scalar best_ratio;
      for (Eigen::Index r = 0; r < rows_; ++r) {
        const Scalar& coef = tableau_(r, entering);
        if (coef <= 0) continue;
        Scalar ratio = tableau_(r, rhs_col_) / coef;
        if (leaving < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return entering;
      pivot(leaving, entering);
      ++out.pivots;
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Scalar p = tableau_(r, c);
    tableau_.row(r) /= p;
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const Scalar f = tableau_(i, c);
      if (f != 0) tableau_.row(i) -= f * tableau_.row(r);
    }
    basis_[r] = c;
  }

  void drive_out_artificials(Outcome& out) {
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (basis_[r] < first_art_) continue;
      for (Eigen::Index j = 0; j < first_art_; ++j) {
        if (tableau_(r, j) != 0) {
          pivot(r, j);
          ++out.pivots;
          break;
        }
      }
      // A row with no nonzero outside the artificials is redundant; its
      // artificial stays basic at level zero.
    }
  }

  Vector primal() const {
    Vector x = Vector::Zero(structural_);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x(basis_[r]) = tableau_(r, rhs_col_);
    }
    return x;
  }

  // y_r = c_u - d_u for the column u that started as e_r, mapped back
  // through any row negation.
  Vector row_multipliers(const Vector& costs) const {
    Vector y(rows_);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Eigen::Index u = unit_col_[r];
      Scalar v = costs(u) - tableau_(rows_, u);
      y(r) = flipped_[r] ? Scalar(-v) : v;
    }
    return y;
  }

  Eigen::Index rows_;
  Eigen::Index structural_;
  Eigen::Index first_art_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::Index rhs_col_ = 0;
  Vector objective_;
  Vector costs_;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> unit_col_;
  std::vector<bool> flipped_;
};

}  // namespace cwbound
