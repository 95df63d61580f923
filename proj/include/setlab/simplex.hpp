#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "setlab/space.hpp"

namespace setlab::lp {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// minimize c'x subject to A_i x (<=|=|>=) b_i and x >= 0.
template <typename Scalar>
struct Problem {
  Matrix<Scalar> A;
  Vector<Scalar> b;
  Vector<Scalar> c;
  std::vector<RowSense> sense;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

template <typename Scalar>
struct Result {
  Status status = Status::IterationLimit;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  Vector<Scalar> x;
  /// Largest constraint violation of the returned x.
  Scalar residual = 0;
  int iterations = 0;
};

template <typename Scalar>
struct Options {
  Scalar pivot_tol = Scalar(1e-10);
  Scalar cost_tol = Scalar(1e-11);
  Scalar feasibility_tol = Scalar(1e-9);
  int max_iterations = 0;  // 0: 50 * (rows + columns)
  int degenerate_switch = 50;
};

namespace detail {

/// Dense tableau over normalized rows (b >= 0). The last row stores reduced
/// costs, the last column the basic values; T(m, n) holds -objective.
template <typename Scalar>
class Tableau {
 public:
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(const Problem<Scalar>& p, const Options<Scalar>& opt) : opt_(opt) {
    const Eigen::Index m = p.A.rows();
    const Eigen::Index n = p.A.cols();
    if (p.b.size() != m || (p.c.size() != n && p.c.size() != 0) || static_cast<Eigen::Index>(p.sense.size()) != m)
      throw DimensionMismatch("linear program dimensions are inconsistent");
    rows_ = m;
    structural_ = n;

    // Normalize signs and count auxiliary columns.
    std::vector<RowSense> sense = p.sense;
    Vector<Scalar> b = p.b;
    std::vector<Scalar> sign(static_cast<std::size_t>(m), Scalar(1));
    Eigen::Index n_slack = 0, n_art = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      auto& s = sense[static_cast<std::size_t>(i)];
      if (b(i) < 0) {
        sign[static_cast<std::size_t>(i)] = -1;
        b(i) = -b(i);
        if (s == RowSense::LessEqual) s = RowSense::GreaterEqual;
        else if (s == RowSense::GreaterEqual) s = RowSense::LessEqual;
      }
      if (s != RowSense::Equal) ++n_slack;
      if (s != RowSense::LessEqual) ++n_art;
    }
    first_art_ = n + n_slack;
    cols_ = first_art_ + n_art;
    t_ = RowMajor::Zero(m + 1, cols_ + 1);
    basis_.assign(static_cast<std::size_t>(m), -1);

    Eigen::Index slack = n, art = first_art_;
    for (Eigen::Index i = 0; i < m; ++i) {
      t_.row(i).head(n) = sign[static_cast<std::size_t>(i)] * p.A.row(i);
      t_(i, cols_) = b(i);
      const auto s = sense[static_cast<std::size_t>(i)];
      if (s == RowSense::LessEqual) {
        t_(i, slack) = 1;
        basis_[static_cast<std::size_t>(i)] = slack++;
      } else {
        if (s == RowSense::GreaterEqual) t_(i, slack++) = -1;
        t_(i, art) = 1;
        basis_[static_cast<std::size_t>(i)] = art++;
      }
    }
    // Keep a copy of the normalized constraint block for the final refinement.
    original_ = t_.topRows(m);

    max_iter_ = opt_.max_iterations > 0 ? opt_.max_iterations
                                        : static_cast<int>(50 * (m + cols_));
  }

  Result<Scalar> solve(const Vector<Scalar>& cost) {
    Result<Scalar> out;
    const bool has_art = first_art_ < cols_;
    if (has_art) {
      // Phase 1: minimize the sum of artificials.
      t_.row(rows_).setZero();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] >= first_art_) t_.row(rows_) -= t_.row(i);
      }
      t_.row(rows_).segment(first_art_, cols_ - first_art_).setZero();
      const Status s1 = iterate(/*allow_art=*/true, out.iterations);
      if (s1 == Status::IterationLimit) {
        out.status = s1;
        return out;
      }
      const Scalar infeas = -t_(rows_, cols_);
      const Scalar scale = std::max<Scalar>(1, original_.col(cols_).cwiseAbs().maxCoeff());
      if (infeas > opt_.feasibility_tol * scale) {
        out.status = Status::Infeasible;
        out.residual = infeas;
        return out;
      }
      drive_out_artificials();
    }
    if (cost.size() == 0) {
      out.status = Status::Optimal;
      finish(Vector<Scalar>::Zero(structural_), out);
      return out;
    }
    // Phase 2 reduced costs.
    t_.row(rows_).setZero();
    t_.row(rows_).head(structural_) = cost.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
      if (bi < structural_ && cost(bi) != 0) t_.row(rows_) -= cost(bi) * t_.row(i);
    }
    out.status = iterate(/*allow_art=*/false, out.iterations);
    if (out.status == Status::Optimal) finish(cost, out);
    return out;
  }

 private:
  Status iterate(bool allow_art, int& iterations) {
    const Eigen::Index limit = allow_art ? cols_ : first_art_;
    int degenerate_run = 0;
    for (;;) {
      if (iterations >= max_iter_) return Status::IterationLimit;
      const bool bland = degenerate_run >= opt_.degenerate_switch;
      Eigen::Index enter = -1;
      Scalar best = -opt_.cost_tol;
      for (Eigen::Index j = 0; j < limit; ++j) {
        const Scalar r = t_(rows_, j);
        if (r < best) {
          enter = j;
          if (bland) break;
          best = r;
        }
      }
      if (enter < 0) return Status::Optimal;

      Eigen::Index leave = -1;
      Scalar ratio = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const Scalar a = t_(i, enter);
        if (a <= opt_.pivot_tol) continue;
        const Scalar q = t_(i, cols_) / a;
        if (leave < 0 || q < ratio || (q == ratio && basis_[static_cast<std::size_t>(i)] <
                                            basis_[static_cast<std::size_t>(leave)])) {
          ratio = q;
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      degenerate_run = ratio <= opt_.pivot_tol ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    t_.row(r) /= t_(r, s);
    Vector<Scalar> col = t_.col(s);
    col(r) = 0;
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> pr = t_.row(r);
    t_.noalias() -= col * pr;
    basis_[static_cast<std::size_t>(r)] = s;
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < first_art_) continue;
      Eigen::Index best = -1;
      Scalar mag = opt_.pivot_tol;
      for (Eigen::Index j = 0; j < first_art_; ++j) {
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          best = j;
        }
      }
      // A row without such a column is redundant; its artificial stays at zero.
      if (best >= 0) pivot(i, best);
    }
  }

  /// Re-solves the final basis against the original rows to shed pivot drift.
  void finish(const Vector<Scalar>& cost, Result<Scalar>& out) {
    Vector<Scalar> full_tab = Vector<Scalar>::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i)
      full_tab(basis_[static_cast<std::size_t>(i)]) = t_(i, cols_);

    Matrix<Scalar> basis_mat(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i)
      basis_mat.col(i) = original_.col(basis_[static_cast<std::size_t>(i)]);
    const Vector<Scalar> rhs = original_.col(cols_);
    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(basis_mat);
    Vector<Scalar> full_ref = Vector<Scalar>::Zero(cols_);
    if (qr.rank() == rows_) {
      const Vector<Scalar> xb = qr.solve(rhs);
      for (Eigen::Index i = 0; i < rows_; ++i)
        full_ref(basis_[static_cast<std::size_t>(i)]) = std::max<Scalar>(0, xb(i));
    }
    auto residual_of = [&](const Vector<Scalar>& full) {
      if (!full.allFinite()) return std::numeric_limits<Scalar>::infinity();
      return (original_.leftCols(cols_) * full - rhs).cwiseAbs().maxCoeff();
    };
    const Scalar r_tab = residual_of(full_tab.cwiseMax(Scalar(0)));
    const Scalar r_ref = qr.rank() == rows_ ? residual_of(full_ref)
                                            : std::numeric_limits<Scalar>::infinity();
    const Vector<Scalar>& chosen = r_ref <= r_tab ? full_ref : full_tab;
    out.x = chosen.head(structural_).cwiseMax(Scalar(0));
    out.residual = std::min(r_ref, r_tab);
    out.objective = cost.size() == structural_ ? cost.dot(out.x) : Scalar(0);
  }

  Options<Scalar> opt_;
  Eigen::Index rows_ = 0, structural_ = 0, cols_ = 0, first_art_ = 0;
  int max_iter_ = 0;
  RowMajor t_;
  RowMajor original_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after a run of degenerate pivots.
template <typename Scalar>
Result<Scalar> solve(const Problem<Scalar>& problem, const Options<Scalar>& options = {}) {
  detail::Tableau<Scalar> tableau(problem, options);
  return tableau.solve(problem.c);
}

/// Phase 1 only: finds a feasible point or reports infeasibility.
template <typename Scalar>
Result<Scalar> find_feasible(const Problem<Scalar>& problem, const Options<Scalar>& options = {}) {
  detail::Tableau<Scalar> tableau(problem, options);
  return tableau.solve(Vector<Scalar>());
}

}  // namespace setlab::lp
