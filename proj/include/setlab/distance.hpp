#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <random>
#include <vector>

#include "setlab/min_norm_point.hpp"
#include "setlab/polytope.hpp"
#include "setlab/simplex.hpp"

namespace setlab {

template <typename Scalar>
struct DistanceResult {
  Scalar value = 0;
  /// Convex weights over the generators of the polytope realizing `value`.
  Vector<Scalar> weights;
  /// Solver residual (constraint violation for LPs, optimality gap for l2).
  Scalar residual = 0;
};

namespace detail {

/// Polyhedral-norm distance from the origin to conv(columns of `shifted`).
/// l-infinity: min t s.t. -t <= (G lambda)_r <= t.  l1: min sum u_r s.t. -u_r <= (G lambda)_r <= u_r.
template <typename Scalar>
DistanceResult<Scalar> polyhedral_distance(const Matrix<Scalar>& shifted, NormTag tag) {
  const Eigen::Index d = shifted.rows();
  const Eigen::Index k = shifted.cols();
  const Eigen::Index extra = tag == NormTag::Linf ? 1 : d;

  lp::Problem<Scalar> p;
  p.A = Matrix<Scalar>::Zero(2 * d + 1, k + extra);
  p.b = Vector<Scalar>::Zero(2 * d + 1);
  p.c = Vector<Scalar>::Zero(k + extra);
  p.sense.assign(static_cast<std::size_t>(2 * d + 1), lp::RowSense::LessEqual);
  p.A.topLeftCorner(d, k) = shifted;
  p.A.block(d, 0, d, k) = -shifted;
  if (tag == NormTag::Linf) {
    p.A.block(0, k, 2 * d, 1).setConstant(-1);
  } else {
    p.A.block(0, k, d, d) = -Matrix<Scalar>::Identity(d, d);
    p.A.block(d, k, d, d) = -Matrix<Scalar>::Identity(d, d);
  }
  p.A.block(2 * d, 0, 1, k).setOnes();
  p.b(2 * d) = 1;
  p.sense.back() = lp::RowSense::Equal;
  p.c.tail(extra).setOnes();

  const auto r = lp::solve(p);
  if (r.status != lp::Status::Optimal)
    throw SolverError("distance LP did not reach optimality", static_cast<double>(r.residual));
  DistanceResult<Scalar> out;
  out.weights = r.x.head(k);
  const Scalar total = out.weights.sum();
  if (total > 0) out.weights /= total;
  // Evaluate the norm at the recovered point rather than trusting the objective.
  out.value = lp_norm(tag, shifted * out.weights);
  out.residual = r.residual;
  return out;
}

/// A deterministic set of probe directions: signed axes plus seeded Gaussian directions.
template <typename Scalar>
Matrix<Scalar> probe_directions(Eigen::Index dim, Eigen::Index random_count) {
  Matrix<Scalar> dirs(dim, 2 * dim + random_count);
  dirs.leftCols(dim) = Matrix<Scalar>::Identity(dim, dim);
  dirs.middleCols(dim, dim) = -Matrix<Scalar>::Identity(dim, dim);
  std::mt19937_64 gen(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  for (Eigen::Index j = 0; j < random_count; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) dirs(i, 2 * dim + j) = static_cast<Scalar>(normal(gen));
  return dirs;
}

}  // namespace detail

/// rho(b, A) = min over conv(A) of ||b - a||. LP for l1/l-infinity, Wolfe's
/// algorithm for l2.
template <typename Scalar, typename Derived>
DistanceResult<Scalar> distance_to_polytope(const Eigen::MatrixBase<Derived>& b,
                                            const Polytope<Scalar>& a) {
  require_dim(a.space(), b.size());
  const Matrix<Scalar> shifted = a.generators().colwise() - b;
  if (a.size() == 1) {
    return {lp_norm(a.space().norm, shifted.col(0)), Vector<Scalar>::Ones(1), Scalar(0)};
  }
  if (a.space().norm == NormTag::L2) {
    const auto r = min_norm_point<Scalar>(shifted);
    if (!r.converged)
      throw SolverError("min-norm-point iteration did not converge", static_cast<double>(r.gap));
    return {r.distance, r.weights, r.gap};
  }
  return detail::polyhedral_distance(shifted, a.space().norm);
}

template <typename Scalar, typename Derived>
Scalar dist_point_to_polytope(const Eigen::MatrixBase<Derived>& b, const Polytope<Scalar>& a) {
  return distance_to_polytope(b, a).value;
}

template <typename Scalar, typename Derived>
bool contains_point(const Polytope<Scalar>& a, const Eigen::MatrixBase<Derived>& x, Scalar tol) {
  return dist_point_to_polytope(x, a) <= tol;
}

/// One-sided distance sup_{b in B} rho(b, A), evaluated over the generators of B.
///
/// Each generator gets a cheap upper bound (nearest generator of A) and lower
/// bound (dual-direction probes). Generators whose upper bound cannot beat the
/// running maximum are never sent to the solver, so the result is exact.
template <typename Scalar>
Scalar directed_hausdorff(const Polytope<Scalar>& a, const Polytope<Scalar>& b) {
  require_same_space(a.space(), b.space());
  const NormTag tag = a.space().norm;
  const Eigen::Index nb = b.size();

  // Probe directions normalized to dual norm 1.
  Matrix<Scalar> probes = detail::probe_directions<Scalar>(a.dim(), 0);
  for (Eigen::Index j = 0; j < probes.cols(); ++j) probes.col(j) /= lp_norm(dual(tag), probes.col(j));
  const Vector<Scalar> h_a = support_all(a, probes);
  const Matrix<Scalar> probe_b = probes.transpose() * b.generators();

  Vector<Scalar> upper(nb), lower(nb);
  for (Eigen::Index j = 0; j < nb; ++j) {
    const Matrix<Scalar> diff = a.generators().colwise() - b.generator(j);
    Eigen::Index nearest = 0;
    Scalar ub = lp_norm(tag, diff.col(0));
    for (Eigen::Index i = 1; i < diff.cols(); ++i) {
      const Scalar v = lp_norm(tag, diff.col(i));
      if (v < ub) {
        ub = v;
        nearest = i;
      }
    }
    upper(j) = ub;
    Scalar lb = std::max<Scalar>(0, (probe_b.col(j) - h_a).maxCoeff());
    // The direction from the nearest generator towards b is a strong candidate.
    const Vector<Scalar> u = -diff.col(nearest);
    if (ub > 0) {
      Vector<Scalar> dir;
      switch (tag) {
        case NormTag::L2: dir = u / u.norm(); break;
        case NormTag::L1: dir = u.cwiseSign(); break;
        case NormTag::Linf: {
          Eigen::Index r = 0;
          u.cwiseAbs().maxCoeff(&r);
          dir = Vector<Scalar>::Zero(u.size());
          dir(r) = u(r) > 0 ? 1 : -1;
          break;
        }
      }
      lb = std::max(lb, dir.dot(b.generator(j)) - support(a, dir));
    }
    lower(j) = std::min(lb, ub);
  }

  Scalar best = nb > 0 ? lower.maxCoeff() : Scalar(0);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(nb));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return upper(i) > upper(j); });
  for (Eigen::Index j : order) {
    if (upper(j) <= best) break;
    if (lower(j) >= upper(j)) continue;
    best = std::max(best, dist_point_to_polytope(b.generator(j), a));
  }
  return best;
}

/// rho_H(A, B) = max of the two one-sided distances.
template <typename Scalar>
Scalar hausdorff(const Polytope<Scalar>& a, const Polytope<Scalar>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

/// Keeps exactly the generators that are extreme points of conv(A), in their
/// original order (duplicates collapse onto the first occurrence).
///
/// Fast path: a generator that is the strict unique maximizer of some probe
/// direction is extreme. Every other generator is tested for membership in the
/// hull of the remaining candidates and dropped when the membership LP
/// certifies it (l-infinity distance <= tol).
template <typename Scalar>
Polytope<Scalar> prune(const Polytope<Scalar>& a, Scalar tol = Scalar(1e-12)) {
  const Polytope<Scalar> unique = dedup(a);
  const Eigen::Index k = unique.size();
  if (k <= 1) return unique;
  const auto& g = unique.generators();
  const Scalar scale = std::max<Scalar>(1, g.cwiseAbs().maxCoeff());

  std::vector<char> certified(static_cast<std::size_t>(k), 0);
  const Matrix<Scalar> probes = detail::probe_directions<Scalar>(unique.dim(), 4 * unique.dim() + 8);
  const Matrix<Scalar> values = probes.transpose() * g;
  for (Eigen::Index p = 0; p < values.rows(); ++p) {
    Eigen::Index arg = 0;
    Scalar top = values(p, 0), second = -std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 1; i < k; ++i) {
      const Scalar v = values(p, i);
      if (v > top) {
        second = top;
        top = v;
        arg = i;
      } else if (v > second) {
        second = v;
      }
    }
    if (top - second > Scalar(1e-9) * scale) certified[static_cast<std::size_t>(arg)] = 1;
  }

  std::vector<char> alive(static_cast<std::size_t>(k), 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (certified[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> others;
    for (Eigen::Index j = 0; j < k; ++j)
      if (j != i && alive[static_cast<std::size_t>(j)]) others.push_back(j);
    const Matrix<Scalar> shifted = g(Eigen::all, others).colwise() - g.col(i);
    const auto r = detail::polyhedral_distance<Scalar>(shifted, NormTag::Linf);
    if (r.value <= tol * scale) alive[static_cast<std::size_t>(i)] = 0;
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < k; ++i)
    if (alive[static_cast<std::size_t>(i)]) kept.push_back(i);
  return Polytope<Scalar>(unique.space(), g(Eigen::all, kept), unique.tag());
}

/// sum_i w_i A_i with w_i >= 0; zero weights are skipped. The running sum is
/// pruned whenever its generator count exceeds `prune_threshold`.
template <typename Scalar>
Polytope<Scalar> minkowski_combination(std::span<const Scalar> weights,
                                       std::span<const Polytope<Scalar>> bodies,
                                       Eigen::Index prune_threshold = 5000) {
  if (weights.size() != bodies.size() || bodies.empty())
    throw std::invalid_argument("minkowski_combination needs matching, nonempty inputs");
  std::optional<Polytope<Scalar>> acc;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("Minkowski weights must be nonnegative");
    if (weights[i] == 0) continue;
    Polytope<Scalar> term = scale(weights[i], bodies[i]);
    acc = acc ? minkowski_sum(*acc, term) : std::move(term);
    if (acc->size() > prune_threshold) acc = prune(*acc);
  }
  if (!acc) return Polytope<Scalar>::origin(bodies.front().space());
  return *acc;
}

}  // namespace setlab
