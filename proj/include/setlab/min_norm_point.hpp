#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "setlab/space.hpp"

namespace setlab {

template <typename Scalar>
struct MinNormResult {
  Scalar distance = 0;
  /// Convex weights over the input columns.
  Vector<Scalar> weights;
  Vector<Scalar> point;
  /// Final optimality gap ||x||^2 - min_i <x, p_i>.
  Scalar gap = 0;
  int iterations = 0;
  bool converged = false;
};

/// Wolfe's minimum-norm-point algorithm over conv(columns of `points`).
///
/// Maintains a corral of affinely independent columns whose affine minimizer
/// lies in their relative interior. Stops once the gap drops below
/// `gap_tol * max(1, max_i ||p_i||^2)`.
template <typename Scalar>
MinNormResult<Scalar> min_norm_point(const Matrix<Scalar>& points, Scalar gap_tol = Scalar(1e-10),
                                     int max_iterations = 0) {
  const Eigen::Index k = points.cols();
  const Eigen::Index d = points.rows();
  if (k == 0) throw std::invalid_argument("min_norm_point needs at least one point");
  if (max_iterations <= 0) max_iterations = static_cast<int>(100 * (k + d) + 100);

  const Vector<Scalar> sq = points.colwise().squaredNorm().transpose();
  const Scalar scale = std::max<Scalar>(1, sq.maxCoeff());
  const Scalar weight_eps = Scalar(1e-14);

  Eigen::Index first = 0;
  for (Eigen::Index i = 1; i < k; ++i)
    if (sq(i) < sq(first)) first = i;

  std::vector<Eigen::Index> corral{first};
  std::vector<Scalar> w{Scalar(1)};
  Vector<Scalar> x = points.col(first);

  MinNormResult<Scalar> out;
  auto recompute_x = [&] {
    x.setZero(d);
    for (std::size_t i = 0; i < corral.size(); ++i) x += w[i] * points.col(corral[i]);
  };

  // Minimizes ||P_S a|| subject to sum(a) = 1 via the KKT system.
  auto affine_minimizer = [&](std::vector<Scalar>& alpha) {
    const auto s = static_cast<Eigen::Index>(corral.size());
    Matrix<Scalar> kkt = Matrix<Scalar>::Zero(s + 1, s + 1);
    const Matrix<Scalar> ps = points(Eigen::all, corral);
    kkt.topLeftCorner(s, s) = ps.transpose() * ps;
    kkt.block(0, s, s, 1).setOnes();
    kkt.block(s, 0, 1, s).setOnes();
    Vector<Scalar> rhs = Vector<Scalar>::Zero(s + 1);
    rhs(s) = 1;
    const Vector<Scalar> sol = kkt.fullPivLu().solve(rhs);
    alpha.assign(sol.data(), sol.data() + s);
  };

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const Vector<Scalar> dots = points.transpose() * x;
    Eigen::Index j = 0;
    for (Eigen::Index i = 1; i < k; ++i)
      if (dots(i) < dots(j)) j = i;
    out.gap = x.squaredNorm() - dots(j);
    if (out.gap <= gap_tol * scale) {
      out.converged = true;
      break;
    }
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) {
      // Numerical stall: the best candidate is already in the corral.
      out.converged = out.gap <= Scalar(1e3) * gap_tol * scale;
      break;
    }
    corral.push_back(j);
    w.push_back(0);

    for (;;) {
      std::vector<Scalar> alpha;
      affine_minimizer(alpha);
      bool interior = std::all_of(alpha.begin(), alpha.end(),
                                  [&](Scalar a) { return a > weight_eps; });
      if (interior) {
        w = alpha;
        break;
      }
      Scalar theta = 1;
      std::size_t blocking = w.size();
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (alpha[i] <= weight_eps) {
          const Scalar denom = w[i] - alpha[i];
          if (denom > 0 && w[i] / denom < theta) {
            theta = w[i] / denom;
            blocking = i;
          }
        }
      }
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1 - theta) * w[i] + theta * alpha[i];
      if (blocking < w.size()) w[blocking] = 0;
      std::vector<Eigen::Index> kept_idx;
      std::vector<Scalar> kept_w;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > weight_eps) {
          kept_idx.push_back(corral[i]);
          kept_w.push_back(w[i]);
        }
      }
      if (kept_idx.empty()) {
        // Degenerate drop: keep the newest point alone.
        kept_idx.push_back(corral.back());
        kept_w.push_back(1);
      }
      Scalar total = 0;
      for (Scalar v : kept_w) total += v;
      for (Scalar& v : kept_w) v /= total;
      corral = std::move(kept_idx);
      w = std::move(kept_w);
      if (corral.size() == 1) break;
    }
    recompute_x();
  }
  out.iterations = iter;
  out.weights = Vector<Scalar>::Zero(k);
  for (std::size_t i = 0; i < corral.size(); ++i) out.weights(corral[i]) += w[i];
  out.point = x;
  out.distance = x.norm();
  return out;
}

}  // namespace setlab
