#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setlab/space.hpp"

namespace setlab {

/// A convex body stored as the convex hull of finitely many generators.
///
/// Generators are the columns of a `dim x count` matrix. Every operation in the
/// library depends only on conv(generators), so reordering or repeating
/// generators never changes a result.
template <typename Scalar_ = double>
class Polytope {
 public:
  using Scalar = Scalar_;
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;

  Polytope(SpaceSpec space, MatrixType generators, std::string tag = {})
      : space_(space), generators_(std::move(generators)), tag_(std::move(tag)) {
    if (generators_.cols() == 0) throw std::invalid_argument("polytope needs at least one generator");
    require_dim(space_, generators_.rows());
    if (!generators_.allFinite()) throw std::invalid_argument("polytope generators must be finite");
  }

  static Polytope singleton(SpaceSpec space, const VectorType& x, std::string tag = {}) {
    require_dim(space, x.size());
    return Polytope(space, MatrixType(x), std::move(tag));
  }

  static Polytope origin(SpaceSpec space) {
    return Polytope(space, MatrixType::Zero(space.dim, 1));
  }

  static Polytope from_points(SpaceSpec space, std::span<const VectorType> points,
                              std::string tag = {}) {
    MatrixType g(space.dim, static_cast<Eigen::Index>(points.size()));
    for (Eigen::Index i = 0; i < g.cols(); ++i) {
      require_dim(space, points[static_cast<std::size_t>(i)].size());
      g.col(i) = points[static_cast<std::size_t>(i)];
    }
    return Polytope(space, std::move(g), std::move(tag));
  }

  const SpaceSpec& space() const noexcept { return space_; }
  Eigen::Index dim() const noexcept { return space_.dim; }
  Eigen::Index size() const noexcept { return generators_.cols(); }
  const MatrixType& generators() const noexcept { return generators_; }
  auto generator(Eigen::Index i) const { return generators_.col(i); }
  const std::string& tag() const noexcept { return tag_; }
  void set_tag(std::string tag) { tag_ = std::move(tag); }

  /// True when all generators coincide exactly.
  bool is_singleton() const {
    for (Eigen::Index i = 1; i < size(); ++i)
      if (generators_.col(i) != generators_.col(0)) return false;
    return true;
  }

 private:
  SpaceSpec space_;
  MatrixType generators_;
  std::string tag_;
};

/// All pairwise sums a_i + b_j, ordered with the index of A varying fastest.
template <typename Scalar>
Polytope<Scalar> minkowski_sum(const Polytope<Scalar>& a, const Polytope<Scalar>& b) {
  require_same_space(a.space(), b.space());
  Matrix<Scalar> g(a.dim(), a.size() * b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j)
    g.middleCols(j * a.size(), a.size()) = a.generators().colwise() + b.generator(j);
  return Polytope<Scalar>(a.space(), std::move(g));
}

/// t * A for t >= 0; t = 0 collapses to the singleton {0}.
template <typename Scalar>
Polytope<Scalar> scale(Scalar t, const Polytope<Scalar>& a) {
  if (!(t >= 0)) throw std::invalid_argument("Minkowski scaling requires a nonnegative factor");
  if (t == 0) return Polytope<Scalar>::origin(a.space());
  return Polytope<Scalar>(a.space(), t * a.generators(), a.tag());
}

template <typename Scalar, typename Derived>
Polytope<Scalar> translate(const Polytope<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  require_dim(a.space(), x.size());
  return Polytope<Scalar>(a.space(), a.generators().colwise() + x, a.tag());
}

template <typename Scalar>
Polytope<Scalar> operator+(const Polytope<Scalar>& a, const Polytope<Scalar>& b) {
  return minkowski_sum(a, b);
}

template <typename Scalar>
Polytope<Scalar> operator*(Scalar t, const Polytope<Scalar>& a) {
  return scale(t, a);
}

/// Drops exact duplicate generators, keeping the first occurrence of each.
template <typename Scalar>
Polytope<Scalar> dedup(const Polytope<Scalar>& a) {
  const auto& g = a.generators();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(a.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_less = [&](Eigen::Index i, Eigen::Index j) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      if (g(r, i) < g(r, j)) return true;
      if (g(r, j) < g(r, i)) return false;
    }
    return i < j;
  };
  std::sort(order.begin(), order.end(), lex_less);
  std::vector<char> keep(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || g.col(order[k]) != g.col(order[k - 1])) keep[static_cast<std::size_t>(order[k])] = 1;
  }
  std::vector<Eigen::Index> kept;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) kept.push_back(static_cast<Eigen::Index>(i));
  if (static_cast<Eigen::Index>(kept.size()) == a.size()) return a;
  return Polytope<Scalar>(a.space(), g(Eigen::all, kept), a.tag());
}

/// Support value together with the lowest index of a maximizing generator.
template <typename Scalar>
struct SupportPoint {
  Scalar value;
  Eigen::Index index;
};

template <typename Scalar, typename Derived>
SupportPoint<Scalar> support_point(const Polytope<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  require_dim(a.space(), x.size());
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> values = x.transpose() * a.generators();
  SupportPoint<Scalar> best{values(0), 0};
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values(i) > best.value) best = {values(i), i};
  return best;
}

/// h_A(x*) = max over A of x*(a).
template <typename Scalar, typename Derived>
Scalar support(const Polytope<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  return support_point(a, x).value;
}

/// Support values at every column of `directions` (a dim x m matrix).
template <typename Scalar>
Vector<Scalar> support_all(const Polytope<Scalar>& a, const Matrix<Scalar>& directions) {
  require_dim(a.space(), directions.rows());
  return (directions.transpose() * a.generators()).rowwise().maxCoeff();
}

/// h_A(x*) + h_A(-x*), the extent of A along x*.
template <typename Scalar, typename Derived>
Scalar width(const Polytope<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  require_dim(a.space(), x.size());
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> values = x.transpose() * a.generators();
  return values.maxCoeff() - values.minCoeff();
}

/// Largest pairwise generator distance in the space norm.
template <typename Scalar>
Scalar diameter(const Polytope<Scalar>& a) {
  Scalar best = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j)
      best = std::max(best, lp_norm(a.space().norm, a.generator(i) - a.generator(j)));
  return best;
}

/// ||A|| = sup of the norm over A, attained at a generator.
template <typename Scalar>
Scalar set_norm(const Polytope<Scalar>& a) {
  Scalar best = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    best = std::max(best, lp_norm(a.space().norm, a.generator(i)));
  return best;
}

}  // namespace setlab
