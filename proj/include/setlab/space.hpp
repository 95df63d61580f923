#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <string_view>

#include "setlab/errors.hpp"

namespace setlab {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Coordinates of an element of the space.
template <typename Scalar>
using Point = Vector<Scalar>;
/// Coordinates of a linear functional, paired with points through the dot product.
template <typename Scalar>
using DualVector = Vector<Scalar>;

enum class NormTag { L1, L2, Linf };

/// l1 and l-infinity are dual to each other; l2 is self-dual.
constexpr NormTag dual(NormTag tag) noexcept {
  switch (tag) {
    case NormTag::L1: return NormTag::Linf;
    case NormTag::Linf: return NormTag::L1;
    case NormTag::L2: return NormTag::L2;
  }
  return tag;
}

inline std::string_view to_string(NormTag tag) noexcept {
  switch (tag) {
    case NormTag::L1: return "l1";
    case NormTag::L2: return "l2";
    case NormTag::Linf: return "linf";
  }
  return "?";
}

inline NormTag norm_tag_from_string(std::string_view s) {
  if (s == "l1") return NormTag::L1;
  if (s == "l2") return NormTag::L2;
  if (s == "linf") return NormTag::Linf;
  throw std::invalid_argument("unknown norm tag '" + std::string(s) + "'");
}

/// A finite-dimensional normed space R^dim with one of the l_p norms.
struct SpaceSpec {
  Eigen::Index dim = 1;
  NormTag norm = NormTag::L2;

  SpaceSpec() = default;
  SpaceSpec(Eigen::Index d, NormTag tag) : dim(d), norm(tag) {
    if (d < 1) throw std::invalid_argument("space dimension must be >= 1");
  }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

inline void require_same_space(const SpaceSpec& a, const SpaceSpec& b) {
  if (a != b) {
    throw DimensionMismatch("space mismatch: (" + std::to_string(a.dim) + ", " +
                            std::string(to_string(a.norm)) + ") vs (" + std::to_string(b.dim) +
                            ", " + std::string(to_string(b.norm)) + ")");
  }
}

inline void require_dim(const SpaceSpec& space, Eigen::Index size) {
  if (size != space.dim) {
    throw DimensionMismatch("vector of length " + std::to_string(size) +
                            " used in a space of dimension " + std::to_string(space.dim));
  }
}

template <typename Derived>
typename Derived::Scalar lp_norm(NormTag tag, const Eigen::MatrixBase<Derived>& v) {
  switch (tag) {
    case NormTag::L1: return v.template lpNorm<1>();
    case NormTag::L2: return v.norm();
    case NormTag::Linf: return v.size() == 0 ? 0 : v.template lpNorm<Eigen::Infinity>();
  }
  return 0;
}

template <typename Derived>
typename Derived::Scalar norm(const SpaceSpec& space, const Eigen::MatrixBase<Derived>& v) {
  require_dim(space, v.size());
  return lp_norm(space.norm, v);
}

template <typename Derived>
typename Derived::Scalar dual_norm(const SpaceSpec& space, const Eigen::MatrixBase<Derived>& v) {
  require_dim(space, v.size());
  return lp_norm(dual(space.norm), v);
}

}  // namespace setlab
