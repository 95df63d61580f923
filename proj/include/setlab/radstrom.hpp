#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "setlab/distance.hpp"

namespace setlab {

/// A finite family of unit functionals in the dual space.
class DirectionSet {
 public:
  enum class Provenance { Canonical, Grid, Random, Union };

  DirectionSet(SpaceSpec space, Matrix<double> directions, Provenance provenance,
               std::uint64_t seed = 0);

  const SpaceSpec& space() const noexcept { return space_; }
  /// dim x count matrix, one direction per column.
  const Matrix<double>& directions() const noexcept { return directions_; }
  Eigen::Index size() const noexcept { return directions_.cols(); }
  auto direction(Eigen::Index i) const { return directions_.col(i); }
  Provenance provenance() const noexcept { return provenance_; }
  std::uint64_t seed() const noexcept { return seed_; }
  /// Hash of the dimension and the direction bits; keys support caches.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  SpaceSpec space_;
  Matrix<double> directions_;
  Provenance provenance_;
  std::uint64_t seed_;
  std::uint64_t fingerprint_ = 0;
};

std::string to_string(DirectionSet::Provenance p);
DirectionSet::Provenance provenance_from_string(const std::string& s);

/// The 2*dim signed coordinate functionals (dual norm 1 in every l_p).
DirectionSet canonical_directions(const SpaceSpec& space);

/// dim 2: `count` equally spaced angles starting at angle 0, mapped onto the
/// dual unit sphere. dim >= 3: seeded uniform sphere samples (seed 0).
DirectionSet grid_directions(const SpaceSpec& space, Eigen::Index count);

/// Seeded Gaussian directions normalized in the dual norm.
DirectionSet random_directions(const SpaceSpec& space, Eigen::Index count, std::uint64_t seed);

/// Concatenation of two direction sets of the same space.
DirectionSet unite(const DirectionSet& a, const DirectionSet& b);

/// The support function of a body viewed as an element of the function space
/// on the dual unit sphere. Views form a vector space: sums, real multiples and
/// differences evaluate pointwise, so Minkowski combinations never have to be
/// expanded into generator lists.
class SupportView {
 public:
  explicit SupportView(Polytope<double> body);

  /// Evaluates the view at a dual vector.
  double operator()(const Eigen::Ref<const Vector<double>>& direction) const;

  /// Values at every direction of the set. Support values are cached per
  /// embedded body and direction set, so every view built from the same
  /// embeddings shares them.
  Vector<double> evaluate(const DirectionSet& directions) const;

  const SpaceSpec& space() const noexcept { return space_; }

  /// The underlying body when the view is a plain embedding of one polytope.
  const Polytope<double>* body() const noexcept;

  friend SupportView operator+(const SupportView& f, const SupportView& g);
  friend SupportView operator-(const SupportView& f, const SupportView& g);
  friend SupportView operator*(double t, const SupportView& f);

 private:
  struct Embedded {
    explicit Embedded(Polytope<double> b) : body(std::move(b)) {}
    Polytope<double> body;
    std::mutex mutex;
    std::map<std::uint64_t, Vector<double>> cache;
  };
  struct Term {
    double coefficient;
    std::shared_ptr<Embedded> embedded;
  };
  SupportView(SpaceSpec space, std::vector<Term> terms);

  SpaceSpec space_;
  std::vector<Term> terms_;
};

/// x* -> support(A, x*).
SupportView embed(const Polytope<double>& body);

/// max over D of |f(x*) - g(x*)|; a lower bound on the sup-norm distance.
double sampled_distance(const SupportView& f, const SupportView& g, const DirectionSet& directions);

/// max over D of |R(tA + sB) - t R(A) - s R(B)|, with tA + sB formed explicitly.
double linearity_residual(const Polytope<double>& a, const Polytope<double>& b, double t, double s,
                          const DirectionSet& directions);

/// hausdorff(A, B) minus the sampled embedding distance over D.
double isometry_gap(const Polytope<double>& a, const Polytope<double>& b,
                    const DirectionSet& directions);

}  // namespace setlab
