#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "setlab/distance.hpp"

namespace setlab {

/// Atom probabilities of a finite probability space.
class FiniteProbSpace {
 public:
  explicit FiniteProbSpace(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

/// A random set taking value values[i] on atom i.
class SimpleRandomSet {
 public:
  SimpleRandomSet(FiniteProbSpace space, std::vector<Polytope<double>> values);

  const FiniteProbSpace& probs() const noexcept { return probs_; }
  const std::vector<Polytope<double>>& values() const noexcept { return values_; }
  const SpaceSpec& space() const noexcept { return values_.front().space(); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  FiniteProbSpace probs_;
  std::vector<Polytope<double>> values_;
};

/// sum mu_i U_i over atoms with mu_i > 0.
Polytope<double> expectation(const SimpleRandomSet& f, Eigen::Index prune_threshold = 5000);

/// sum mu_i h(U_i, x*), computed without forming the expectation.
double expectation_support_oracle(const SimpleRandomSet& f,
                                  const Eigen::Ref<const Vector<double>>& direction);

/// V with probability p, {0} otherwise.
struct BernoulliScaled {
  Polytope<double> v;
  double p;
};

/// V with probability p, W otherwise.
struct TwoSetMix {
  Polytope<double> v;
  Polytope<double> w;
  double p;
};

/// Lambda + {phi}: Lambda is V with probability p and W otherwise, both living in
/// the first `split` coordinates; phi = +-noise_scale * e_{split} (0-based
/// coordinate `split`) with equal probability, independent of Lambda.
struct FdExpectationDemo {
  Polytope<double> v;
  Polytope<double> w;
  double p;
  double noise_scale;
  Eigen::Index split;
};

/// An explicitly declared simple distribution, drawn independently per index.
struct SingletonNoise {
  SimpleRandomSet distribution;
};

using ProcessSpec = std::variant<BernoulliScaled, TwoSetMix, FdExpectationDemo, SingletonNoise>;

/// One outcome of a process: the set body + {shift}. `body` indexes
/// AtomicLaw::bodies, or is empty for the body {0}.
struct Atom {
  double probability;
  std::optional<std::size_t> body;
  Point<double> shift;
};

/// A process law split into set-valued bodies and singleton shifts. Singleton
/// values always go to the shift, so running sums of them stay exact vectors.
struct AtomicLaw {
  SpaceSpec space;
  std::vector<Polytope<double>> bodies;
  std::vector<Atom> atoms;
};

void validate(const ProcessSpec& spec);
SpaceSpec space_of(const ProcessSpec& spec);
AtomicLaw atomic_law(const ProcessSpec& spec);
SimpleRandomSet distribution(const ProcessSpec& spec);

/// Index of the atom drawn at `index`; a pure function of its arguments.
std::size_t sample_atom(const AtomicLaw& law, std::uint64_t index, std::uint64_t master_seed);
Polytope<double> sample(const ProcessSpec& spec, std::uint64_t index, std::uint64_t master_seed);

struct OnePointVerdict {
  enum class Kind { SingletonAe, CounterexampleAtom };
  Kind kind;
  /// The violating atom for CounterexampleAtom.
  std::size_t atom = 0;
  double diameter = 0;
};

/// Given E(F) = {0} within tol, checks that every positive-probability atom is
/// a singleton up to tol / min positive mu_i. Throws HypothesisNotMet when the
/// expectation has set norm above tol.
OnePointVerdict one_point_check(const SimpleRandomSet& f, double tol);

/// Coordinate projectors P (first `split` coordinates) and Q = I - P.
struct ProjectorPair {
  enum class Part { P, Q };
  Eigen::Index split;
};

Polytope<double> project(const ProjectorPair& pp, ProjectorPair::Part part,
                         const Polytope<double>& a);

}  // namespace setlab
