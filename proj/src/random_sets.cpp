#include "setlab/random_sets.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "setlab/errors.hpp"
#include "setlab/rng.hpp"

namespace setlab {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Values whose generators all coincide become pure shifts.
AtomicLaw law_from_distribution(const SimpleRandomSet& f) {
  AtomicLaw law{f.space(), {}, {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& u = f.values()[i];
    if (u.is_singleton()) {
      law.atoms.push_back({f.probs()[i], std::nullopt, u.generator(0)});
    } else {
      law.bodies.push_back(u);
      law.atoms.push_back({f.probs()[i], law.bodies.size() - 1, Point<double>::Zero(u.dim())});
    }
  }
  return law;
}

}  // namespace

FiniteProbSpace::FiniteProbSpace(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("probability space needs at least one atom");
  double total = 0;
  for (double p : probs_) {
    if (!(p >= 0) || !std::isfinite(p))
      throw std::invalid_argument("atom probabilities must be finite and nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("atom probabilities sum to " + std::to_string(total) + ", not 1");
}

SimpleRandomSet::SimpleRandomSet(FiniteProbSpace space, std::vector<Polytope<double>> values)
    : probs_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != probs_.size())
    throw DimensionMismatch("simple random set has " + std::to_string(values_.size()) +
                            " values for " + std::to_string(probs_.size()) + " atoms");
  for (const auto& v : values_) require_same_space(values_.front().space(), v.space());
}

Polytope<double> expectation(const SimpleRandomSet& f, Eigen::Index prune_threshold) {
  return minkowski_combination<double>(f.probs().probs(), f.values(), prune_threshold);
}

double expectation_support_oracle(const SimpleRandomSet& f,
                                  const Eigen::Ref<const Vector<double>>& direction) {
  double total = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.probs()[i] > 0) total += f.probs()[i] * support(f.values()[i], direction);
  return total;
}

SpaceSpec space_of(const ProcessSpec& spec) {
  return std::visit(
      [](const auto& s) -> SpaceSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SingletonNoise>) return s.distribution.space();
        else return s.v.space();
      },
      spec);
}

void validate(const ProcessSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BernoulliScaled>) {
          check_probability(s.p, "bernoulli_scaled p");
        } else if constexpr (std::is_same_v<T, TwoSetMix>) {
          check_probability(s.p, "two_set_mix p");
          require_same_space(s.v.space(), s.w.space());
        } else if constexpr (std::is_same_v<T, FdExpectationDemo>) {
          check_probability(s.p, "fd_expectation_demo p");
          require_same_space(s.v.space(), s.w.space());
          if (s.split < 1 || s.split >= s.v.dim())
            throw std::invalid_argument("fd_expectation_demo split must lie in 1..dim-1");
          if (!(s.noise_scale >= 0) || !std::isfinite(s.noise_scale))
            throw std::invalid_argument("fd_expectation_demo noise scale must be nonnegative");
          const Eigen::Index rest = s.v.dim() - s.split;
          if (!s.v.generators().bottomRows(rest).isZero(0) ||
              !s.w.generators().bottomRows(rest).isZero(0))
            throw std::invalid_argument(
                "fd_expectation_demo sets must vanish outside the first split coordinates");
        }
      },
      spec);
}

AtomicLaw atomic_law(const ProcessSpec& spec) {
  validate(spec);
  const SpaceSpec space = space_of(spec);
  const Point<double> zero = Point<double>::Zero(space.dim);
  return std::visit(
      [&](const auto& s) -> AtomicLaw {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BernoulliScaled>) {
          return {space, {s.v}, {{s.p, 0, zero}, {1 - s.p, std::nullopt, zero}}};
        } else if constexpr (std::is_same_v<T, TwoSetMix>) {
          return {space, {s.v, s.w}, {{s.p, 0, zero}, {1 - s.p, 1, zero}}};
        } else if constexpr (std::is_same_v<T, FdExpectationDemo>) {
          const Point<double> up = s.noise_scale * Point<double>::Unit(space.dim, s.split);
          const double q = 1 - s.p;
          return {space,
                  {s.v, s.w},
                  {{s.p / 2, 0, up}, {s.p / 2, 0, -up}, {q / 2, 1, up}, {q / 2, 1, -up}}};
        } else {
          return law_from_distribution(s.distribution);
        }
      },
      spec);
}

SimpleRandomSet distribution(const ProcessSpec& spec) {
  const AtomicLaw law = atomic_law(spec);
  std::vector<double> probs;
  std::vector<Polytope<double>> values;
  for (const auto& atom : law.atoms) {
    probs.push_back(atom.probability);
    values.push_back(atom.body ? translate(law.bodies[*atom.body], atom.shift)
                               : Polytope<double>::singleton(law.space, atom.shift));
  }
  return {FiniteProbSpace(std::move(probs)), std::move(values)};
}

std::size_t sample_atom(const AtomicLaw& law, std::uint64_t index, std::uint64_t master_seed) {
  Stream stream(stable_hash(master_seed, index));
  const double u = stream.uniform();
  double cumulative = 0;
  std::size_t last_positive = 0;
  for (std::size_t a = 0; a < law.atoms.size(); ++a) {
    const double p = law.atoms[a].probability;
    if (p <= 0) continue;
    cumulative += p;
    last_positive = a;
    if (u < cumulative) return a;
  }
  // Rounding can leave the cumulative sum a hair below 1.
  return last_positive;
}

Polytope<double> sample(const ProcessSpec& spec, std::uint64_t index, std::uint64_t master_seed) {
  const AtomicLaw law = atomic_law(spec);
  const Atom& atom = law.atoms[sample_atom(law, index, master_seed)];
  if (!atom.body) return Polytope<double>::singleton(law.space, atom.shift);
  return translate(law.bodies[*atom.body], atom.shift);
}

OnePointVerdict one_point_check(const SimpleRandomSet& f, double tol) {
  if (!(tol >= 0)) throw std::invalid_argument("tolerance must be nonnegative");
  const double e_norm = set_norm(expectation(f));
  if (e_norm > tol)
    throw HypothesisNotMet("expectation has set norm " + std::to_string(e_norm) +
                           " > tol; the one-point test needs expectation {0}");
  double min_mu = std::numeric_limits<double>::infinity();
  for (double p : f.probs().probs())
    if (p > 0) min_mu = std::min(min_mu, p);
  const double limit = tol / min_mu;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.probs()[i] <= 0) continue;
    const double d = diameter(f.values()[i]);
    if (d > limit) return {OnePointVerdict::Kind::CounterexampleAtom, i, d};
  }
  return {OnePointVerdict::Kind::SingletonAe, 0, 0};
}

Polytope<double> project(const ProjectorPair& pp, ProjectorPair::Part part,
                         const Polytope<double>& a) {
  if (pp.split < 0 || pp.split > a.dim())
    throw std::invalid_argument("projector split " + std::to_string(pp.split) +
                                " outside 0..dim = " + std::to_string(a.dim()));
  Matrix<double> g = a.generators();
  if (part == ProjectorPair::Part::P) g.bottomRows(a.dim() - pp.split).setZero();
  else g.topRows(pp.split).setZero();
  return {a.space(), std::move(g)};
}

}  // namespace setlab
