#include "setlab/radstrom.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "setlab/rng.hpp"

namespace setlab {

namespace {

void normalize_columns(Matrix<double>& dirs, NormTag dual_tag) {
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    const double n = lp_norm(dual_tag, dirs.col(j));
    if (n == 0) throw std::invalid_argument("zero direction cannot be normalized");
    dirs.col(j) /= n;
  }
}

}  // namespace

DirectionSet::DirectionSet(SpaceSpec space, Matrix<double> directions, Provenance provenance,
                           std::uint64_t seed)
    : space_(space), directions_(std::move(directions)), provenance_(provenance), seed_(seed) {
  if (directions_.cols() == 0) throw std::invalid_argument("direction set must be nonempty");
  require_dim(space_, directions_.rows());
  for (Eigen::Index j = 0; j < directions_.cols(); ++j) {
    if (std::abs(lp_norm(dual(space_.norm), directions_.col(j)) - 1.0) > 1e-12)
      throw std::invalid_argument("direction " + std::to_string(j) + " does not have dual norm 1");
  }
  fingerprint_ = stable_hash(static_cast<std::uint64_t>(space_.dim), directions_.cols());
  for (Eigen::Index i = 0; i < directions_.size(); ++i)
    fingerprint_ = stable_hash(fingerprint_, std::bit_cast<std::uint64_t>(directions_.data()[i]));
}

std::string to_string(DirectionSet::Provenance p) {
  switch (p) {
    case DirectionSet::Provenance::Canonical: return "canonical";
    case DirectionSet::Provenance::Grid: return "grid";
    case DirectionSet::Provenance::Random: return "random";
    case DirectionSet::Provenance::Union: return "union";
  }
  return "?";
}

DirectionSet::Provenance provenance_from_string(const std::string& s) {
  if (s == "canonical") return DirectionSet::Provenance::Canonical;
  if (s == "grid") return DirectionSet::Provenance::Grid;
  if (s == "random") return DirectionSet::Provenance::Random;
  if (s == "union") return DirectionSet::Provenance::Union;
  throw std::invalid_argument("unknown direction provenance '" + s + "'");
}

DirectionSet canonical_directions(const SpaceSpec& space) {
  Matrix<double> dirs(space.dim, 2 * space.dim);
  dirs.leftCols(space.dim).setIdentity();
  dirs.rightCols(space.dim) = -Matrix<double>::Identity(space.dim, space.dim);
  return {space, std::move(dirs), DirectionSet::Provenance::Canonical};
}

DirectionSet grid_directions(const SpaceSpec& space, Eigen::Index count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one direction");
  if (space.dim != 2) {
    auto r = random_directions(space, count, 0);
    return {space, r.directions(), DirectionSet::Provenance::Grid, 0};
  }
  Matrix<double> dirs(2, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    dirs(0, j) = std::cos(angle);
    dirs(1, j) = std::sin(angle);
  }
  normalize_columns(dirs, dual(space.norm));
  return {space, std::move(dirs), DirectionSet::Provenance::Grid};
}

DirectionSet random_directions(const SpaceSpec& space, Eigen::Index count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random set needs at least one direction");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix<double> dirs(space.dim, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    do {
      for (Eigen::Index i = 0; i < space.dim; ++i) dirs(i, j) = normal(gen);
    } while (dirs.col(j).norm() == 0);
  }
  normalize_columns(dirs, dual(space.norm));
  return {space, std::move(dirs), DirectionSet::Provenance::Random, seed};
}

DirectionSet unite(const DirectionSet& a, const DirectionSet& b) {
  require_same_space(a.space(), b.space());
  Matrix<double> dirs(a.space().dim, a.size() + b.size());
  dirs << a.directions(), b.directions();
  return {a.space(), std::move(dirs), DirectionSet::Provenance::Union, b.seed()};
}

SupportView::SupportView(Polytope<double> body)
    : space_(body.space()), terms_{{1.0, std::make_shared<Embedded>(std::move(body))}} {}

SupportView::SupportView(SpaceSpec space, std::vector<Term> terms)
    : space_(space), terms_(std::move(terms)) {}

double SupportView::operator()(const Eigen::Ref<const Vector<double>>& direction) const {
  require_dim(space_, direction.size());
  double value = 0;
  for (const auto& term : terms_) value += term.coefficient * support(term.embedded->body, direction);
  return value;
}

Vector<double> SupportView::evaluate(const DirectionSet& directions) const {
  require_same_space(space_, directions.space());
  Vector<double> out = Vector<double>::Zero(directions.size());
  for (const auto& term : terms_) {
    Embedded& e = *term.embedded;
    std::lock_guard lock(e.mutex);
    auto it = e.cache.find(directions.fingerprint());
    if (it == e.cache.end())
      it = e.cache.emplace(directions.fingerprint(), support_all(e.body, directions.directions())).first;
    out += term.coefficient * it->second;
  }
  return out;
}

const Polytope<double>* SupportView::body() const noexcept {
  if (terms_.size() == 1 && terms_.front().coefficient == 1.0) return &terms_.front().embedded->body;
  return nullptr;
}

SupportView operator+(const SupportView& f, const SupportView& g) {
  require_same_space(f.space_, g.space_);
  auto terms = f.terms_;
  terms.insert(terms.end(), g.terms_.begin(), g.terms_.end());
  return {f.space_, std::move(terms)};
}

SupportView operator*(double t, const SupportView& f) {
  auto terms = f.terms_;
  for (auto& term : terms) term.coefficient *= t;
  return {f.space_, std::move(terms)};
}

SupportView operator-(const SupportView& f, const SupportView& g) { return f + (-1.0) * g; }

SupportView embed(const Polytope<double>& body) { return SupportView(body); }

double sampled_distance(const SupportView& f, const SupportView& g, const DirectionSet& directions) {
  require_same_space(f.space(), g.space());
  return (f.evaluate(directions) - g.evaluate(directions)).cwiseAbs().maxCoeff();
}

double linearity_residual(const Polytope<double>& a, const Polytope<double>& b, double t, double s,
                          const DirectionSet& directions) {
  const Polytope<double> combined = minkowski_sum(scale(t, a), scale(s, b));
  const Vector<double> lhs = support_all(combined, directions.directions());
  const Vector<double> rhs =
      t * support_all(a, directions.directions()) + s * support_all(b, directions.directions());
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double isometry_gap(const Polytope<double>& a, const Polytope<double>& b,
                    const DirectionSet& directions) {
  return hausdorff(a, b) - sampled_distance(embed(a), embed(b), directions);
}

}  // namespace setlab
