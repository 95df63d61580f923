#include "setlab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "setlab/errors.hpp"
#include "setlab/rng.hpp"
#include "setlab/slln_lab.hpp"

namespace setlab {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Polytope<double> random_polytope(const SpaceSpec& space, Eigen::Index k, Stream& s) {
  Matrix<double> g(space.dim, k);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = 2 * s.uniform() - 1;
  return {space, std::move(g)};
}

SpaceSpec random_space(Stream& s, Eigen::Index lo, Eigen::Index hi) {
  const auto dim = lo + static_cast<Eigen::Index>(s.next() % static_cast<std::uint64_t>(hi - lo + 1));
  const NormTag tags[] = {NormTag::L1, NormTag::L2, NormTag::Linf};
  return {dim, tags[s.next() % 3]};
}

PropertyResult bound(std::string name, double worst, double limit) {
  return {std::move(name), worst <= limit, "worst " + sci(worst) + ", limit " + sci(limit)};
}

std::vector<PropertyResult> witness_suite() {
  std::vector<PropertyResult> out;
  std::uint64_t checked = 0, bad = 0;
  for (int n = 1; n <= 12; ++n) {
    const SubsetFamily family(n);
    for (std::uint64_t w = 0; w < family.ground_size(); ++w) {
      const std::uint64_t m = witness_element_mask(family, w);
      for (int j = 1; j <= n; ++j) {
        ++checked;
        if (family.contains(j, m) != static_cast<bool>((w >> (j - 1)) & 1U)) ++bad;
      }
    }
  }
  out.push_back({"witness m_W lies in exactly the T_j with j in W (n <= 12, all W)", bad == 0,
                 std::to_string(checked) + " memberships, " + std::to_string(bad) + " wrong"});
  return out;
}

std::vector<PropertyResult> coefficient_bound_suite() {
  const int n = 8;
  const SpaceSpec space(Eigen::Index{1} << n, NormTag::Linf);
  const SubsetFamily family(n);
  std::vector<SupportView> views;
  for (const auto& v : lemma_sets(n, 0, space)) views.push_back(embed(v));
  const DirectionSet canonical = canonical_directions(space);
  double worst_half = -1e300, worst_eq = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Stream s(stable_hash(0x3303, trial));
    std::vector<double> a(n);
    for (auto& x : a) x = 2 * s.uniform() - 1;
    const auto cert = coefficient_lower_bound(family, a);
    double abs_sum = 0;
    for (double x : a) abs_sum += std::abs(x);
    worst_half = std::max(worst_half, 0.5 * abs_sum - cert.value);
    SupportView plus = 0.0 * views[0], minus = 0.0 * views[0];
    for (int k = 0; k < n; ++k) {
      if (a[k] > 0) plus = plus + a[k] * views[k];
      else minus = minus + (-a[k]) * views[k];
    }
    worst_eq = std::max(worst_eq, std::abs(sampled_distance(plus, minus, canonical) - cert.value));
  }
  return {bound("s >= (1/2) sum |a_k| (1000 vectors, n = 8)", worst_half, 1e-12),
          bound("s equals the canonical-direction embedding distance", worst_eq, 1e-12)};
}

std::vector<PropertyResult> embedding_suite() {
  double additivity = 0, linearity = 0, triangle = -1e300, gap_hi = -1e300, gap_lo = 1e300;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    Stream s(stable_hash(0x4ad5, trial));
    const SpaceSpec space = random_space(s, 2, 4);
    const auto a = random_polytope(space, 3 + static_cast<Eigen::Index>(s.next() % 5), s);
    const auto b = random_polytope(space, 3 + static_cast<Eigen::Index>(s.next() % 5), s);
    const auto c = random_polytope(space, 3 + static_cast<Eigen::Index>(s.next() % 5), s);
    const auto dirs = random_directions(space, 32, trial);
    const Vector<double> lhs = support_all(minkowski_sum(a, b), dirs.directions());
    const Vector<double> rhs = support_all(a, dirs.directions()) + support_all(b, dirs.directions());
    additivity = std::max(additivity, (lhs - rhs).cwiseAbs().maxCoeff());
    linearity = std::max(linearity, linearity_residual(a, b, 3 * s.uniform(), 3 * s.uniform(), dirs));
    triangle = std::max(triangle, hausdorff(a, c) - hausdorff(a, b) - hausdorff(b, c));
  }
  const SpaceSpec plane(2, NormTag::L2);
  const auto grid = grid_directions(plane, 10000);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Stream s(stable_hash(0x150, trial));
    const auto a = random_polytope(plane, 5, s);
    const auto b = random_polytope(plane, 5, s);
    const double gap = isometry_gap(a, b, grid);
    gap_hi = std::max(gap_hi, gap);
    gap_lo = std::min(gap_lo, gap);
  }
  return {bound("support additivity h(A+B) = h(A) + h(B)", additivity, 1e-12),
          bound("embedding linearity R(tA+sB) = tR(A) + sR(B)", linearity, 1e-12),
          bound("Hausdorff triangle inequality (10^4 triples, dims 2-4)", triangle, 1e-9),
          bound("isometry gap with 10^4 grid directions (l2, dim 2)", gap_hi, 1e-3),
          bound("sampled distance never exceeds Hausdorff", -gap_lo, 1e-9)};
}

std::vector<PropertyResult> one_point_suite() {
  std::vector<PropertyResult> out;
  int singleton_ok = 0, widened_rejected = 0;
  double width_residual = 0;
  const int trials = 50;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Stream s(stable_hash(0x0a1e, trial));
    const SpaceSpec space = random_space(s, 1, 4);
    const auto atoms = 2 + static_cast<std::size_t>(s.next() % 4);
    std::vector<double> mu(atoms);
    double total = 0;
    for (auto& m : mu) total += (m = 0.1 + s.uniform());
    for (auto& m : mu) m /= total;
    total = 0;
    for (std::size_t i = 0; i + 1 < atoms; ++i) total += mu[i];
    mu.back() = 1 - total;
    std::vector<Point<double>> x(atoms);
    Point<double> mean = Point<double>::Zero(space.dim);
    for (std::size_t i = 0; i < atoms; ++i) {
      x[i] = Point<double>::NullaryExpr(space.dim, [&](Eigen::Index) { return 2 * s.uniform() - 1; });
      mean += mu[i] * x[i];
    }
    // Recentre so the weighted sum vanishes up to rounding.
    std::vector<Polytope<double>> values;
    for (std::size_t i = 0; i < atoms; ++i)
      values.push_back(Polytope<double>::singleton(space, Point<double>(x[i] - mean)));
    const SimpleRandomSet f(FiniteProbSpace(mu), values);
    const auto verdict = one_point_check(f, 1e-9);
    if (verdict.kind == OnePointVerdict::Kind::SingletonAe) ++singleton_ok;

    const std::size_t widened = s.next() % atoms;
    const double eps = 0.01 + s.uniform();
    auto wide_values = values;
    Matrix<double> g(space.dim, 2);
    g.col(0) = values[widened].generator(0);
    g.col(1) = g.col(0) + eps * Point<double>::Unit(space.dim, 0);
    wide_values[widened] = Polytope<double>(space, g);
    const SimpleRandomSet wide(FiniteProbSpace(mu), wide_values);
    try {
      one_point_check(wide, 1e-9);
    } catch (const HypothesisNotMet&) {
      ++widened_rejected;
    }
    const Point<double> e0 = Point<double>::Unit(space.dim, 0);
    const double expected_width = mu[widened] * eps;
    width_residual = std::max(width_residual, std::abs(width(expectation(wide), e0) - expected_width));
  }
  out.push_back({"zero-mean singleton constructions pass", singleton_ok == trials,
                 std::to_string(singleton_ok) + "/" + std::to_string(trials)});
  out.push_back({"widened atoms are rejected", widened_rejected == trials,
                 std::to_string(widened_rejected) + "/" + std::to_string(trials)});
  out.push_back(bound("expectation width grows by mu_i * eps", width_residual, 1e-12));

  bool segment_rejected = false;
  const SpaceSpec line(1, NormTag::L2);
  Matrix<double> seg(1, 2);
  seg << -1, 1;
  try {
    one_point_check(SimpleRandomSet(FiniteProbSpace({1.0}), {Polytope<double>(line, seg)}), 1e-9);
  } catch (const HypothesisNotMet&) {
    segment_rejected = true;
  }
  out.push_back({"[-1, 1] with probability 1 fails the hypothesis", segment_rejected, ""});

  bool reduced_rejects = false;
  try {
    ExperimentConfig cfg;
    Matrix<double> wide(1, 2);
    wide << -1e-3, 1e-3;
    cfg.trajectory.processes = {SingletonNoise{SimpleRandomSet(
        FiniteProbSpace({0.5, 0.5}),
        {Polytope<double>(line, wide), Polytope<double>::singleton(line, Point<double>::Zero(1))})}};
    cfg.trajectory.horizon = 4;
    cfg.trajectories = 1;
    experiment_reduced(cfg);
  } catch (const HypothesisNotMet&) {
    reduced_rejects = true;
  }
  out.push_back({"reduced experiment rejects a non-singleton declaration", reduced_rejects, ""});
  return out;
}

std::vector<PropertyResult> core_suite() {
  double member = 0, symmetry = 0, prune_gap = 0, lower = -1e300;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Stream s(stable_hash(0xc0e, trial));
    const SpaceSpec space = random_space(s, 1, 4);
    const auto a = random_polytope(space, 2 + static_cast<Eigen::Index>(s.next() % 8), s);
    const auto b = random_polytope(space, 2 + static_cast<Eigen::Index>(s.next() % 8), s);
    for (Eigen::Index i = 0; i < a.size(); ++i)
      member = std::max(member, dist_point_to_polytope(a.generator(i), a));
    symmetry = std::max(symmetry, std::abs(hausdorff(a, b) - hausdorff(b, a)));
    const auto sum = minkowski_sum(a, b);
    const auto pruned = prune(sum);
    const auto dirs = random_directions(space, 16, trial);
    prune_gap = std::max(prune_gap, (support_all(sum, dirs.directions()) -
                                     support_all(pruned, dirs.directions())).cwiseAbs().maxCoeff());
    // Support differences bound the Hausdorff distance from below.
    const double sampled = (support_all(a, dirs.directions()) - support_all(b, dirs.directions()))
                               .cwiseAbs()
                               .maxCoeff();
    lower = std::max(lower, sampled - hausdorff(a, b));
  }
  return {bound("generators lie in their own hull", member, 1e-9),
          bound("Hausdorff distance is symmetric", symmetry, 1e-12),
          bound("pruning keeps the support function", prune_gap, 1e-12),
          bound("support differences never exceed Hausdorff", lower, 1e-9)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma31", "lemma33", "radstrom", "onepoint", "core"};
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& suite) {
  if (suite == "lemma31") return witness_suite();
  if (suite == "lemma33") return coefficient_bound_suite();
  if (suite == "radstrom") return embedding_suite();
  if (suite == "onepoint") return one_point_suite();
  if (suite == "core") return core_suite();
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace setlab
