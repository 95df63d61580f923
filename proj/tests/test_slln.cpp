#include <doctest.h>

#include "oracles.hpp"
#include "setlab/errors.hpp"
#include "setlab/slln_lab.hpp"

using namespace setlab;

namespace {

Polytope<double> box(const SpaceSpec& s, double x0, double y0) {
  Matrix<double> g(2, 4);
  g << x0, x0 + 1, x0, x0 + 1, y0, y0, y0 + 1, y0 + 1;
  return {s, g};
}

Polytope<double> point(const SpaceSpec& s, std::initializer_list<double> xs) {
  Point<double> p(s.dim);
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return Polytope<double>::singleton(s, p);
}

TrajectoryConfig config(ProcessSpec spec, std::int64_t horizon, DistanceMode mode, std::uint64_t seed) {
  TrajectoryConfig c;
  c.processes = {std::move(spec)};
  c.horizon = horizon;
  c.mode = mode;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("checkpoint grids") {
  CHECK(default_checkpoints(1) == std::vector<std::int64_t>{1});
  CHECK(default_checkpoints(10) == std::vector<std::int64_t>{1, 2, 4, 8, 10});
  CHECK(default_checkpoints(16) == std::vector<std::int64_t>{1, 2, 4, 8, 16});
  CHECK(decade_checkpoints(100) == std::vector<std::int64_t>{1, 2, 5, 10, 20, 50, 100});
  CHECK(decade_checkpoints(300) == std::vector<std::int64_t>{1, 2, 5, 10, 20, 50, 100, 200, 300});
  const SpaceSpec s(1, NormTag::L2);
  auto c = config(BernoulliScaled{point(s, {1}), 0.5}, 10, DistanceMode::Exact, 1);
  c.checkpoints = {1, 5, 10};
  CHECK(resolve_checkpoints(c) == c.checkpoints);
  c.checkpoints = {1, 5, 5};
  CHECK_THROWS(validate(c));
  c.checkpoints = {0, 5};
  CHECK_THROWS(validate(c));
  c.checkpoints = {5, 11};
  CHECK_THROWS(validate(c));
  c.checkpoints.clear();
  c.horizon = 0;
  CHECK_THROWS(validate(c));
  c.horizon = 10;
  c.processes.assign(3, c.processes.front());
  CHECK_THROWS(validate(c));
}

TEST_CASE("a constant process has zero distance in every mode") {
  const SpaceSpec s(2, NormTag::L1);
  for (auto mode : {DistanceMode::Exact, DistanceMode::Certificate, DistanceMode::Sampled}) {
    const auto r = run_trajectory(config(TwoSetMix{box(s, 0, 0), box(s, 3, 1), 1.0}, 200, mode, 4));
    for (const auto& rec : r.records) CHECK(rec.distance <= 1e-15);
    CHECK(decay_fit(r).status == DecayFit::Status::InsufficientData);
  }
}

TEST_CASE("Bernoulli segment: distance is the frequency error") {
  // V = [0, 1] with probability p: the average is (k/n) V, the expectation p V.
  const SpaceSpec s(1, NormTag::L2);
  Matrix<double> g(1, 2);
  g << 0, 1;
  for (double p : {0.5, 0.3}) {
    const BernoulliScaled spec{{s, g}, p};
    const auto r = run_trajectory(config(spec, 1000, DistanceMode::Exact, 11));
    std::int64_t k = 0, seen = 0;
    for (const auto& rec : r.records) {
      for (; seen < rec.n; ++seen) k += sample(spec, static_cast<std::uint64_t>(seen + 1), 11).size() == 2;
      CHECK(rec.atom_counts[0] == k);
      CHECK(std::abs(rec.distance - std::abs(double(k) / rec.n - p)) <= 1e-12);
    }
  }
}

TEST_CASE("two translated boxes: distance is the frequency error times the offset norm") {
  // V = box, W = box + (3, 4): the average is box + (1 - k/n)(3, 4).
  const double offset_norm[] = {7, 5, 4};  // l1, l2, linf of (3, 4)
  const NormTag tags[] = {NormTag::L1, NormTag::L2, NormTag::Linf};
  for (int t = 0; t < 3; ++t) {
    const SpaceSpec s(2, tags[t]);
    const auto r = run_trajectory(config(TwoSetMix{box(s, 0, 0), box(s, 3, 4), 0.5}, 500, DistanceMode::Exact, 21));
    for (const auto& rec : r.records) {
      const double freq = double(rec.atom_counts[0]) / rec.n;
      CHECK(std::abs(rec.distance - std::abs(freq - 0.5) * offset_norm[t]) <= 1e-9);
      CHECK(rec.average_generators <= 16);
    }
  }
}

TEST_CASE("certificate <= sampled <= exact on random processes") {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    const SpaceSpec s(rng.integer(1, 3), oracle::any_norm(rng));
    const ProcessSpec spec = TwoSetMix{oracle::random_polytope(rng, s, rng.integer(1, 4)),
                                       oracle::random_polytope(rng, s, rng.integer(1, 4)),
                                       rng.uniform(0.1, 0.9)};
    const auto seed = static_cast<std::uint64_t>(trial);
    const auto e = run_trajectory(config(spec, 64, DistanceMode::Exact, seed));
    const auto c = run_trajectory(config(spec, 64, DistanceMode::Certificate, seed));
    const auto m = run_trajectory(config(spec, 64, DistanceMode::Sampled, seed));
    REQUIRE(e.records.size() == c.records.size());
    for (std::size_t k = 0; k < e.records.size(); ++k) {
      CHECK(e.records[k].atom_counts == c.records[k].atom_counts);
      CHECK(c.records[k].distance <= m.records[k].distance + 1e-12);
      CHECK(m.records[k].distance <= e.records[k].distance + 1e-9);
    }
  }
}

TEST_CASE("decay fit on synthetic curves") {
  std::vector<std::int64_t> ns;
  std::vector<double> half, one;
  for (std::int64_t n = 1; n <= 4096; n *= 2) {
    ns.push_back(n);
    half.push_back(3 / std::sqrt(double(n)));
    one.push_back(0.5 / double(n));
  }
  const auto a = decay_fit(ns, half);
  REQUIRE(a.status == DecayFit::Status::Ok);
  CHECK(a.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::exp(a.intercept) == doctest::Approx(3).epsilon(1e-12));
  CHECK(a.residual <= 1e-12);
  CHECK(decay_fit(ns, one).slope == doctest::Approx(-1).epsilon(1e-12));
  // Zeros are dropped, and fewer than three positive points is refused.
  std::vector<double> sparse(ns.size(), 0.0);
  sparse[1] = 1;
  sparse[4] = 0.5;
  CHECK(decay_fit(ns, sparse).status == DecayFit::Status::InsufficientData);
  CHECK(decay_fit(ns, sparse).points == 2);
  sparse[6] = 0.25;
  CHECK(decay_fit(ns, sparse).status == DecayFit::Status::Ok);
  const std::vector<double> short_ds{1.0};
  CHECK_THROWS_AS(decay_fit(ns, short_ds), DimensionMismatch);
}

TEST_CASE("quantiles interpolate between order statistics") {
  CHECK(quantile({3, 1, 2}, 0.5) == 2);
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 0.1) == 2);
  CHECK(std::isnan(quantile({}, 0.5)));
}

TEST_CASE("trajectory results do not depend on the thread count") {
  const SpaceSpec s(2, NormTag::L2);
  ExperimentConfig cfg;
  cfg.trajectory = config(TwoSetMix{box(s, 0, 0), point(s, {2, 2}), 0.5}, 300, DistanceMode::Exact, 77);
  cfg.trajectories = 7;
  cfg.threads = 1;
  const auto one = run_trajectories(cfg);
  cfg.threads = 4;
  const auto four = run_trajectories(cfg);
  REQUIRE(one.size() == four.size());
  for (std::size_t t = 0; t < one.size(); ++t) {
    CHECK(one[t].seed == four[t].seed);
    for (std::size_t k = 0; k < one[t].records.size(); ++k) {
      CHECK(one[t].records[k].distance == four[t].records[k].distance);
      CHECK(one[t].records[k].atom_counts == four[t].records[k].atom_counts);
    }
  }
  // Distinct trajectories use distinct seeds.
  CHECK(one[0].seed != one[1].seed);
}

TEST_CASE("errors in a trajectory name the trajectory") {
  const SpaceSpec s(2, NormTag::L2);
  ExperimentConfig cfg;
  cfg.trajectory = config(TwoSetMix{box(s, 0, 0), box(s, 1, 1), 0.5}, 64, DistanceMode::Exact, 5);
  cfg.trajectory.generator_ceiling = 10;
  cfg.trajectories = 2;
  CHECK_THROWS_WITH(run_trajectories(cfg), doctest::Contains("trajectory 0"));
  CHECK_THROWS_AS(run_trajectory(cfg.trajectory), GeneratorCeilingExceeded);
}

TEST_CASE("reduced experiment: singleton noise passes, sets are rejected") {
  const SpaceSpec s(8, NormTag::L2);
  const auto e1 = Point<double>::Unit(8, 0);
  ExperimentConfig cfg;
  cfg.trajectory = config(SingletonNoise{SimpleRandomSet(FiniteProbSpace({0.5, 0.5}),
                                                         {Polytope<double>::singleton(s, e1),
                                                          Polytope<double>::singleton(s, Point<double>(-e1))})},
                          2000, DistanceMode::Exact, 3);
  cfg.trajectories = 4;
  const auto r = experiment_reduced(cfg);
  REQUIRE(r.series.size() == 1);
  CHECK(r.series[0].id == "norm");
  // |S_n| / n = |2k - n| / n for k draws of +e1.
  for (const auto& t : r.trajectories)
    for (const auto& rec : t.records)
      CHECK(std::abs(rec.distance - std::abs(2.0 * rec.atom_counts[0] - rec.n) / rec.n) <= 1e-12);

  // The zero process is reduced and gives distance 0 with an undefined slope.
  cfg.trajectory.processes = {SingletonNoise{SimpleRandomSet(FiniteProbSpace({1.0}), {Polytope<double>::origin(s)})}};
  const auto zero = experiment_reduced(cfg);
  CHECK(zero.series[0].summary.back().median == 0);
  CHECK(zero.checks[0].status == Check::Status::Undefined);
  CHECK(zero.passed());

  Matrix<double> seg = Matrix<double>::Zero(8, 2);
  seg(0, 0) = -1;
  seg(0, 1) = 1;
  cfg.trajectory.processes = {SingletonNoise{SimpleRandomSet(FiniteProbSpace({1.0}), {Polytope<double>(s, seg)})}};
  CHECK_THROWS_AS(experiment_reduced(cfg), HypothesisNotMet);
  cfg.trajectory.processes = {SingletonNoise{SimpleRandomSet(FiniteProbSpace({1.0}), {Polytope<double>::singleton(s, e1)})}};
  CHECK_THROWS_AS(experiment_reduced(cfg), HypothesisNotMet);
  cfg.trajectory.processes = {BernoulliScaled{Polytope<double>::singleton(s, e1), 0.5}};
  CHECK_THROWS_AS(experiment_reduced(cfg), HypothesisNotMet);
}

TEST_CASE("intermediate decomposition obeys the triangle inequality") {
  const SpaceSpec s(3, NormTag::L2);
  Matrix<double> gv = Matrix<double>::Zero(3, 3), gw = Matrix<double>::Zero(3, 2);
  gv << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  gw << 2, 2, 0, 1, 0, 0;
  for (auto mode : {DistanceMode::Exact, DistanceMode::Sampled}) {
    ExperimentConfig cfg;
    cfg.trajectory = config(FdExpectationDemo{{s, gv}, {s, gw}, 0.5, 0.5, 2}, 400, mode, 9);
    cfg.trajectories = 5;
    const auto r = experiment_intermediate_fd(cfg);
    REQUIRE(r.series.size() == 3);
    CHECK(r.checks[0].name == "triangle");
    CHECK(r.checks[0].status == Check::Status::Pass);
    for (const auto& t : r.trajectories)
      for (const auto& rec : t.records) {
        CHECK(rec.distance <= rec.shift_norm + rec.body_distance + 1e-9);
        // phi averages +-0.5 e_2; its norm is |2j - n| / n * 0.5 for j up-draws.
        const auto& c = rec.atom_counts;
        CHECK(std::abs(rec.shift_norm - std::abs(double(c[0] - c[1] + c[2] - c[3])) / rec.n * 0.5) <= 1e-12);
      }
  }
  ExperimentConfig bad;
  bad.trajectory = config(BernoulliScaled{{s, gv}, 0.5}, 10, DistanceMode::Exact, 1);
  CHECK_THROWS(experiment_intermediate_fd(bad));
}

TEST_CASE("per-index processes reproduce the counterexample certificate") {
  const BlockFamily family(1);
  const int n = family.size();
  TrajectoryConfig c;
  for (int i = 1; i <= n; ++i) c.processes.push_back(BernoulliScaled{family.set(i), 0.5});
  c.horizon = n;
  c.checkpoints = {n};
  c.mode = DistanceMode::Certificate;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    c.seed = seed;
    std::vector<std::uint8_t> psi;
    for (int i = 1; i <= n; ++i)
      psi.push_back(sample(c.processes[static_cast<std::size_t>(i - 1)], static_cast<std::uint64_t>(i), seed).size() > 1);
    const auto r = run_trajectory(c);
    CHECK(r.records.back().atom_counts.empty());
    CHECK(std::abs(r.records.back().distance - certificate_distance(family, psi, n)) <= 1e-12);
  }
}

TEST_CASE("counterexample report") {
  const auto all = experiment_counterexample(1, 0, 0, DistanceMode::Certificate);
  CHECK(all.patterns.size() == 16);
  CHECK(all.min_certificate == 0.25);
  CHECK(all.passed());
  const auto sampled = experiment_counterexample(2, 30, 7, DistanceMode::Certificate);
  CHECK(sampled.patterns.size() == 30);
  CHECK(sampled.dim == 4112);
  CHECK(sampled.min_certificate >= 3.0 / 16);
  CHECK(experiment_counterexample(2, 30, 7, DistanceMode::Certificate).patterns[5].psi == sampled.patterns[5].psi);
  CHECK_THROWS(experiment_counterexample(2, 1, 0, DistanceMode::Exact));
  CHECK_THROWS(experiment_counterexample(1, 0, 0, DistanceMode::Sampled));
  CHECK(psi_string(std::vector<std::uint8_t>{1, 0, 1}) == "101");
}
