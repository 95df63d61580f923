#include <algorithm>
#include <cmath>

#include "setlab/errors.hpp"
#include "setlab/rng.hpp"
#include "setlab/slln_lab.hpp"

namespace setlab {

namespace {

Check slope_check(const Series& s, const ExperimentConfig& cfg) {
  Check c{"slope." + s.id, s.fit.slope, cfg.slope_lo, cfg.slope_hi, Check::Status::Undefined};
  if (s.fit.status == DecayFit::Status::Ok)
    c.status = s.fit.slope >= cfg.slope_lo && s.fit.slope <= cfg.slope_hi ? Check::Status::Pass
                                                                          : Check::Status::Fail;
  return c;
}

ExperimentReport base_report(const ExperimentConfig& cfg, std::string kind) {
  ExperimentReport r;
  r.experiment_id = cfg.id;
  r.kind = std::move(kind);
  r.mode = cfg.trajectory.mode;
  r.seed = cfg.trajectory.seed;
  r.checkpoints = resolve_checkpoints(cfg.trajectory);
  return r;
}

}  // namespace

ExperimentReport experiment_fd_slln(const ExperimentConfig& cfg) {
  ExperimentReport r = base_report(cfg, "fd_slln");
  r.trajectories = run_trajectories(cfg);
  r.series.push_back(summarize("distance", r.trajectories, &CheckpointRecord::distance));
  r.checks.push_back(slope_check(r.series.back(), cfg));
  return r;
}

ExperimentReport experiment_reduced(const ExperimentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.trajectory.processes.size(); ++i) {
    const auto* noise = std::get_if<SingletonNoise>(&cfg.trajectory.processes[i]);
    if (!noise)
      throw HypothesisNotMet("process " + std::to_string(i) +
                             " is not a declared distribution; the reduced form needs singleton_noise");
    const auto verdict = one_point_check(noise->distribution, 1e-12);
    if (verdict.kind == OnePointVerdict::Kind::CounterexampleAtom)
      throw HypothesisNotMet("process " + std::to_string(i) + " atom " +
                             std::to_string(verdict.atom) + " has diameter " +
                             std::to_string(verdict.diameter) +
                             "; a random convex set with expectation {0} is a.e. a singleton, "
                             "so this declaration is rejected");
  }
  ExperimentReport r = base_report(cfg, "reduced");
  r.trajectories = run_trajectories(cfg);
  r.series.push_back(summarize("norm", r.trajectories, &CheckpointRecord::distance));
  r.checks.push_back(slope_check(r.series.back(), cfg));
  return r;
}

ExperimentReport experiment_intermediate_fd(const ExperimentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.trajectory.processes.size(); ++i)
    if (!std::holds_alternative<FdExpectationDemo>(cfg.trajectory.processes[i]))
      throw std::invalid_argument("process " + std::to_string(i) +
                                  " is not an fd_expectation_demo process");
  ExperimentConfig c = cfg;
  c.trajectory.decompose = true;
  ExperimentReport r = base_report(c, "intermediate_fd");
  r.trajectories = run_trajectories(c);
  r.series.push_back(summarize("distance", r.trajectories, &CheckpointRecord::distance));
  r.series.push_back(summarize("phi", r.trajectories, &CheckpointRecord::shift_norm));
  r.series.push_back(summarize("lambda", r.trajectories, &CheckpointRecord::body_distance));

  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& t : r.trajectories)
    for (const auto& rec : t.records)
      worst = std::max(worst, rec.distance - rec.shift_norm - rec.body_distance);
  const double tol = 1e-9;
  r.checks.push_back({"triangle", worst, -std::numeric_limits<double>::infinity(), tol,
                      worst <= tol ? Check::Status::Pass : Check::Status::Fail});
  r.checks.push_back(slope_check(r.series[1], cfg));
  r.checks.push_back(slope_check(r.series[2], cfg));
  return r;
}

std::string psi_string(std::span<const std::uint8_t> psi) {
  std::string s;
  for (auto v : psi) s.push_back(v ? '1' : '0');
  return s;
}

bool CounterexampleReport::passed() const {
  return min_certificate >= floor && (!min_exact || *min_exact >= floor);
}

CounterexampleReport experiment_counterexample(int n_max, int sample_count, std::uint64_t seed,
                                               DistanceMode mode) {
  const BlockFamily family(n_max);
  if (mode == DistanceMode::Sampled)
    throw std::invalid_argument("counterexample supports certificate and exact modes");
  if (mode == DistanceMode::Exact && n_max != 1)
    throw std::invalid_argument("exact mode is limited to n_max = 1 (dimension 16)");
  if (sample_count < 0) throw std::invalid_argument("sample count must be nonnegative");
  const int n = family.size();

  CounterexampleReport r;
  r.n_max = n_max;
  r.n = n;
  r.dim = family.space().dim;
  r.enumeration = sample_count == 0 ? "all" : "sample:" + std::to_string(sample_count);
  r.seed = seed;
  r.mode = mode;

  std::vector<std::vector<std::uint8_t>> patterns;
  if (sample_count == 0) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      std::vector<std::uint8_t> psi(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) psi[static_cast<std::size_t>(i)] = (k >> i) & 1U;
      patterns.push_back(std::move(psi));
    }
  } else {
    for (int k = 0; k < sample_count; ++k) {
      Stream stream(stable_hash(seed, static_cast<std::uint64_t>(k)));
      std::vector<std::uint8_t> psi(static_cast<std::size_t>(n));
      for (auto& v : psi) v = static_cast<std::uint8_t>(stream.next() >> 63);
      patterns.push_back(std::move(psi));
    }
  }

  std::vector<Polytope<double>> sets;
  std::optional<Polytope<double>> reference;
  if (mode == DistanceMode::Exact) {
    for (int i = 1; i <= n; ++i) sets.push_back(family.set(i));
    const std::vector<double> half(sets.size(), 0.5 / n);
    reference = prune(minkowski_combination<double>(half, sets));
  }

  r.min_certificate = std::numeric_limits<double>::infinity();
  for (const auto& psi : patterns) {
    PatternResult pr{psi_string(psi), certificate_distance(family, psi, n), std::nullopt};
    r.min_certificate = std::min(r.min_certificate, pr.certificate);
    if (mode == DistanceMode::Exact) {
      std::vector<double> w(sets.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = psi[i] ? 1.0 / n : 0.0;
      Polytope<double> avg = minkowski_combination<double>(w, sets);
      if (avg.size() > 64) avg = prune(avg);
      pr.exact = hausdorff(avg, *reference);
      r.min_exact = std::min(r.min_exact.value_or(*pr.exact), *pr.exact);
    }
    r.patterns.push_back(std::move(pr));
  }
  return r;
}

}  // namespace setlab
