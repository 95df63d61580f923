#include "setlab/slln_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "setlab/errors.hpp"
#include "setlab/rng.hpp"

namespace setlab {

std::string to_string(DistanceMode mode) {
  switch (mode) {
    case DistanceMode::Exact: return "exact";
    case DistanceMode::Certificate: return "certificate";
    case DistanceMode::Sampled: return "sampled";
  }
  return "?";
}

DistanceMode distance_mode_from_string(const std::string& s) {
  if (s == "exact") return DistanceMode::Exact;
  if (s == "certificate") return DistanceMode::Certificate;
  if (s == "sampled") return DistanceMode::Sampled;
  throw std::invalid_argument("unknown distance mode '" + s + "'");
}

std::string to_string(Check::Status status) {
  switch (status) {
    case Check::Status::Pass: return "pass";
    case Check::Status::Fail: return "fail";
    case Check::Status::Undefined: return "undefined";
  }
  return "?";
}

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= horizon; n *= 2) out.push_back(n);
  if (out.empty() || out.back() != horizon) out.push_back(horizon);
  return out;
}

std::vector<std::int64_t> decade_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t decade = 1; decade <= horizon; decade *= 10)
    for (std::int64_t m : {1, 2, 5})
      if (m * decade <= horizon) out.push_back(m * decade);
  if (out.empty() || out.back() != horizon) out.push_back(horizon);
  return out;
}

std::vector<std::int64_t> resolve_checkpoints(const TrajectoryConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (cfg.checkpoints.empty()) return default_checkpoints(cfg.horizon);
  for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
    const auto c = cfg.checkpoints[i];
    if (c < 1 || c > cfg.horizon)
      throw std::invalid_argument("checkpoint " + std::to_string(c) + " outside 1.." +
                                  std::to_string(cfg.horizon));
    if (i > 0 && c <= cfg.checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");
  }
  return cfg.checkpoints;
}

void validate(const TrajectoryConfig& cfg) {
  resolve_checkpoints(cfg);
  if (cfg.processes.empty()) throw std::invalid_argument("trajectory needs a process");
  if (cfg.processes.size() != 1 &&
      static_cast<std::int64_t>(cfg.processes.size()) < cfg.horizon)
    throw std::invalid_argument("per-index processes must cover the whole horizon");
  const SpaceSpec space = space_of(cfg.processes.front());
  for (const auto& p : cfg.processes) {
    validate(p);
    require_same_space(space, space_of(p));
  }
  if (cfg.directions) require_same_space(space, cfg.directions->space());
  if (cfg.prune_threshold < 1) throw std::invalid_argument("prune threshold must be positive");
}

namespace {

struct LawData {
  AtomicLaw law;
  std::size_t body_offset;
  Matrix<double> body_support;  // one row per body, one column per direction
  Vector<double> expected_support;
  Point<double> expected_shift;
};

Polytope<double> formed_average(const SpaceSpec& space, const std::vector<const Polytope<double>*>& bodies,
                                const std::vector<double>& weights, Eigen::Index prune_threshold,
                                double ceiling, std::int64_t n) {
  std::vector<Polytope<double>> used;
  std::vector<double> used_weights;
  double projected = 1;
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    if (weights[b] <= 0) continue;
    projected *= static_cast<double>(bodies[b]->size());
    used.push_back(*bodies[b]);
    used_weights.push_back(weights[b]);
  }
  if (projected > ceiling)
    throw GeneratorCeilingExceeded("exact average at n = " + std::to_string(n) + " may need " +
                                   std::to_string(projected) + " generators, above the ceiling " +
                                   std::to_string(ceiling));
  if (used.empty()) return Polytope<double>::origin(space);
  return minkowski_combination<double>(used_weights, used, prune_threshold);
}

}  // namespace

TrajectoryResult run_trajectory(const TrajectoryConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate(cfg);
  const auto checkpoints = resolve_checkpoints(cfg);
  const SpaceSpec space = space_of(cfg.processes.front());
  const bool exact = cfg.mode == DistanceMode::Exact;

  Matrix<double> dirs;
  if (!exact) {
    DirectionSet d = canonical_directions(space);
    if (cfg.mode == DistanceMode::Sampled)
      d = unite(d, cfg.directions ? *cfg.directions : grid_directions(space, 64));
    dirs = d.directions();
  }

  // Only the indices up to the last checkpoint are ever drawn.
  const std::int64_t last = checkpoints.back();
  const std::size_t law_count =
      cfg.processes.size() == 1 ? 1 : static_cast<std::size_t>(last);
  std::vector<LawData> laws;
  laws.reserve(law_count);
  std::size_t body_total = 0;
  for (std::size_t l = 0; l < law_count; ++l) {
    LawData data{atomic_law(cfg.processes[l]), body_total, {}, {}, Point<double>::Zero(space.dim)};
    body_total += data.law.bodies.size();
    for (const auto& atom : data.law.atoms) data.expected_shift += atom.probability * atom.shift;
    if (!exact) {
      data.body_support.resize(static_cast<Eigen::Index>(data.law.bodies.size()), dirs.cols());
      for (std::size_t b = 0; b < data.law.bodies.size(); ++b)
        data.body_support.row(static_cast<Eigen::Index>(b)) =
            support_all(data.law.bodies[b], dirs).transpose();
      data.expected_support = Vector<double>::Zero(dirs.cols());
      for (const auto& atom : data.law.atoms)
        if (atom.body && atom.probability > 0)
          data.expected_support +=
              atom.probability *
              data.body_support.row(static_cast<Eigen::Index>(*atom.body)).transpose();
    }
    laws.push_back(std::move(data));
  }

  std::vector<const Polytope<double>*> all_bodies;
  for (const auto& data : laws)
    for (const auto& b : data.law.bodies) all_bodies.push_back(&b);

  std::vector<std::int64_t> draw_count(body_total, 0);
  std::vector<double> expected_weight(body_total, 0.0);
  std::vector<std::int64_t> atom_counts(laws.front().law.atoms.size(), 0);
  Point<double> draw_shift = Point<double>::Zero(space.dim);
  Point<double> expected_shift = Point<double>::Zero(space.dim);
  Vector<double> draw_support, expected_support;
  if (!exact) {
    draw_support = Vector<double>::Zero(dirs.cols());
    expected_support = Vector<double>::Zero(dirs.cols());
  }

  TrajectoryResult result;
  result.seed = cfg.seed;
  result.mode = cfg.mode;
  std::size_t next = 0;
  for (std::int64_t i = 1; i <= last; ++i) {
    const LawData& data = laws[law_count == 1 ? 0 : static_cast<std::size_t>(i - 1)];
    const std::size_t a = sample_atom(data.law, static_cast<std::uint64_t>(i), cfg.seed);
    const Atom& atom = data.law.atoms[a];
    if (law_count == 1) ++atom_counts[a];
    draw_shift += atom.shift;
    expected_shift += data.expected_shift;
    if (atom.body) {
      ++draw_count[data.body_offset + *atom.body];
      if (!exact) draw_support += data.body_support.row(static_cast<Eigen::Index>(*atom.body)).transpose();
    }
    if (exact) {
      for (const auto& at : data.law.atoms)
        if (at.body) expected_weight[data.body_offset + *at.body] += at.probability;
    } else {
      expected_support += data.expected_support;
    }

    if (i != checkpoints[next]) continue;
    ++next;
    const double n = static_cast<double>(i);
    CheckpointRecord rec;
    rec.n = i;
    if (law_count == 1) rec.atom_counts = atom_counts;
    const Point<double> shift_gap = (draw_shift - expected_shift) / n;
    if (exact) {
      std::vector<double> w_draw(body_total), w_exp(body_total);
      for (std::size_t b = 0; b < body_total; ++b) {
        w_draw[b] = static_cast<double>(draw_count[b]) / n;
        w_exp[b] = expected_weight[b] / n;
      }
      const Polytope<double> avg = formed_average(space, all_bodies, w_draw, cfg.prune_threshold,
                                                  cfg.generator_ceiling, i);
      const Polytope<double> ref = formed_average(space, all_bodies, w_exp, cfg.prune_threshold,
                                                  cfg.generator_ceiling, i);
      rec.average_generators = avg.size();
      rec.expectation_generators = ref.size();
      rec.distance = hausdorff(translate(avg, Point<double>(draw_shift / n)),
                               translate(ref, Point<double>(expected_shift / n)));
      if (cfg.decompose) rec.body_distance = hausdorff(avg, ref);
    } else {
      const Vector<double> body_gap = (draw_support - expected_support) / n;
      rec.distance = (body_gap + dirs.transpose() * shift_gap).cwiseAbs().maxCoeff();
      if (cfg.decompose) rec.body_distance = body_gap.cwiseAbs().maxCoeff();
    }
    if (cfg.decompose) rec.shift_norm = norm(space, shift_gap);
    result.records.push_back(std::move(rec));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

DecayFit decay_fit(std::span<const std::int64_t> ns, std::span<const double> distances) {
  if (ns.size() != distances.size())
    throw DimensionMismatch("decay fit needs one distance per checkpoint");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (distances[i] > 0 && ns[i] > 0) {
      xs.push_back(std::log(static_cast<double>(ns[i])));
      ys.push_back(std::log(distances[i]));
    }
  }
  DecayFit fit;
  fit.points = static_cast<int>(xs.size());
  if (xs.size() < 3) return fit;
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) return fit;
  fit.status = DecayFit::Status::Ok;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

DecayFit decay_fit(const TrajectoryResult& result) {
  std::vector<std::int64_t> ns;
  std::vector<double> ds;
  for (const auto& r : result.records) {
    ns.push_back(r.n);
    ds.push_back(r.distance);
  }
  return decay_fit(ns, ds);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

Series summarize(const std::string& id, const std::vector<TrajectoryResult>& trajectories,
                 double CheckpointRecord::*field) {
  Series out{id, {}, {}};
  if (trajectories.empty()) return out;
  const std::size_t count = trajectories.front().records.size();
  std::vector<std::int64_t> ns;
  std::vector<double> means;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> values;
    double sum = 0;
    for (const auto& t : trajectories) {
      values.push_back(t.records[k].*field);
      sum += values.back();
    }
    const double mean = sum / static_cast<double>(values.size());
    const std::int64_t n = trajectories.front().records[k].n;
    out.summary.push_back({n, quantile(values, 0.5), quantile(values, 0.1), quantile(values, 0.9), mean});
    ns.push_back(n);
    means.push_back(mean);
  }
  out.fit = decay_fit(ns, means);
  return out;
}

bool ExperimentReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.status == Check::Status::Fail; });
}

std::vector<TrajectoryResult> run_trajectories(const ExperimentConfig& cfg) {
  if (cfg.trajectories < 1) throw std::invalid_argument("need at least one trajectory");
  validate(cfg.trajectory);
  const auto count = static_cast<std::size_t>(cfg.trajectories);
  std::vector<TrajectoryResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t t = cursor++; t < count; t = cursor++) {
      try {
        TrajectoryConfig c = cfg.trajectory;
        c.seed = stable_hash(cfg.trajectory.seed, t);
        results[t] = run_trajectory(c);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t t = 0; t < count; ++t) {
    if (!errors[t]) continue;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      throw std::runtime_error("trajectory " + std::to_string(t) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace setlab
