// One PASS/FAIL line per acceptance criterion, with the measured values and runtimes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "setlab/commands.hpp"
#include "setlab/config.hpp"
#include "setlab/rng.hpp"
#include "setlab/verify.hpp"

using namespace setlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    o.passed = false;
    o.detail += "; over the time budget";
  }
  if (!o.passed) ++failures;
  std::printf("%s %d %s: %s [%.2f s, budget %.0f s]\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs, budget_seconds);
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome suite(const std::string& name) {
  bool all = true;
  std::string detail;
  for (const auto& r : run_suite(name)) {
    all = all && r.passed;
    if (!detail.empty()) detail += "; ";
    detail += (r.passed ? "" : "FAILED ") + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")");
  }
  return {all, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path config_path(const char* name) { return fs::path(SETLAB_CONFIG_DIR) / name; }

double median_at(const Series& s, std::int64_t n) {
  for (const auto& c : s.summary)
    if (c.n == n) return c.median;
  throw std::runtime_error("no checkpoint at n = " + std::to_string(n));
}

}  // namespace

int main() {
  const double floor = 1.0 / 16;

  criterion(1, "counterexample floor, n_max = 1, all 16 patterns, exact", 60, [&] {
    const auto r = experiment_counterexample(1, 0, 0, DistanceMode::Exact);
    // Exhaustive certificate minimum over the 16 patterns, frozen from the test oracle.
    const double expected_min_certificate = 0.25;
    const bool ok = r.patterns.size() == 16 && *r.min_exact >= floor &&
                    r.min_certificate == expected_min_certificate;
    return Outcome{ok, "patterns " + std::to_string(r.patterns.size()) + ", min exact " + num(*r.min_exact) +
                           " >= 1/16, min certificate " + num(r.min_certificate) + " == 0.25"};
  });

  criterion(2, "counterexample at scale, n_max = 2 (dim 4112), 100 seeded patterns", 60, [&] {
    const auto r = experiment_counterexample(2, 100, 2024, DistanceMode::Certificate);
    // Disjoint blocks: the second block alone contributes at least 3/16.
    const bool ok = r.dim == 4112 && r.patterns.size() == 100 && r.min_certificate >= floor &&
                    r.min_certificate >= 3.0 / 16;
    return Outcome{ok, "min certificate " + num(r.min_certificate) + " (floor 1/16, expected >= 3/16)"};
  });

  criterion(3, "coefficient lower bound, 1000 vectors at n = 8", 30, [] { return suite("lemma33"); });

  criterion(4, "witness property, all subsets for n <= 12", 30, [] { return suite("lemma31"); });

  criterion(5, "two-set mix in dim 2, 20 trajectories, N = 10^4", 120, [&] {
    const RunConfig cfg = load_run_config(config_path("mix.json").string());
    const auto report = run_experiment(cfg);
    // V = conv{0, e1, e2}, W = {(2, 2)} in l2: the far point of V from (2, 2) is
    // the origin, so rho_H(V, W) = |(2, 2)| = sqrt(8).
    const double rho = std::sqrt(8.0);
    const double p = 0.5;
    double worst = 0;
    for (const auto& t : report.trajectories)
      for (const auto& rec : t.records) {
        const double freq = static_cast<double>(rec.atom_counts[0]) / static_cast<double>(rec.n);
        worst = std::max(worst, std::abs(rec.distance - std::abs(freq - p) * rho));
      }
    const Series& s = report.series.front();
    const double at100 = median_at(s, 100), final = s.summary.back().median;
    const bool slope_ok = s.fit.status == DecayFit::Status::Ok && s.fit.slope >= -0.65 && s.fit.slope <= -0.35;
    const bool ok = report.trajectories.size() == 20 && cfg.horizon == 10000 && worst <= 1e-9 &&
                    final < at100 / 5 && slope_ok;
    return Outcome{ok, "closed-form residual " + num(worst) + " <= 1e-9, median final " + num(final) +
                           " < median(n=100)/5 = " + num(at100 / 5) + ", slope " + num(s.fit.slope) +
                           " in [-0.65, -0.35]"};
  });

  criterion(6, "one-point gate for expectation {0}", 30, [] { return suite("onepoint"); });

  criterion(7, "finite-dimensional expectation demo, l2 dim 8, split 2, 20 trajectories, N = 10^4", 120, [&] {
    const RunConfig cfg = load_run_config(config_path("intermediate.json").string());
    const auto report = run_experiment(cfg);
    const auto& demo = std::get<FdExpectationDemo>(*cfg.process);
    double worst = -1e300;
    for (const auto& t : report.trajectories)
      for (const auto& rec : t.records) worst = std::max(worst, rec.distance - rec.shift_norm - rec.body_distance);
    const DecayFit& phi = report.series[1].fit;
    const DecayFit& lambda = report.series[2].fit;
    auto in_band = [](const DecayFit& f) {
      return f.status == DecayFit::Status::Ok && f.slope >= -0.65 && f.slope <= -0.35;
    };
    const bool ok = demo.v.space() == SpaceSpec(8, NormTag::L2) && demo.split == 2 &&
                    report.trajectories.size() == 20 && cfg.horizon == 10000 && worst <= 1e-9 &&
                    in_band(phi) && in_band(lambda);
    return Outcome{ok, "worst distance - phi - lambda " + num(worst) + " <= 1e-9, phi slope " + num(phi.slope) +
                           ", lambda slope " + num(lambda.slope) + " in [-0.65, -0.35]"};
  });

  criterion(8, "metric and embedding suite", 120, [] {
    Outcome a = suite("radstrom");
    const Outcome b = suite("core");
    return Outcome{a.passed && b.passed, a.detail + "; " + b.detail};
  });

  criterion(9, "determinism: reruns and thread counts give byte-identical outputs", 120, [&] {
    const fs::path root = fs::temp_directory_path() / "setlab_acceptance";
    fs::remove_all(root);
    std::ostringstream sink;
    int files = 0;
    std::string differing;
    auto compare = [&](const fs::path& a, const fs::path& b) {
      for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        const fs::path other = b / entry.path().filename();
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
          differing += " " + entry.path().filename().string();
      }
    };
    const unsigned threads[] = {1, 4, 1};
    for (const char* name : {"mix.json", "intermediate.json", "reduced.json", "constant.json"}) {
      std::vector<fs::path> dirs;
      for (int run = 0; run < 3; ++run) {
        dirs.push_back(root / (std::string(name) + "." + std::to_string(run)));
        if (cmd_slln(config_path(name).string(), dirs.back().string(), threads[run], sink, sink) != kExitOk)
          differing += std::string(" (") + name + " failed)";
      }
      compare(dirs[0], dirs[1]);
      compare(dirs[0], dirs[2]);
    }
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / ("counterexample." + std::to_string(run));
      cmd_counterexample({2, "certificate", "sample:100", 2024, dir.string()}, sink, sink);
    }
    compare(root / "counterexample.0", root / "counterexample.1");
    fs::remove_all(root);
    return Outcome{differing.empty() && files > 0,
                   std::to_string(files) + " file comparisons (threads 1, 4 and a rerun)" +
                       (differing.empty() ? ", all identical" : "; differing:" + differing)};
  });

  return failures == 0 ? 0 : 1;
}
