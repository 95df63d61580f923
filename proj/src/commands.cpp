#include "setlab/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "setlab/config.hpp"
#include "setlab/csv.hpp"
#include "setlab/errors.hpp"
#include "setlab/svg_plot.hpp"
#include "setlab/verify.hpp"

namespace setlab {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

// "all" -> 0, "sample:K" -> K.
std::optional<int> parse_omega(const std::string& omega) {
  if (omega == "all") return 0;
  const std::string prefix = "sample:";
  if (omega.rfind(prefix, 0) != 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const int k = std::stoi(omega.substr(prefix.size()), &used);
    if (used != omega.size() - prefix.size() || k < 1) return std::nullopt;
    return k;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int cmd_counterexample(const CounterexampleOptions& opt, std::ostream& out, std::ostream& err) {
  const auto samples = parse_omega(opt.omega);
  if (!samples) {
    err << "error: --omega must be 'all' or 'sample:K' with K >= 1\n";
    return kExitUsage;
  }
  DistanceMode mode;
  try {
    mode = distance_mode_from_string(opt.mode);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  CounterexampleReport report;
  try {
    report = experiment_counterexample(opt.n, *samples, opt.seed, mode);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  write_file(dir / "counterexample.csv", csv_text(csv_rows(report)));
  write_file(dir / "counterexample.json", dump(to_json(report)));
  out << "n_max = " << report.n_max << ", N = " << report.n << ", dim = " << report.dim << ", "
      << report.patterns.size() << " patterns\n";
  out << "min certificate = " << format_real(report.min_certificate) << '\n';
  if (report.min_exact) out << "min exact = " << format_real(*report.min_exact) << '\n';
  out << "floor 1/16 " << (report.passed() ? "holds" : "FAILS") << '\n';
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_slln(const std::string& config_path, const std::optional<std::string>& out_dir,
             std::optional<unsigned> threads, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    for (const auto& m : e.messages()) err << "config error: " << m << '\n';
    return kExitUsage;
  }
  // The emitted config is the one loaded; the overrides below do not change results.
  const std::string config_text = dump(to_json(cfg));
  if (threads) cfg.threads = *threads;
  const std::filesystem::path dir(out_dir ? *out_dir : cfg.output_dir.empty() ? "." : cfg.output_dir);

  ExperimentReport report;
  try {
    report = run_experiment(cfg);
  } catch (const HypothesisNotMet& e) {
    err << "rejected: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "aborted: " << e.what() << '\n';
    return kExitFailure;
  }

  std::filesystem::create_directories(dir);
  const auto rows = csv_rows(report);
  write_file(dir / (cfg.id + ".config.json"), config_text);
  if (cfg.emit.csv) write_file(dir / (cfg.id + ".csv"), csv_text(rows));
  if (cfg.emit.json) write_file(dir / (cfg.id + ".json"), dump(to_json(report)));
  if (cfg.emit.svg) write_file(dir / (cfg.id + ".svg"), render_svg(rows, cfg.id + " (" + report.kind + ")"));

  for (const auto& s : report.series) {
    out << s.id << ": ";
    if (s.fit.status == DecayFit::Status::Ok) out << "slope " << format_real(s.fit.slope) << '\n';
    else out << "slope undefined (fewer than 3 positive points)\n";
  }
  for (const auto& c : report.checks)
    out << to_string(c.status) << ' ' << c.name << " = " << format_real(c.value) << '\n';
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<PropertyResult> results;
  try {
    results = run_suite(suite);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, std::ostream& out,
             std::ostream& err) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << csv_path << '\n';
    return kExitUsage;
  }
  std::string svg;
  try {
    svg = render_svg(read_csv(in), std::filesystem::path(csv_path).stem().string());
  } catch (const CsvError& e) {
    err << "error: " << csv_path << ": " << e.what() << '\n';
    return kExitUsage;
  }
  write_file(svg_path, svg);
  out << "wrote " << svg_path << '\n';
  return kExitOk;
}

}  // namespace setlab
