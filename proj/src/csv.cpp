#include "setlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace setlab {

std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.experiment_id << ',' << r.trajectory_id << ',' << r.n << ',' << format_real(r.distance)
        << ',' << r.mode << '\n';
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError("line 1: expected header '" + std::string(kCsvHeader) + "'");
  std::vector<CsvRow> rows;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (cells.size() != 5) throw CsvError(where + "expected 5 fields, got " + std::to_string(cells.size()));
    CsvRow row{cells[0], cells[1], 0, 0, cells[4]};
    const auto& n = cells[2];
    if (auto r = std::from_chars(n.data(), n.data() + n.size(), row.n);
        r.ec != std::errc() || r.ptr != n.data() + n.size() || row.n < 1)
      throw CsvError(where + "n must be a positive integer, got '" + n + "'");
    const auto& d = cells[3];
    if (auto r = std::from_chars(d.data(), d.data() + d.size(), row.distance);
        r.ec != std::errc() || r.ptr != d.data() + d.size() || !std::isfinite(row.distance) ||
        row.distance < 0)
      throw CsvError(where + "distance must be a nonnegative number, got '" + d + "'");
    if (row.experiment_id.empty() || row.trajectory_id.empty())
      throw CsvError(where + "experiment_id and trajectory_id must be nonempty");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CsvRow> csv_rows(const ExperimentReport& report) {
  std::vector<CsvRow> rows;
  const std::string mode = to_string(report.mode);
  auto emit = [&](const std::string& id, double CheckpointRecord::*field) {
    for (std::size_t t = 0; t < report.trajectories.size(); ++t)
      for (const auto& r : report.trajectories[t].records)
        rows.push_back({id, std::to_string(t), r.n, r.*field, mode});
  };
  emit(report.experiment_id, &CheckpointRecord::distance);
  const bool decomposed = !report.trajectories.empty() && !report.trajectories.front().records.empty() &&
                          !std::isnan(report.trajectories.front().records.front().shift_norm);
  if (decomposed) {
    emit(report.experiment_id + ".phi", &CheckpointRecord::shift_norm);
    emit(report.experiment_id + ".lambda", &CheckpointRecord::body_distance);
  }
  return rows;
}

std::vector<CsvRow> csv_rows(const CounterexampleReport& report) {
  std::vector<CsvRow> rows;
  const std::string id = "counterexample.n" + std::to_string(report.n_max);
  for (const auto& p : report.patterns) {
    rows.push_back({id, p.psi, report.n, p.certificate, "certificate"});
    if (p.exact) rows.push_back({id, p.psi, report.n, *p.exact, "exact"});
  }
  return rows;
}

}  // namespace setlab
