#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "setlab/slln_lab.hpp"

namespace setlab {

inline constexpr const char* kCsvHeader = "experiment_id,trajectory_id,n,distance,mode";

struct CsvRow {
  std::string experiment_id;
  std::string trajectory_id;
  std::int64_t n;
  double distance;
  std::string mode;
};

class CsvError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

/// Parses a CSV with exactly the header above; throws CsvError with the line number.
std::vector<CsvRow> read_csv(std::istream& in);

/// One row per trajectory and checkpoint. Decomposed runs add rows with
/// experiment ids "<id>.phi" (singleton part) and "<id>.lambda" (set part).
std::vector<CsvRow> csv_rows(const ExperimentReport& report);

/// One row per pattern and evaluated mode; trajectory_id is the psi bit string.
std::vector<CsvRow> csv_rows(const CounterexampleReport& report);

}  // namespace setlab
