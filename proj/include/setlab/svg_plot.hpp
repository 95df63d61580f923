#pragma once

#include <string>
#include <vector>

#include "setlab/csv.hpp"

namespace setlab {

/// Log-log chart of distance against n: one polyline per trajectory, coloured
/// by experiment id, with a per-experiment median overlay. Points with a
/// nonpositive distance are skipped. The output depends only on the rows.
/// Throws CsvError when there are no rows.
std::string render_svg(const std::vector<CsvRow>& rows, const std::string& title);

}  // namespace setlab
