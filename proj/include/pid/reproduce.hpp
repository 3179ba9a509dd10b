#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pid {

enum class CellStatus { pass, fail, skipped };

struct ReproductionCell {
    std::string row;
    std::string column;
    double computed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    CellStatus status = CellStatus::skipped;
    std::string note;  ///< error text for failed computations, reason for skips
};

/// "results-table", "sec2-cases", "counterexamples".
const std::vector<std::string>& reproduction_tables();

/// Computes every cell of a published table and compares it with the
/// printed value. Solver failures become failed cells. ArgumentError for an
/// unknown table name.
std::vector<ReproductionCell> reproduce(std::string_view which);

std::string_view to_string(CellStatus status);

}  // namespace pid
