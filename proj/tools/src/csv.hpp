#pragma once

#include <string>
#include <vector>

#include "rankfd/data.hpp"
#include "rankfd/matrix.hpp"

namespace rankfd::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 reader: quoted fields, embedded separators/quotes/newlines,
/// CRLF line endings. First record is the header.
CsvTable read_csv(const std::string& path);

struct LoadedDataset {
    Dataset data;
    std::vector<std::string> factor_names;              // 1 or 2
    std::vector<std::vector<std::string>> level_names;  // per factor, cell order
    std::vector<std::string> cell_labels;               // per group, "lvl" or "lvlA:lvlB"
};

/// Builds a Dataset from a CSV file: `response` must be numeric, factor
/// cells non-empty. Cells are ordered by sorted factor levels (row-major for
/// two factors) unless `levels_override` fixes the order; entries are
/// per-factor comma lists joined by ';' (e.g. "normal,reduced;placebo,drug").
/// Errors carry 1-based data row numbers.
LoadedDataset load_dataset(const std::string& path, const std::string& response,
                           const std::vector<std::string>& factors,
                           const std::string& levels_override = "");

/// Numeric rows x d contrast matrix, no header row.
num::Matrix load_contrast_csv(const std::string& path);

} // namespace rankfd::cli
