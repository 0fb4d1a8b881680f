#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankfd/inference.hpp"

namespace rankfd::cli {

struct ReportContext {
    std::string data_path;
    std::vector<std::string> cell_labels;
    std::vector<std::string> hypothesis_labels;
};

nlohmann::json report_to_json(const AnalysisReport& report, const ReportContext& ctx);
std::string report_to_text(const AnalysisReport& report, const ReportContext& ctx);

/// "<0.0001" below the display threshold; JSON always carries raw values.
std::string format_p_value(double p);

} // namespace rankfd::cli
