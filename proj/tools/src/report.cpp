#include "report.hpp"

#include <cmath>

#include <fmt/core.h>

namespace rankfd::cli {

namespace {

const char* kVersion = "0.1.0";

nlohmann::json matrix_to_json(const num::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string df_text(const TestResult& t) {
    if (t.method == Method::AtsEigen) return "(mc)";
    if (std::isnan(t.df2)) return fmt::format("{:.4g}", t.df1);
    return fmt::format("({:.4g}, {:.4g})", t.df1, t.df2);
}

std::string cell_of(const ReportContext& ctx, std::size_t index) {
    return index < ctx.cell_labels.size() ? ctx.cell_labels[index]
                                          : fmt::format("group {}", index + 1);
}

} // namespace

std::string format_p_value(double p) {
    if (p < 1e-4) return "<0.0001";
    return fmt::format("{:.4f}", p);
}

nlohmann::json report_to_json(const AnalysisReport& report, const ReportContext& ctx) {
    nlohmann::json j;

    j["effects"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.effects.p.size(); ++i) {
        j["effects"].push_back({{"index", i + 1},
                                {"cell", cell_of(ctx, i)},
                                {"n", report.effects.n[i]},
                                {"p", report.effects.p[i]}});
    }
    j["weighted_effects"] = report.effects.r;
    j["pairwise_effects"] = matrix_to_json(report.effects.pairwise.w);
    j["covariance"] = matrix_to_json(report.covariance.v);

    if (report.decomposition) {
        j["decomposition"] = {{"alpha", report.decomposition->alpha},
                              {"beta", report.decomposition->beta},
                              {"gamma", matrix_to_json(report.decomposition->gamma)}};
    }

    j["tests"] = nlohmann::json::array();
    for (const TestResult& t : report.tests) {
        nlohmann::json jt = {{"hypothesis", t.hypothesis},
                             {"method", method_name(t.method)},
                             {"statistic", t.statistic},
                             {"p_value", t.p_value},
                             {"critical_value", t.critical_value},
                             {"alpha", t.alpha}};
        nlohmann::json df = nlohmann::json::array();
        if (!std::isnan(t.df1)) df.push_back(t.df1);
        if (!std::isnan(t.df2)) df.push_back(t.df2);
        jt["df"] = std::move(df);
        if (t.method == Method::AtsEigen) {
            jt["mc_runs"] = t.mc_runs;
            jt["seed"] = t.seed;
        }
        j["tests"].push_back(std::move(jt));
    }

    j["cis"] = nlohmann::json::array();
    for (const ConfidenceInterval& ci : report.intervals) {
        j["cis"].push_back(
            {{"index", ci.index + 1},
             {"cell", cell_of(ctx, ci.index)},
             {"estimate", ci.estimate},
             {"lower", ci.lower},
             {"upper", ci.upper},
             {"level", ci.level},
             {"transform",
              ci.transform == CiTransform::Logit ? "logit" : "identity"}});
    }

    nlohmann::json methods = nlohmann::json::array();
    for (Method m : report.options.methods) methods.push_back(method_name(m));
    j["metadata"] = {{"version", kVersion},
                     {"data", ctx.data_path},
                     {"n", report.effects.n},
                     {"N", report.effects.total},
                     {"alpha", report.options.alpha},
                     {"transform", report.options.transform == CiTransform::Logit
                                       ? "logit"
                                       : "identity"},
                     {"mc_runs", report.options.mc_runs},
                     {"seed", report.options.seed},
                     {"methods", std::move(methods)},
                     {"hypotheses", ctx.hypothesis_labels}};
    return j;
}

std::string report_to_text(const AnalysisReport& report, const ReportContext& ctx) {
    std::string out;
    out += fmt::format("Data: {}  (d = {}, N = {})\n", ctx.data_path,
                       report.effects.p.size(), report.effects.total);
    out += "\nRelative effects\n";
    out += fmt::format("  {:<24}{:>4}  {:>8}  {:>8}  {:>18}\n", "cell", "n", "p",
                       "r", fmt::format("{:.0f}% CI for p", 100 * (1 - report.options.alpha)));
    for (std::size_t i = 0; i < report.effects.p.size(); ++i) {
        const ConfidenceInterval& ci = report.intervals[i];
        out += fmt::format("  {:<24}{:>4}  {:>8.4f}  {:>8.4f}  [{:.4f}, {:.4f}]\n",
                           cell_of(ctx, i), report.effects.n[i], report.effects.p[i],
                           report.effects.r[i], ci.lower, ci.upper);
    }

    if (report.decomposition) {
        out += "\nAdditive decomposition (p_ij = 1/2 + a_i + b_j + g_ij)\n";
        out += "  a:";
        for (double v : report.decomposition->alpha) out += fmt::format(" {:+.4f}", v);
        out += "\n  b:";
        for (double v : report.decomposition->beta) out += fmt::format(" {:+.4f}", v);
        out += "\n  g:";
        for (std::size_t i = 0; i < report.decomposition->gamma.rows(); ++i) {
            if (i) out += "    ";
            for (std::size_t jj = 0; jj < report.decomposition->gamma.cols(); ++jj)
                out += fmt::format(" {:+.4f}", report.decomposition->gamma(i, jj));
            out += "\n";
        }
    }

    out += "\nTests\n";
    out += fmt::format("  {:<18}{:<16}{:>12}  {:>14}  {:>9}\n", "hypothesis",
                       "method", "statistic", "df", "p-value");
    for (const TestResult& t : report.tests) {
        out += fmt::format("  {:<18}{:<16}{:>12.4f}  {:>14}  {:>9}\n", t.hypothesis,
                           method_name(t.method), t.statistic, df_text(t),
                           format_p_value(t.p_value));
    }
    return out;
}

} // namespace rankfd::cli
