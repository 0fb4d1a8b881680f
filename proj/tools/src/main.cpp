#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "report.hpp"
#include "rankfd/errors.hpp"
#include "rankfd/simulation.hpp"

namespace {

using namespace rankfd;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Method> parse_methods(const std::string& csv) {
    std::vector<Method> out;
    for (const std::string& name : split_list(csv)) {
        const auto m = parse_method(name);
        if (!m) throw domain_error("unknown method '" + name + "'");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw domain_error("no methods selected");
    return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    for (const std::string& tok : split_list(csv)) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw domain_error("not a number: '" + tok + "'");
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_data_error("cannot write " + path);
    out << text;
}

struct AnalyzeArgs {
    std::string data;
    std::string response;
    std::string factors;
    std::vector<std::string> hypotheses;
    std::string methods = "ats-f";
    double alpha = 0.05;
    std::string transform = "logit";
    std::uint64_t mc_runs = 10000;
    std::uint64_t seed = 0;
    std::string levels;
    std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
    if (!(args.alpha > 0.0 && args.alpha <= 0.5))
        throw domain_error("--alpha must lie in (0, 0.5]");
    const std::vector<std::string> factor_names = split_list(args.factors);
    const cli::LoadedDataset loaded =
        cli::load_dataset(args.data, args.response, factor_names, args.levels);
    const bool two_way = loaded.data.layout().has_value();

    std::vector<std::string> requested = args.hypotheses;
    if (requested.empty())
        requested = two_way ? std::vector<std::string>{"A", "B", "AB"}
                            : std::vector<std::string>{"oneway"};

    std::vector<HypothesisSpec> hypotheses;
    for (const std::string& name : requested) {
        if (name == "oneway") {
            hypotheses.push_back(one_way_hypothesis(loaded.data.group_count()));
        } else if (name == "A" || name == "B" || name == "AB") {
            if (!two_way)
                throw layout_error("hypothesis '" + name +
                                   "' requires two factor columns");
            const TwoWayHypotheses h =
                two_way_hypotheses(loaded.data.layout()->a, loaded.data.layout()->b);
            hypotheses.push_back(name == "A"   ? h.main_a
                                 : name == "B" ? h.main_b
                                               : h.interaction);
        } else if (name.rfind("custom:", 0) == 0) {
            const num::Matrix c = cli::load_contrast_csv(name.substr(7));
            if (c.cols() != loaded.data.group_count())
                throw invalid_contrast_error(
                    "contrast has " + std::to_string(c.cols()) +
                    " columns, data has " +
                    std::to_string(loaded.data.group_count()) + " groups");
            hypotheses.push_back(projection_from_contrast(c));
        } else {
            throw domain_error("unknown hypothesis '" + name +
                               "' (expected oneway, A, B, AB or custom:<path>)");
        }
    }

    AnalysisOptions options;
    options.methods = parse_methods(args.methods);
    options.alpha = args.alpha;
    options.mc_runs = args.mc_runs;
    options.seed = args.seed;
    if (args.transform == "logit")
        options.transform = CiTransform::Logit;
    else if (args.transform == "identity")
        options.transform = CiTransform::Identity;
    else
        throw domain_error("--transform must be logit or identity");

    const AnalysisReport report = analyze(loaded.data, hypotheses, options);

    cli::ReportContext ctx;
    ctx.data_path = args.data;
    ctx.cell_labels = loaded.cell_labels;
    for (const auto& h : hypotheses) ctx.hypothesis_labels.push_back(h.label);

    const std::string text = cli::report_to_text(report, ctx);
    fmt::print("{}", text);
    if (!args.out.empty()) {
        write_text_file(args.out + ".txt", text);
        write_text_file(args.out + ".json",
                        cli::report_to_json(report, ctx).dump(2) + "\n");
    }
    return 0;
}

struct SimulateArgs {
    int setting = 1;
    std::string dist = "normal";
    std::size_t m = 0;
    std::size_t nsim = 2000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    std::uint64_t mc_runs = 10000;
    std::string methods = "kw,wald,ats-eigen,ats-box,ats-f";
    bool power = false;
    std::string alt = "one-point";
    std::size_t n = 15;
    std::string deltas;
    std::string out;
    std::string json_out;
};

int run_simulate(const SimulateArgs& args) {
    const auto dist = sim::parse_distribution(args.dist);
    if (!dist) throw domain_error("unknown distribution '" + args.dist + "'");
    const std::vector<Method> methods = parse_methods(args.methods);

    sim::SimulationOptions options;
    options.nsim = args.nsim;
    options.alpha = args.alpha;
    options.seed = args.seed;
    options.mc_runs = args.mc_runs;

    std::string csv;
    nlohmann::json jrep;
    if (args.power) {
        sim::Alternative alt;
        if (args.alt == "one-point")
            alt = sim::Alternative::OnePoint;
        else if (args.alt == "trend")
            alt = sim::Alternative::Trend;
        else
            throw domain_error("--alt must be one-point or trend");
        std::vector<double> deltas;
        if (args.deltas.empty())
            for (int k = 0; k <= 16; ++k) deltas.push_back(0.1 * k);
        else
            deltas = parse_doubles(args.deltas);

        const std::vector<sim::PowerRow> rows =
            sim::power_curve(alt, deltas, args.n, methods, options);

        csv = "alternative,n,nsim,alpha,seed,delta";
        for (Method m : methods) csv += "," + method_name(m);
        csv += "\n";
        jrep = {{"alternative", args.alt}, {"n", args.n},   {"nsim", args.nsim},
                {"alpha", args.alpha},    {"seed", args.seed}, {"rows", nlohmann::json::array()}};
        for (const auto& row : rows) {
            csv += fmt::format("{},{},{},{:g},{},{:.2f}", args.alt, args.n,
                               args.nsim, args.alpha, args.seed, row.delta);
            nlohmann::json jrow{{"delta", row.delta}};
            for (Method m : methods) {
                const double rate = row.rejection_rate.at(m);
                csv += fmt::format(",{:.4f}", rate);
                jrow[method_name(m)] = rate;
                jrow[method_name(m) + "_se"] = std::sqrt(
                    rate * (1.0 - rate) / static_cast<double>(args.nsim));
            }
            csv += "\n";
            jrep["rows"].push_back(std::move(jrow));
        }
    } else {
        const sim::SimSetting setting = sim::SimSetting::standard(args.setting);
        const sim::SimulationReport report =
            sim::type_one_error(setting, *dist, args.m, methods, options);

        csv = "setting,distribution,n1,n2,n3,n4,nsim,alpha,seed";
        for (Method m : methods) csv += "," + method_name(m);
        csv += "\n";
        csv += fmt::format("{},{},{},{},{},{},{},{:g},{}", report.setting_id,
                           sim::distribution_name(report.distribution),
                           report.sizes[0], report.sizes[1], report.sizes[2],
                           report.sizes[3], report.nsim, report.alpha, report.seed);
        jrep = {{"setting", report.setting_id},
                {"distribution", sim::distribution_name(report.distribution)},
                {"sizes", report.sizes},
                {"nsim", report.nsim},
                {"alpha", report.alpha},
                {"seed", report.seed},
                {"mc_runs", report.mc_runs},
                {"failed_replications", report.failed_replications},
                {"runtime_seconds", report.runtime_seconds},
                {"rates", nlohmann::json::object()}};
        for (Method m : methods) {
            const double rate = report.rejection_rate.at(m);
            csv += fmt::format(",{:.4f}", rate);
            jrep["rates"][method_name(m)] = {
                {"rate", rate}, {"se", report.standard_error(m)}};
        }
        csv += "\n";
        if (report.failed_replications > 0)
            fmt::print(stderr, "warning: {} failed replications\n",
                       report.failed_replications);
    }

    if (args.out.empty())
        fmt::print("{}", csv);
    else
        write_text_file(args.out, csv);
    if (!args.json_out.empty()) write_text_file(args.json_out, jrep.dump(2) + "\n");
    return 0;
}

struct EffectFnArgs {
    std::string data;
    std::string response;
    std::string factors;
    std::string levels;
    std::string coeffs;
    std::size_t refine = 0;
    std::string out;
};

int run_effect_fn(const EffectFnArgs& args) {
    const cli::LoadedDataset loaded = cli::load_dataset(
        args.data, args.response, split_list(args.factors), args.levels);
    const std::vector<double> coeffs = parse_doubles(args.coeffs);

    std::vector<double> grid;
    for (const auto& g : loaded.data.groups())
        grid.insert(grid.end(), g.begin(), g.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (args.refine > 0 && grid.size() > 1) {
        const double lo = grid.front(), hi = grid.back();
        for (std::size_t k = 0; k <= args.refine; ++k)
            grid.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                    static_cast<double>(args.refine));
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }

    const auto values = empirical_effect_function(loaded.data, coeffs, grid);
    std::string csv = "x,value\n";
    for (const auto& [x, v] : values) csv += fmt::format("{:.12g},{:.12g}\n", x, v);

    if (args.out.empty())
        fmt::print("{}", csv);
    else
        write_text_file(args.out, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-based inference for nonparametric treatment effects in "
                 "factorial designs"};
    app.require_subcommand(1);

    AnalyzeArgs a;
    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Estimate relative effects and run rank-based tests");
    analyze_cmd->add_option("--data", a.data, "Input CSV file")->required();
    analyze_cmd->add_option("--response", a.response, "Response column")->required();
    analyze_cmd->add_option("--factors", a.factors, "Factor column (1 or 2, comma separated)")
        ->required();
    analyze_cmd->add_option("--hypothesis", a.hypotheses,
                            "oneway, A, B, AB or custom:<csv> (repeatable)");
    analyze_cmd->add_option("--methods", a.methods,
                            "ats-f, ats-box, ats-eigen, wald, kw (comma separated)");
    analyze_cmd->add_option("--alpha", a.alpha, "Significance level (0, 0.5]");
    analyze_cmd->add_option("--transform", a.transform, "CI transform: logit|identity");
    analyze_cmd->add_option("--mc-runs", a.mc_runs, "ats-eigen Monte-Carlo runs");
    analyze_cmd->add_option("--seed", a.seed, "ats-eigen Monte-Carlo seed");
    analyze_cmd->add_option("--levels", a.levels,
                            "Level order override, per factor: 'a1,a2;b1,b2'");
    analyze_cmd->add_option("--out", a.out, "Report file prefix (.txt/.json)");

    SimulateArgs s;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Monte-Carlo type-I error and power studies");
    sim_cmd->add_option("--setting", s.setting, "Standard setting id 1..5");
    sim_cmd->add_option("--dist", s.dist, "normal|dexp|lognormal");
    sim_cmd->add_option("--m", s.m, "Sample size increment");
    sim_cmd->add_option("--nsim", s.nsim, "Simulation replications");
    sim_cmd->add_option("--alpha", s.alpha, "Significance level");
    sim_cmd->add_option("--seed", s.seed, "Replication seed");
    sim_cmd->add_option("--mc-runs", s.mc_runs, "Inner ats-eigen Monte-Carlo runs");
    sim_cmd->add_option("--methods", s.methods, "Methods to simulate");
    sim_cmd->add_flag("--power", s.power, "Power study instead of type-I error");
    sim_cmd->add_option("--alt", s.alt, "Power alternative: one-point|trend");
    sim_cmd->add_option("--n", s.n, "Per-group size for the power study");
    sim_cmd->add_option("--deltas", s.deltas, "Power shift grid (comma separated)");
    sim_cmd->add_option("--out", s.out, "Output CSV path (default stdout)");
    sim_cmd->add_option("--json", s.json_out, "Also write a JSON report here");

    EffectFnArgs e;
    CLI::App* fn_cmd = app.add_subcommand(
        "effect-fn", "Export an empirical effect function as CSV");
    fn_cmd->add_option("--data", e.data, "Input CSV file")->required();
    fn_cmd->add_option("--response", e.response, "Response column")->required();
    fn_cmd->add_option("--factors", e.factors, "Factor columns")->required();
    fn_cmd->add_option("--levels", e.levels, "Level order override");
    fn_cmd->add_option("--coeffs", e.coeffs, "Cell coefficients, comma separated")
        ->required();
    fn_cmd->add_option("--refine", e.refine, "Extra uniform grid points");
    fn_cmd->add_option("--out", e.out, "Output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) return run_analyze(a);
        if (*sim_cmd) return run_simulate(s);
        if (*fn_cmd) return run_effect_fn(e);
    } catch (const rankfd::error& err) {
        nlohmann::json j{{"error", {{"type", "rankfd"}, {"message", err.what()}}}};
        fmt::print("{}\n", j.dump());
        return 1;
    } catch (const std::exception& err) {
        nlohmann::json j{{"error", {{"type", "internal"}, {"message", err.what()}}}};
        fmt::print("{}\n", j.dump());
        return 2;
    }
    return 0;
}
