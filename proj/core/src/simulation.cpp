#include "rankfd/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "rankfd/contrasts.hpp"
#include "rankfd/errors.hpp"

namespace rankfd::sim {

namespace {

struct Counts {
    std::map<Method, std::size_t> rejected;
    std::size_t failed = 0;
};

/// Decision for every requested method on one dataset; rejection is
/// p-value < alpha (equivalent to statistic above its critical value).
void run_methods(const Dataset& data, const HypothesisSpec& hyp,
                 const std::vector<Method>& methods, double alpha,
                 std::uint64_t mc_runs, std::uint64_t eigen_seed,
                 std::uint64_t eigen_stream, std::uint64_t eigen_substream,
                 Counts& counts) {
    const bool needs_effects =
        std::any_of(methods.begin(), methods.end(),
                    [](Method m) { return m != Method::KruskalWallis; });
    EffectEstimates est;
    CovarianceEstimate cov;
    F1Components f1;
    if (needs_effects) {
        const RankTables tables(data);
        est = unweighted_effects(data, tables);
        cov = covariance_estimate(data, tables);
        f1 = f1_components(data, tables);
    }
    for (Method m : methods) {
        TestResult res;
        switch (m) {
            case Method::AtsF: res = ats_f_test(est, cov, hyp, f1.f1, alpha); break;
            case Method::AtsBox: res = ats_box_test(est, cov, hyp, alpha); break;
            case Method::AtsEigen:
                // inner Monte-Carlo on its own substream, independent of the
                // data draws of the same replication
                res = ats_eigen_test(est, cov, hyp, alpha, mc_runs, eigen_seed,
                                     eigen_stream, eigen_substream);
                break;
            case Method::Wald: res = wald_type_statistic(est, cov, hyp, alpha); break;
            case Method::KruskalWallis: res = kruskal_wallis(data, alpha); break;
        }
        if (res.p_value < alpha) ++counts.rejected[m];
    }
}

} // namespace

std::string distribution_name(ErrorDistribution d) {
    switch (d) {
        case ErrorDistribution::Normal: return "normal";
        case ErrorDistribution::DoubleExponential: return "dexp";
        case ErrorDistribution::LogNormal: return "lognormal";
    }
    return "?";
}

std::optional<ErrorDistribution> parse_distribution(const std::string& name) {
    if (name == "normal") return ErrorDistribution::Normal;
    if (name == "dexp" || name == "double-exponential" || name == "doubleexp")
        return ErrorDistribution::DoubleExponential;
    if (name == "lognormal" || name == "lognor")
        return ErrorDistribution::LogNormal;
    return std::nullopt;
}

SimSetting SimSetting::standard(int id) {
    static const std::array<std::size_t, 4> balanced{5, 5, 5, 5};
    static const std::array<std::size_t, 4> unbalanced{10, 20, 30, 40};
    static const std::array<double, 4> unit{1.0, 1.0, 1.0, 1.0};
    static const std::array<double, 4> increasing{1.0, std::sqrt(2.0), 2.0,
                                                  std::sqrt(5.0)};
    static const std::array<double, 4> decreasing{std::sqrt(5.0), 2.0,
                                                  std::sqrt(2.0), 1.0};
    switch (id) {
        case 1: return {1, balanced, unit};
        case 2: return {2, unbalanced, unit};
        case 3: return {3, balanced, increasing};
        case 4: return {4, unbalanced, increasing};
        case 5: return {5, unbalanced, decreasing};
        default: throw domain_error("SimSetting::standard: id must be 1..5");
    }
}

Dataset generate_dataset(const SimSetting& setting, ErrorDistribution dist,
                         std::size_t m, num::RngStream& rng) {
    return generate_dataset(setting, dist, m, {0.0, 0.0, 0.0, 0.0}, rng);
}

Dataset generate_dataset(const SimSetting& setting, ErrorDistribution dist,
                         std::size_t m, const std::array<double, 4>& mu,
                         num::RngStream& rng) {
    std::vector<Sample> groups(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t n = setting.base_sizes[i] + m;
        groups[i].reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            double x;
            switch (dist) {
                case ErrorDistribution::Normal:
                    x = setting.sigma[i] * rng.next_normal();
                    break;
                case ErrorDistribution::DoubleExponential:
                    x = setting.sigma[i] * rng.next_double_exponential();
                    break;
                case ErrorDistribution::LogNormal:
                    x = rng.next_lognormal(setting.sigma[i]);
                    break;
                default: x = 0.0;
            }
            groups[i].push_back(mu[i] + x);
        }
    }
    return Dataset(std::move(groups));
}

double SimulationReport::standard_error(Method m) const {
    const auto it = rejection_rate.find(m);
    if (it == rejection_rate.end() || nsim == 0) return 0.0;
    const double r = it->second;
    return std::sqrt(r * (1.0 - r) / static_cast<double>(nsim));
}

unsigned resolve_thread_count(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (const char* cap = std::getenv("RANKFX_THREADS")) {
        const long parsed = std::strtol(cap, nullptr, 10);
        if (parsed > 0) n = std::min<unsigned>(n, static_cast<unsigned>(parsed));
    }
    return std::max(1u, n);
}

namespace {

/// Runs `nsim` independent replications, each a pure function of
/// (seed, replication), partitioned over workers.
template <typename PerReplication>
Counts run_parallel(std::size_t nsim, unsigned threads, PerReplication body) {
    threads = resolve_thread_count(threads);
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, std::max<std::size_t>(nsim, 1)));
    std::vector<Counts> partial(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t r = t; r < nsim; r += threads) {
                try {
                    body(r, partial[t]);
                } catch (const error&) {
                    ++partial[t].failed;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    Counts total;
    for (const Counts& c : partial) {
        total.failed += c.failed;
        for (const auto& [m, k] : c.rejected) total.rejected[m] += k;
    }
    return total;
}

} // namespace

SimulationReport type_one_error(const SimSetting& setting, ErrorDistribution dist,
                                std::size_t m, const std::vector<Method>& methods,
                                const SimulationOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const HypothesisSpec hyp = one_way_hypothesis(4);

    const Counts counts = run_parallel(
        options.nsim, options.threads, [&](std::size_t r, Counts& local) {
            num::RngStream data_rng(options.seed, r, 0);
            const Dataset data = generate_dataset(setting, dist, m, data_rng);
            run_methods(data, hyp, methods, options.alpha, options.mc_runs,
                        options.seed, r, 1, local);
        });

    SimulationReport report;
    report.setting_id = setting.id;
    report.distribution = dist;
    for (std::size_t i = 0; i < 4; ++i) report.sizes[i] = setting.base_sizes[i] + m;
    report.nsim = options.nsim;
    report.alpha = options.alpha;
    report.seed = options.seed;
    report.mc_runs = options.mc_runs;
    report.failed_replications = counts.failed;
    for (Method meth : methods) {
        const auto it = counts.rejected.find(meth);
        const std::size_t k = it == counts.rejected.end() ? 0 : it->second;
        report.rejection_rate[meth] =
            static_cast<double>(k) / static_cast<double>(options.nsim);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::vector<PowerRow> power_curve(Alternative alt, const std::vector<double>& deltas,
                                  std::size_t n, const std::vector<Method>& methods,
                                  const SimulationOptions& options) {
    SimSetting setting;
    setting.id = 0;
    setting.base_sizes = {n, n, n, n};
    setting.sigma = {1.0, 1.0, 1.0, 1.0};
    const HypothesisSpec hyp = one_way_hypothesis(4);

    std::vector<PowerRow> rows;
    rows.reserve(deltas.size());
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        const double delta = deltas[di];
        const std::array<double, 4> mu =
            alt == Alternative::OnePoint
                ? std::array<double, 4>{0.0, 0.0, 0.0, delta}
                : std::array<double, 4>{delta / 4.0, delta / 2.0,
                                        3.0 * delta / 4.0, delta};
        const Counts counts = run_parallel(
            options.nsim, options.threads, [&](std::size_t r, Counts& local) {
                // each (delta, replication) pair gets its own streams
                num::RngStream data_rng(options.seed, r, 2 + 2 * di);
                const Dataset data = generate_dataset(
                    setting, ErrorDistribution::Normal, 0, mu, data_rng);
                run_methods(data, hyp, methods, options.alpha, options.mc_runs,
                            options.seed, r, 3 + 2 * di, local);
            });
        PowerRow row;
        row.delta = delta;
        for (Method meth : methods) {
            const auto it = counts.rejected.find(meth);
            const std::size_t k = it == counts.rejected.end() ? 0 : it->second;
            row.rejection_rate[meth] =
                static_cast<double>(k) / static_cast<double>(options.nsim);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

EffectConsistency effect_consistency_check(const std::array<std::size_t, 3>& sizes,
                                           std::uint64_t seed) {
    num::RngStream rng(seed, 0, 0);
    const std::array<double, 3> mu{1.0, 0.0, -1.0};
    std::vector<Sample> groups(3);
    for (std::size_t i = 0; i < 3; ++i) {
        groups[i].reserve(sizes[i]);
        for (std::size_t k = 0; k < sizes[i]; ++k)
            groups[i].push_back(mu[i] + rng.next_normal());
    }
    const Dataset data{std::move(groups)};
    const EffectEstimates est = unweighted_effects(data);
    return {est.p, est.r};
}

} // namespace rankfd::sim
