#include "market_clock/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "market_clock/parallel.hpp"

namespace mclock {

namespace {

void check_config(const ExperimentConfig& config, double x, double level) {
    if (config.reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (!(x > 0.0) || !(level > 0.0)) throw std::invalid_argument("wealth levels must be positive");
}

ReplicationRow to_row(std::size_t rep, const PathRecord& path, double level) {
    const Upcrossing up = first_upcrossing(path, level);
    ReplicationRow row;
    row.rep = rep;
    row.reached = up.reached;
    row.tau = up.calendar_time;
    row.market_time = up.market_time;
    row.overshoot = up.overshoot;
    row.log1p_alpha = std::log1p(path.max_relative_jump);
    return row;
}

}  // namespace

Histogram make_histogram(const std::vector<double>& samples, double bin_width) {
    Histogram h;
    h.bin_width = bin_width;
    if (samples.empty()) return h;
    if (!(bin_width > 0.0)) {
        h.counts.assign(1, samples.size());
        return h;
    }
    const double top = *std::max_element(samples.begin(), samples.end());
    h.counts.assign(static_cast<std::size_t>(std::floor(std::max(0.0, top) / bin_width)) + 1, 0);
    for (double s : samples) {
        const auto bin = static_cast<std::size_t>(std::floor(std::max(0.0, s) / bin_width));
        ++h.counts[std::min(bin, h.counts.size() - 1)];
    }
    return h;
}

ExperimentReport summarize_replications(std::vector<ReplicationRow> rows, Scheme scheme, std::uint64_t seed,
                                        double histogram_bin_width) {
    ExperimentReport report;
    report.scheme = scheme;
    report.seed = seed;
    report.reps = rows.size();

    double sum_t = 0.0;
    double sum_tau = 0.0;
    double sum_alpha = 0.0;
    for (const auto& row : rows) {
        sum_alpha += row.log1p_alpha;
        if (!row.reached) continue;
        ++report.reached;
        sum_t += row.market_time;
        sum_tau += row.tau;
        report.overshoot_samples.push_back(row.overshoot);
    }
    const auto n = static_cast<double>(report.reached);
    report.reached_fraction = report.reps ? n / static_cast<double>(report.reps) : 0.0;
    report.mean_log1p_alpha = report.reps ? sum_alpha / static_cast<double>(report.reps) : 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (report.reached == 0) {
        report.mean_T = inf;
        report.mean_tau = inf;
        report.stderr_T = inf;
        report.var_T = inf;
    } else {
        report.mean_T = sum_t / n;
        report.mean_tau = sum_tau / n;
        double ss = 0.0;
        for (const auto& row : rows) {
            if (row.reached) ss += (row.market_time - report.mean_T) * (row.market_time - report.mean_T);
        }
        report.var_T = report.reached > 1 ? ss / (n - 1.0) : 0.0;
        report.stderr_T = report.reached > 1 ? std::sqrt(report.var_T / n) : inf;
    }
    if (report.reached < report.reps) {
        report.warnings.push_back(std::to_string(report.reps - report.reached) + " of " + std::to_string(report.reps) +
                                  " replications did not reach the level within the budget; they are excluded from "
                                  "mean_T, which is therefore biased downward");
    }
    report.overshoot_histogram = make_histogram(report.overshoot_samples, histogram_bin_width);
    report.rows = std::move(rows);
    return report;
}

ExperimentReport upcrossing_experiment(const LevyMarketSpec& spec, const GrowthSolution& growth,
                                       const Strategy& strategy, double x, double level,
                                       const ExperimentConfig& config) {
    check_config(config, x, level);
    const Vector pi = strategy.numeraire ? growth.rho : strategy.pi;
    if (!in_constraint_set(pi, ConstraintQuery(spec))) throw DomainError("strategy outside the natural constraints");

    std::vector<ReplicationRow> rows(config.reps);
    parallel_for(config.reps, config.threads, [&](std::size_t i) {
        Rng rng = make_stream(config.master_seed, i);
        const PathRecord path = simulate_levy_log_wealth(spec, pi, growth, x, level, config.sim, rng);
        rows[i] = to_row(i, path, level);
    });
    const double alpha = alpha_constant(pi, spec);
    const double width = config.histogram_bin_width.value_or(alpha > 0.0 ? std::log1p(alpha) / 50.0 : 0.0);
    return summarize_replications(std::move(rows), config.sim.scheme, config.master_seed, width);
}

ExperimentReport upcrossing_experiment(const ItoMarketSpec& spec, const Strategy& strategy, double x, double level,
                                       const ExperimentConfig& config) {
    check_config(config, x, level);
    std::vector<ReplicationRow> rows(config.reps);
    parallel_for(config.reps, config.threads, [&](std::size_t i) {
        Rng rng = make_stream(config.master_seed, i);
        const PathRecord path = simulate_ito_log_wealth(spec, strategy, x, level, config.sim, rng);
        rows[i] = to_row(i, path, level);
    });
    return summarize_replications(std::move(rows), Scheme::grid, config.master_seed,
                                  config.histogram_bin_width.value_or(0.0));
}

}  // namespace mclock
