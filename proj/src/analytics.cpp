#include "market_clock/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mclock {

namespace {

void check_positive_levels(double x, double level) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("x must be positive");
    if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("level must be positive");
}

void check_levels_increasing(const std::vector<double>& levels) {
    if (levels.empty()) throw std::invalid_argument("level list is empty");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (!(levels[i] > levels[i - 1])) throw std::invalid_argument("levels must be strictly increasing");
    }
}

template <typename RunLevel>
std::vector<RatioRow> ratio_rows(double x, const std::vector<double>& levels, double alpha, RunLevel&& run) {
    check_levels_increasing(levels);
    std::vector<RatioRow> rows;
    for (double level : levels) {
        check_positive_levels(x, level);
        RatioRow row;
        row.level = level;
        row.log_level = std::log(level);
        if (level <= x || row.log_level <= 0.0) {
            row.degenerate = true;
            rows.push_back(row);
            continue;
        }
        const ExperimentReport report = run(level);
        const BoundReport bounds = theoretical_bounds(x, level, alpha);
        row.mean_T = report.mean_T;
        row.stderr_T = report.stderr_T;
        row.reached_fraction = report.reached_fraction;
        row.ratio = report.mean_T / row.log_level;
        row.band_lo = bounds.lower / row.log_level;
        row.band_hi = bounds.upper / row.log_level;
        rows.push_back(row);
    }
    return rows;
}

ExperimentConfig experiment_config(const StudyConfig& config) {
    ExperimentConfig ec;
    ec.reps = config.reps;
    ec.master_seed = config.seed;
    ec.threads = config.threads;
    ec.sim = config.sim;
    return ec;
}

}  // namespace

BoundReport theoretical_bounds(double x, double level, double alpha) {
    check_positive_levels(x, level);
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
    BoundReport b;
    b.x = x;
    b.level = level;
    b.alpha_used = alpha;
    if (level <= x) return b;
    b.lower = std::log(level / x);
    b.upper = b.lower + std::log1p(alpha);
    return b;
}

BoundReport plug_in_bounds(double x, double level, double mean_log1p_alpha) {
    if (!(mean_log1p_alpha >= 0.0)) throw std::invalid_argument("plug-in E[log(1+alpha)] must be nonnegative");
    BoundReport b = theoretical_bounds(x, level, std::expm1(mean_log1p_alpha));
    if (level > x) b.upper = b.lower + mean_log1p_alpha;
    b.alpha_from_samples = true;
    return b;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::consistent: return "consistent";
        case Verdict::lower_violation: return "lower-violation";
        case Verdict::upper_violation: return "upper-violation";
    }
    return "unknown";
}

InsufficientReachError::InsufficientReachError(double fraction)
    : std::runtime_error("reached fraction " + std::to_string(fraction) + " is below " +
                         std::to_string(kMinReachedFraction) + "; truncation bias may exceed the standard error"),
      reached_fraction(fraction) {}

Verdict check_estimate(const ExperimentReport& report, const BoundReport& bounds, double k_sigma) {
    if (report.reached_fraction < kMinReachedFraction) throw InsufficientReachError(report.reached_fraction);
    const double spread = k_sigma * report.stderr_T;
    if (report.mean_T + spread < bounds.lower) return Verdict::lower_violation;
    if (report.mean_T - spread > bounds.upper) return Verdict::upper_violation;
    return Verdict::consistent;
}

std::vector<RatioRow> asymptotic_ratio_study(const LevyMarketSpec& spec, const GrowthSolution& growth, double x,
                                             const std::vector<double>& levels, const StudyConfig& config) {
    const ExperimentConfig ec = experiment_config(config);
    return ratio_rows(x, levels, growth.alpha, [&](double level) {
        return upcrossing_experiment(spec, growth, Strategy::growth_optimal(), x, level, ec);
    });
}

std::vector<RatioRow> asymptotic_ratio_study(const ItoMarketSpec& spec, double x, const std::vector<double>& levels,
                                             const StudyConfig& config) {
    const ExperimentConfig ec = experiment_config(config);
    return ratio_rows(x, levels, 0.0, [&](double level) {
        return upcrossing_experiment(spec, Strategy::growth_optimal(), x, level, ec);
    });
}

StrategyComparison strategy_comparison(const LevyMarketSpec& spec, const GrowthSolution& growth,
                                       const std::vector<Strategy>& strategies, double x, double level,
                                       const StudyConfig& config, double k_sigma) {
    check_positive_levels(x, level);
    std::vector<Strategy> all{Strategy::growth_optimal()};
    for (const auto& s : strategies) {
        if (!s.numeraire) all.push_back(s);
    }

    const ExperimentConfig ec = experiment_config(config);
    const double log_ratio = level > x ? std::log(level / x) : 0.0;
    StrategyComparison out;
    for (const auto& strategy : all) {
        StrategyRow row;
        row.label = strategy.label;
        row.numeraire = strategy.numeraire;
        row.pi = strategy.numeraire ? growth.rho : strategy.pi;
        if (row.pi.size() != spec.d || !(min_wealth_ratio(row.pi, spec.atoms) > 0.0)) {
            row.feasible = false;
            row.error = "strategy outside the interior of the natural constraints";
            out.rows.push_back(row);
            continue;
        }
        row.growth_rate = growth_rate(row.pi, spec);
        const ExperimentReport report = upcrossing_experiment(spec, growth, strategy, x, level, ec);
        row.mean_T = report.mean_T;
        row.stderr_T = report.stderr_T;
        row.reached_fraction = report.reached_fraction;
        if (spec.atoms.empty() && row.growth_rate > 0.0) row.exact_T = growth.g_star * log_ratio / row.growth_rate;
        out.rows.push_back(row);
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        if (out.rows[i].feasible) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.rows[a].mean_T < out.rows[b].mean_T; });
    for (std::size_t r = 0; r < order.size(); ++r) out.rows[order[r]].rank = r + 1;

    const StrategyRow& num = out.rows.front();
    out.numeraire_optimal = num.feasible;
    for (std::size_t i = 1; i < out.rows.size() && out.numeraire_optimal; ++i) {
        const StrategyRow& other = out.rows[i];
        if (!other.feasible || !std::isfinite(other.mean_T)) continue;
        const double joint = std::hypot(num.stderr_T, other.stderr_T);
        if (num.mean_T > other.mean_T + k_sigma * joint) out.numeraire_optimal = false;
    }
    return out;
}

}  // namespace mclock
