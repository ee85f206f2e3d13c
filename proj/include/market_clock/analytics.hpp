#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "market_clock/experiment.hpp"

namespace mclock {

inline constexpr double kDefaultKSigma = 3.0;
inline constexpr double kMinReachedFraction = 0.999;

// Bounds on the value function and on the numeraire's expected market time:
// log(level/x) <= E[T] <= log(level/x) + log(1 + alpha).
struct BoundReport {
    double x = 1.0;
    double level = 1.0;
    double lower = 0.0;
    double upper = 0.0;
    double alpha_used = 0.0;
    bool alpha_from_samples = false;
};

BoundReport theoretical_bounds(double x, double level, double alpha);

// Upper bound with E[log(1 + alpha)] replaced by its sample mean (random,
// path-dependent alpha).
BoundReport plug_in_bounds(double x, double level, double mean_log1p_alpha);

enum class Verdict { consistent, lower_violation, upper_violation };

std::string to_string(Verdict verdict);

class InsufficientReachError : public std::runtime_error {
public:
    explicit InsufficientReachError(double fraction);
    double reached_fraction;
};

Verdict check_estimate(const ExperimentReport& report, const BoundReport& bounds, double k_sigma = kDefaultKSigma);

struct RatioRow {
    double level = 0.0;
    double log_level = 0.0;
    double mean_T = 0.0;
    double stderr_T = 0.0;
    double ratio = 0.0;  // mean_T / log(level)
    double band_lo = 0.0;
    double band_hi = 0.0;
    double reached_fraction = 1.0;
    bool degenerate = false;  // log(level) <= 0: T is exactly zero, ratio reported as 0
};

struct StudyConfig {
    std::size_t reps = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    SimulationOptions sim = sparse_options();
};

std::vector<RatioRow> asymptotic_ratio_study(const LevyMarketSpec& spec, const GrowthSolution& growth, double x,
                                             const std::vector<double>& levels, const StudyConfig& config);

std::vector<RatioRow> asymptotic_ratio_study(const ItoMarketSpec& spec, double x, const std::vector<double>& levels,
                                             const StudyConfig& config);

struct StrategyRow {
    std::string label;
    Vector pi;
    bool numeraire = false;
    bool feasible = true;
    std::string error;
    double growth_rate = 0.0;
    double mean_T = 0.0;
    double stderr_T = 0.0;
    double reached_fraction = 0.0;
    // g* log(level/x) / g(pi) for continuous constant-coefficient markets.
    std::optional<double> exact_T;
    std::size_t rank = 0;  // 1 = smallest mean_T; 0 for rejected rows
};

struct StrategyComparison {
    std::vector<StrategyRow> rows;  // numeraire first, then the supplied order
    bool numeraire_optimal = false; // numeraire mean_T <= every other + k joint stderr
};

StrategyComparison strategy_comparison(const LevyMarketSpec& spec, const GrowthSolution& growth,
                                       const std::vector<Strategy>& strategies, double x, double level,
                                       const StudyConfig& config, double k_sigma = kDefaultKSigma);

}  // namespace mclock
