#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "market_clock/simulator.hpp"

namespace mclock {

struct ReplicationRow {
    std::size_t rep = 0;
    double tau = 0.0;          // calendar time at the upcrossing
    double market_time = 0.0;  // T(X; level)
    double overshoot = 0.0;
    bool reached = false;
    double log1p_alpha = 0.0;  // log(1 + largest relative jump on the path)
};

struct Histogram {
    double bin_width = 0.0;
    std::vector<std::size_t> counts;
};

struct ExperimentReport {
    std::size_t reps = 0;
    std::size_t reached = 0;
    double mean_T = 0.0;
    double stderr_T = 0.0;
    double var_T = 0.0;
    double mean_tau = 0.0;
    double reached_fraction = 0.0;
    double mean_log1p_alpha = 0.0;  // sample plug-in for E[log(1 + alpha)]
    std::vector<double> overshoot_samples;
    Histogram overshoot_histogram;
    Scheme scheme = Scheme::event;
    std::uint64_t seed = 0;
    std::vector<ReplicationRow> rows;
    std::vector<std::string> warnings;
};

struct ExperimentConfig {
    std::size_t reps = 1000;
    SimulationOptions sim = sparse_options();
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
    // Defaults to log(1 + alpha) / 50 (alpha of the simulated strategy).
    std::optional<double> histogram_bin_width;
};

// Replication i draws from stream (master_seed, i), so the report depends on
// the seed only, not on the worker count.
ExperimentReport upcrossing_experiment(const LevyMarketSpec& spec, const GrowthSolution& growth,
                                       const Strategy& strategy, double x, double level,
                                       const ExperimentConfig& config);

ExperimentReport upcrossing_experiment(const ItoMarketSpec& spec, const Strategy& strategy, double x, double level,
                                       const ExperimentConfig& config);

// Aggregates per-replication rows in index order.
ExperimentReport summarize_replications(std::vector<ReplicationRow> rows, Scheme scheme, std::uint64_t seed,
                                        double histogram_bin_width);

Histogram make_histogram(const std::vector<double>& samples, double bin_width);

}  // namespace mclock
