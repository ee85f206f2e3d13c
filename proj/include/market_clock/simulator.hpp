#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "market_clock/growth_optimizer.hpp"
#include "market_clock/market_model.hpp"
#include "market_clock/random.hpp"

namespace mclock {

enum class Scheme { event, grid };
enum class EventKind { start, diffusion, jump };
enum class PathStatus { reached, budget_exhausted, ruined, step_limit };

std::string to_string(Scheme scheme);
std::string to_string(PathStatus status);

// One sampled state. `log_growth` is log X_t - log x, so the absolute
// log-wealth is PathRecord::log_wealth(event).
struct PathEvent {
    double t = 0.0;
    double market_time = 0.0;
    double log_growth = 0.0;
    EventKind kind = EventKind::start;
    int atom = -1;       // jump events only
    double jump = 0.0;   // log(1 + <pi, z_atom>) for jump events
};

struct PathRecord {
    double initial_wealth = 1.0;
    std::vector<PathEvent> events;
    PathStatus status = PathStatus::budget_exhausted;
    // Largest relative wealth jump seen on the path, floored at zero.
    double max_relative_jump = 0.0;

    double log_wealth(const PathEvent& e) const;
};

enum class Recording {
    full,   // every grid step / jump
    sparse  // only the start and the terminal event
};

struct SimulationOptions {
    Scheme scheme = Scheme::event;
    double dt = 1e-3;
    // Market-time budget as a multiple of log(level / x) unless an absolute
    // budget is given.
    double budget_factor = 50.0;
    std::optional<double> market_time_budget;
    Recording recording = Recording::full;
    std::uint64_t max_steps = 500'000'000;
};

inline SimulationOptions sparse_options() {
    SimulationOptions o;
    o.recording = Recording::sparse;
    return o;
}

struct Strategy {
    bool numeraire = true;
    Vector pi;
    std::string label = "numeraire";

    static Strategy growth_optimal() { return {}; }
    static Strategy constant(Vector pi, std::string label = {});
};

class NoNumeraireError : public std::runtime_error {
public:
    NoNumeraireError(std::uint64_t step, double t);
    std::uint64_t step;
    double time;
};

// Log-wealth of constant proportions pi in an exponential Levy market, on the
// market clock O_t = g* t. For the numeraire pass pi = growth.rho.
PathRecord simulate_levy_log_wealth(const LevyMarketSpec& spec, const Vector& pi, const GrowthSolution& growth, double x,
                                    double level, const SimulationOptions& options, Rng& rng);

// Euler scheme for log-wealth in an Ito market; market time integrates half
// the squared risk premium by the trapezoid rule.
PathRecord simulate_ito_log_wealth(const ItoMarketSpec& spec, const Strategy& strategy, double x, double level,
                                   const SimulationOptions& options, Rng& rng);

struct Upcrossing {
    bool reached = false;
    double market_time = 0.0;
    double calendar_time = 0.0;
    double overshoot = 0.0;
};

Upcrossing first_upcrossing(const PathRecord& path, double level);

double market_time_budget(const SimulationOptions& options, double x, double level);

}  // namespace mclock
