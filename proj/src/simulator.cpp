#include "market_clock/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "market_clock/ito_coefficients.hpp"
#include "market_clock/passage.hpp"

namespace mclock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
public:
    Recorder(PathRecord& record, Recording mode) : record_(record), mode_(mode) {}

    void push(const PathEvent& e) {
        if (mode_ == Recording::full || record_.events.size() < 2) {
            record_.events.push_back(e);
        } else {
            record_.events.back() = e;
        }
    }

private:
    PathRecord& record_;
    Recording mode_;
};

void check_levels(double x, double level) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("initial wealth must be positive");
    if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("wealth level must be positive");
}

// Jump bookkeeping shared by the Levy schemes.
struct JumpTable {
    std::vector<double> cumulative;  // cumulative rates
    std::vector<double> log_jump;    // log(1 + <pi, z>), -inf on ruin
    std::vector<double> relative;    // <pi, z>
    double total = 0.0;

    JumpTable(const LevyMarketSpec& spec, const Vector& pi) {
        for (const auto& atom : spec.atoms) {
            total += atom.rate;
            cumulative.push_back(total);
            const double u = pi.dot(atom.z);
            relative.push_back(u);
            log_jump.push_back(1.0 + u > 0.0 ? std::log1p(u) : -kInf);
        }
    }

    int pick(Rng& rng) const {
        const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(), cumulative.size() - 1));
    }
};

}  // namespace

std::string to_string(Scheme scheme) { return scheme == Scheme::event ? "event" : "grid"; }

std::string to_string(PathStatus status) {
    switch (status) {
        case PathStatus::reached: return "reached";
        case PathStatus::budget_exhausted: return "budget_exhausted";
        case PathStatus::ruined: return "ruined";
        case PathStatus::step_limit: return "step_limit";
    }
    return "unknown";
}

double PathRecord::log_wealth(const PathEvent& e) const { return std::log(initial_wealth) + e.log_growth; }

Strategy Strategy::constant(Vector pi, std::string label) {
    Strategy s;
    s.numeraire = false;
    s.pi = std::move(pi);
    s.label = label.empty() ? "constant" : std::move(label);
    return s;
}

NoNumeraireError::NoNumeraireError(std::uint64_t s, double t)
    : std::runtime_error("risk premium unsolvable (c rho = a has no solution) at step " + std::to_string(s)),
      step(s),
      time(t) {}

double market_time_budget(const SimulationOptions& options, double x, double level) {
    if (options.market_time_budget) return *options.market_time_budget;
    return options.budget_factor * std::log(level / x);
}

PathRecord simulate_levy_log_wealth(const LevyMarketSpec& spec, const Vector& pi, const GrowthSolution& growth, double x,
                                    double level, const SimulationOptions& options, Rng& rng) {
    check_levels(x, level);
    if (pi.size() != spec.d) throw std::invalid_argument("portfolio dimension does not match the market");
    if (!in_constraint_set(pi, ConstraintQuery(spec))) throw DomainError("portfolio outside the natural constraints");
    if (options.scheme == Scheme::grid && !(options.dt > 0.0)) throw std::invalid_argument("grid step dt must be positive");
    const double clock = growth.g_star;
    if (!(clock > 0.0) || !std::isfinite(clock)) throw std::invalid_argument("market clock needs 0 < g* < inf");

    PathRecord rec;
    rec.initial_wealth = x;
    rec.events.push_back({});
    const double barrier = std::log(level / x);
    if (barrier <= 0.0) {
        rec.status = PathStatus::reached;
        return rec;
    }

    Recorder out(rec, options.recording);
    const JumpTable jumps(spec, pi);
    const double variance = pi.dot(spec.c * pi);
    double drift = pi.dot(spec.a) - 0.5 * variance;
    for (std::size_t k = 0; k < spec.atoms.size(); ++k) drift -= spec.atoms[k].rate * jumps.relative[k];
    const double horizon = market_time_budget(options, x, level) / clock;
    std::exponential_distribution<double> next_gap(jumps.total > 0.0 ? jumps.total : 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    double t = 0.0;
    double r = 0.0;

    // Returns true when the path terminated.
    const auto apply_jump = [&]() {
        const int k = jumps.pick(rng);
        const double rel = jumps.relative[k];
        rec.max_relative_jump = std::max(rec.max_relative_jump, rel);
        r += jumps.log_jump[k];
        out.push({t, clock * t, r, EventKind::jump, k, jumps.log_jump[k]});
        if (!std::isfinite(r)) {
            rec.status = PathStatus::ruined;
            return true;
        }
        if (r >= barrier) {
            rec.status = PathStatus::reached;
            return true;
        }
        return false;
    };

    if (options.scheme == Scheme::event) {
        for (;;) {
            const double remaining = horizon - t;
            const double gap = jumps.total > 0.0 ? next_gap(rng) : kInf;
            const double span = std::min(gap, remaining);
            const double hit = sample_passage_time(drift, variance, barrier - r, rng);
            if (hit <= span) {
                t += hit;
                r = barrier;
                out.push({t, clock * t, r, EventKind::diffusion});
                rec.status = PathStatus::reached;
                break;
            }
            r += sample_endpoint_below(drift, variance, barrier - r, span, rng);
            if (gap >= remaining) {
                t = horizon;
                out.push({t, clock * t, r, EventKind::diffusion});
                rec.status = PathStatus::budget_exhausted;
                break;
            }
            t += gap;
            if (apply_jump()) break;
        }
        return rec;
    }

    // Grid scheme: Gaussian increments between observation points, which are
    // the grid nodes plus the (exact) jump times.
    const double sd = std::sqrt(variance);
    double next_jump = jumps.total > 0.0 ? next_gap(rng) : kInf;
    const auto diffuse_to = [&](double target) {
        const double h = target - t;
        if (h <= 0.0) return false;
        r += drift * h + sd * std::sqrt(h) * normal(rng);
        t = target;
        out.push({t, clock * t, r, EventKind::diffusion});
        if (r >= barrier) {
            rec.status = PathStatus::reached;
            return true;
        }
        return false;
    };

    for (std::uint64_t step = 0;; ++step) {
        if (step >= options.max_steps) {
            rec.status = PathStatus::step_limit;
            break;
        }
        const double step_end = std::min(static_cast<double>(step + 1) * options.dt, horizon);
        bool done = false;
        while (!done && next_jump <= step_end) {
            done = diffuse_to(next_jump) || apply_jump();
            next_jump += next_gap(rng);
        }
        if (done || diffuse_to(step_end)) break;
        if (step_end >= horizon) {
            rec.status = PathStatus::budget_exhausted;
            break;
        }
    }
    return rec;
}

PathRecord simulate_ito_log_wealth(const ItoMarketSpec& spec, const Strategy& strategy, double x, double level,
                                   const SimulationOptions& options, Rng& rng) {
    check_levels(x, level);
    if (!(options.dt > 0.0)) throw std::invalid_argument("grid step dt must be positive");
    if (!strategy.numeraire && strategy.pi.size() != spec.d)
        throw std::invalid_argument("portfolio dimension does not match the market");

    PathRecord rec;
    rec.initial_wealth = x;
    rec.events.push_back({});
    const double barrier = std::log(level / x);
    if (barrier <= 0.0) {
        rec.status = PathStatus::reached;
        return rec;
    }

    Recorder out(rec, options.recording);
    const double budget = market_time_budget(options, x, level);
    const double dt = options.dt;
    const double sqrt_dt = std::sqrt(dt);
    std::normal_distribution<double> normal(0.0, 1.0);

    CoefficientPath coef(spec);
    if (!coef.base_premium().solvable) throw NoNumeraireError(0, 0.0);

    // Exposure of log-wealth to dW and its drift, refreshed when the
    // coefficients change.
    Vector exposure(spec.m);
    double drift = 0.0;
    const Matrix* cached_sigma = nullptr;
    double cached_scale = std::numeric_limits<double>::quiet_NaN();
    Vector sigma_pi;
    double pi_a = 0.0;
    const auto refresh = [&]() {
        const double s = coef.vol_scale();
        if (cached_sigma == &coef.base_sigma() && cached_scale == s) return;
        if (strategy.numeraire) {
            exposure = coef.base_premium().lambda / s;
            drift = coef.half_lambda_sq();
        } else {
            if (cached_sigma != &coef.base_sigma()) {
                sigma_pi = coef.base_sigma().transpose() * strategy.pi;
                pi_a = strategy.pi.dot(coef.base_a());
            }
            exposure = s * sigma_pi;
            drift = pi_a - 0.5 * s * s * sigma_pi.squaredNorm();
        }
        cached_sigma = &coef.base_sigma();
        cached_scale = s;
    };

    double r = 0.0;
    double market = 0.0;
    double rate_prev = coef.half_lambda_sq();
    for (std::uint64_t step = 0;; ++step) {
        if (step >= options.max_steps) {
            rec.status = PathStatus::step_limit;
            break;
        }
        refresh();
        double noise = 0.0;
        for (Eigen::Index j = 0; j < spec.m; ++j) noise += exposure(j) * normal(rng);
        r += drift * dt + noise * sqrt_dt;

        coef.advance(dt, rng);
        if (!coef.base_premium().solvable) throw NoNumeraireError(step + 1, coef.time());
        const double rate_next = coef.half_lambda_sq();
        market += 0.5 * (rate_prev + rate_next) * dt;
        rate_prev = rate_next;

        out.push({coef.time(), market, r, EventKind::diffusion});
        if (r >= barrier) {
            rec.status = PathStatus::reached;
            break;
        }
        if (market >= budget) {
            rec.status = PathStatus::budget_exhausted;
            break;
        }
    }
    return rec;
}

Upcrossing first_upcrossing(const PathRecord& path, double level) {
    Upcrossing out;
    if (path.events.empty()) return out;
    const double barrier = std::log(level / path.initial_wealth);
    if (barrier <= 0.0) {
        out.reached = true;
        out.overshoot = -barrier;
        return out;
    }
    for (const auto& e : path.events) {
        if (e.log_growth >= barrier) {
            out.reached = true;
            out.market_time = e.market_time;
            out.calendar_time = e.t;
            out.overshoot = e.log_growth - barrier;
            return out;
        }
    }
    return out;
}

}  // namespace mclock
