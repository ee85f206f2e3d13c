#include "market_clock/ito_coefficients.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mclock {

CoefficientPath::CoefficientPath(const ItoMarketSpec& spec) : spec_(&spec) {
    if (const auto* sv = std::get_if<StochasticVolModel>(&spec.model)) {
        factor_ = sv->y0;
        scale_ = std::exp(factor_);
    }
    select_segment();
}

void CoefficientPath::select_segment() {
    const auto* sched = std::get_if<ScheduleModel>(&spec_->model);
    std::size_t seg = 0;
    if (sched) {
        while (seg + 1 < sched->times.size() && sched->times[seg + 1] <= t_) ++seg;
    }
    if (base_a_ != nullptr && seg == segment_) return;
    segment_ = seg;
    base_a_ = sched ? &sched->a[seg] : &spec_->a;
    base_sigma_ = sched ? &sched->sigma[seg] : &spec_->sigma;
    premium_ = risk_premium(*base_a_, *base_sigma_);
}

void CoefficientPath::advance(double dt, Rng& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("CoefficientPath::advance: dt must be positive");
    if (const auto* sv = std::get_if<StochasticVolModel>(&spec_->model)) {
        // Exact Ornstein-Uhlenbeck transition.
        const double decay = std::exp(-sv->kappa * dt);
        const double sd = sv->xi * std::sqrt(-std::expm1(-2.0 * sv->kappa * dt) / (2.0 * sv->kappa));
        factor_ = factor_ * decay + sd * std::normal_distribution<double>(0.0, 1.0)(rng);
        scale_ = std::exp(factor_);
    }
    t_ += dt;
    select_segment();
}

std::vector<StepCoefficients> generate_coefficients(const ItoMarketSpec& spec, std::span<const double> grid, Rng& rng) {
    std::vector<StepCoefficients> out;
    if (grid.empty()) return out;
    if (grid.front() != 0.0) throw std::invalid_argument("generate_coefficients: grid must start at 0");
    CoefficientPath path(spec);
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) path.advance(grid[i] - grid[i - 1], rng);
        out.push_back({path.time(), path.a(), path.sigma()});
    }
    return out;
}

}  // namespace mclock
