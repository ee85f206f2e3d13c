#pragma once

#include <span>
#include <vector>

#include "market_clock/growth_optimizer.hpp"
#include "market_clock/market_model.hpp"
#include "market_clock/random.hpp"

namespace mclock {

struct StepCoefficients {
    double t = 0.0;
    Vector a;
    Matrix sigma;
};

// Walks the coefficient model of an Ito market forward in calendar time.
// Every model keeps a piecewise-constant base pair (a, sigma) and a scalar
// volatility multiplier s_t, so the effective coefficients are (a, s_t sigma)
// and the risk premium is the base premium divided by s_t.
class CoefficientPath {
public:
    explicit CoefficientPath(const ItoMarketSpec& spec);

    // Moves the state from the current time to current + dt.
    void advance(double dt, Rng& rng);

    double time() const { return t_; }
    double vol_scale() const { return scale_; }
    const Vector& base_a() const { return *base_a_; }
    const Matrix& base_sigma() const { return *base_sigma_; }
    const RiskPremium& base_premium() const { return premium_; }

    Vector a() const { return *base_a_; }
    Matrix sigma() const { return scale_ * *base_sigma_; }
    double half_lambda_sq() const { return 0.5 * premium_.lambda_sq / (scale_ * scale_); }

private:
    void select_segment();

    const ItoMarketSpec* spec_;
    double t_ = 0.0;
    double scale_ = 1.0;
    double factor_ = 0.0;
    std::size_t segment_ = 0;
    const Vector* base_a_ = nullptr;
    const Matrix* base_sigma_ = nullptr;
    RiskPremium premium_;
};

// Coefficients in force at each grid point (grid must start at 0 and be
// strictly increasing).
std::vector<StepCoefficients> generate_coefficients(const ItoMarketSpec& spec, std::span<const double> grid, Rng& rng);

}  // namespace mclock
