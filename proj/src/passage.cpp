#include "market_clock/passage.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mclock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

double sample_inverse_gaussian(double mean, double shape, Rng& rng) {
    if (!(mean > 0.0) || !(shape > 0.0)) throw std::invalid_argument("sample_inverse_gaussian: parameters must be positive");
    const double v = std::normal_distribution<double>(0.0, 1.0)(rng);
    const double y = mean * v * v;
    // Smaller root of the quadratic, in a form free of cancellation.
    const double s = std::sqrt(4.0 * shape * y + y * y);
    const double root = y == 0.0 ? mean : mean * 4.0 * shape * y / ((s + y) * (s + y));
    if (root <= 0.0) return 0.0;
    if (uniform01(rng) <= mean / (mean + root)) return root;
    return mean * mean / root;
}

double sample_passage_time(double drift, double variance, double barrier, Rng& rng) {
    if (!(barrier > 0.0)) return 0.0;
    if (variance <= 0.0) return drift > 0.0 ? barrier / drift : kInf;
    const double shape = barrier * barrier / variance;
    if (drift > 0.0) return sample_inverse_gaussian(barrier / drift, shape, rng);
    if (drift == 0.0) {
        const double z = std::normal_distribution<double>(0.0, 1.0)(rng);
        return z == 0.0 ? kInf : shape / (z * z);
    }
    // Negative drift: hits with probability exp(2 drift barrier / variance);
    // conditioned on hitting, the path is the mirror-drift motion.
    if (uniform01(rng) >= std::exp(2.0 * drift * barrier / variance)) return kInf;
    return sample_inverse_gaussian(barrier / -drift, shape, rng);
}

double sample_endpoint_below(double drift, double variance, double barrier, double horizon, Rng& rng) {
    if (horizon <= 0.0) return 0.0;
    if (variance <= 0.0) return drift * horizon;
    const double sd = std::sqrt(variance * horizon);
    std::normal_distribution<double> normal(drift * horizon, sd);
    // Free endpoint thinned by the Brownian-bridge survival probability.
    for (;;) {
        const double x = normal(rng);
        if (x >= barrier) continue;
        const double survive = -std::expm1(-2.0 * barrier * (barrier - x) / (variance * horizon));
        if (uniform01(rng) < survive) return x;
    }
}

std::vector<double> ig_first_passage_oracle(double barrier, std::size_t reps, Rng& rng) {
    if (barrier < 0.0) throw std::invalid_argument("ig_first_passage_oracle: barrier must be nonnegative");
    std::vector<double> out(reps, 0.0);
    if (barrier == 0.0) return out;
    for (auto& v : out) v = sample_inverse_gaussian(barrier, barrier * barrier / 2.0, rng);
    return out;
}

}  // namespace mclock
