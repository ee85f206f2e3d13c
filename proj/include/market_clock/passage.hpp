#pragma once

#include <vector>

#include "market_clock/random.hpp"

namespace mclock {

// Inverse Gaussian(mean, shape) draw by the Michael-Schucany-Haas
// transformation. Requires mean > 0, shape > 0.
double sample_inverse_gaussian(double mean, double shape, Rng& rng);

// First time a Brownian motion with the given drift and variance rate
// (started at 0) hits level `barrier` > 0. Returns +inf when the path never
// hits, which happens with positive probability iff drift < 0, or always
// when the variance is zero and the drift is nonpositive.
double sample_passage_time(double drift, double variance, double barrier, Rng& rng);

// Value at `horizon` of the same Brownian motion conditioned on not having
// reached `barrier` during [0, horizon].
double sample_endpoint_below(double drift, double variance, double barrier, double horizon, Rng& rng);

// Exact market-time first passage of a continuous numeraire to log-distance
// `barrier`: log-wealth in market time is Brownian motion with drift 1 and
// variance 2, so the passage time is inverse Gaussian(barrier, barrier^2/2).
std::vector<double> ig_first_passage_oracle(double barrier, std::size_t reps, Rng& rng);

}  // namespace mclock
