#pragma once

// Market fixtures and test-only oracles shared by the unit and acceptance
// suites. The oracles here deliberately re-derive quantities from the raw
// formulas instead of calling into the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "market_clock/market_model.hpp"

namespace fixtures {

using mclock::JumpAtom;
using mclock::LevyMarketSpec;
using mclock::Matrix;
using mclock::Vector;

inline Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

inline LevyMarketSpec one_asset(double a, double c, std::vector<JumpAtom> atoms = {}) {
    LevyMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({a});
    s.c = Matrix::Constant(1, 1, c);
    s.atoms = std::move(atoms);
    return *mclock::validate_spec(s).spec;
}

// Black-Scholes: rho = a / c = 2, g* = a^2 / (2c) = 0.08.
inline LevyMarketSpec bs1() { return one_asset(0.08, 0.04); }

// Pure drift plus downward jumps: rho = 4/3, numeraire has no positive jumps.
inline LevyMarketSpec j1() { return one_asset(0.1, 0.0, {{vec({-0.5}), 0.1}}); }

// Diffusion plus upward jumps: rho = 2(-1 + sqrt 6), alpha = rho / 4.
inline LevyMarketSpec j2() { return one_asset(0.05, 0.01, {{vec({0.25}), 0.2}}); }

// Two assets with correlated diffusion and jumps of both signs.
inline LevyMarketSpec d2() {
    LevyMarketSpec s;
    s.d = 2;
    s.m = 2;
    s.a = vec({0.06, 0.03});
    Matrix sigma(2, 2);
    sigma << 0.2, 0.0, 0.05, 0.15;
    s.sigma = sigma;
    s.atoms = {{vec({-0.3, 0.1}), 0.15}, {vec({0.2, -0.25}), 0.1}};
    return *mclock::validate_spec(s).spec;
}

inline const double kJ2Rho = 2.0 * (-1.0 + std::sqrt(6.0));
inline constexpr double kJ2GStar = 0.0669954174918046;
inline constexpr double kJ1GAtRho = 0.0901387711331890;
inline constexpr double kJ2Log1pAlpha = 0.545079138902387;

// Growth rate written straight from its definition.
inline double oracle_growth(const std::vector<double>& pi, const LevyMarketSpec& spec) {
    double g = 0.0;
    for (int i = 0; i < spec.d; ++i) {
        g += pi[i] * spec.a(i);
        for (int j = 0; j < spec.d; ++j) g -= 0.5 * pi[i] * spec.c(i, j) * pi[j];
    }
    for (const auto& atom : spec.atoms) {
        double u = 0.0;
        for (int i = 0; i < spec.d; ++i) u += pi[i] * atom.z(i);
        if (1.0 + u <= 0.0) return -std::numeric_limits<double>::infinity();
        g -= atom.rate * (u - std::log(1.0 + u));
    }
    return g;
}

// Dense-grid brute force over a box, zooming in around the best node. Valid
// for concave objectives with the maximizer inside the box; d <= 2.
inline double grid_search_gstar(const LevyMarketSpec& spec, double half_width = 40.0, std::vector<double>* argmax = nullptr) {
    const int d = spec.d;
    std::vector<double> center(d, 0.0);
    double width = half_width;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_pi(d, 0.0);
    const int n = d == 1 ? 4001 : 401;
    for (int round = 0; round < 30; ++round) {
        const double h = 2.0 * width / (n - 1);
        std::vector<double> pi(d);
        if (d == 1) {
            for (int i = 0; i < n; ++i) {
                pi[0] = center[0] - width + i * h;
                const double g = oracle_growth(pi, spec);
                if (g > best) {
                    best = g;
                    best_pi = pi;
                }
            }
        } else {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    pi[0] = center[0] - width + i * h;
                    pi[1] = center[1] - width + j * h;
                    const double g = oracle_growth(pi, spec);
                    if (g > best) {
                        best = g;
                        best_pi = pi;
                    }
                }
            }
        }
        center = best_pi;
        width = 4.0 * h;
    }
    if (argmax) *argmax = best_pi;
    return best;
}

// Random viable market with d in {1, 2}: nondegenerate diffusion and up to
// three atoms.
inline LevyMarketSpec random_spec(std::mt19937_64& gen, int d) {
    std::uniform_real_distribution<double> drift(-0.05, 0.15);
    std::uniform_real_distribution<double> vol(-0.3, 0.3);
    std::uniform_real_distribution<double> jump(-0.6, 0.6);
    std::uniform_real_distribution<double> rate(0.05, 0.5);
    std::uniform_int_distribution<int> atom_count(0, 3);
    LevyMarketSpec s;
    s.d = d;
    s.m = d;
    s.a = Vector(d);
    Matrix sigma(d, d);
    for (int i = 0; i < d; ++i) {
        s.a(i) = drift(gen);
        for (int j = 0; j < d; ++j) sigma(i, j) = vol(gen);
        sigma(i, i) = std::abs(sigma(i, i)) + 0.05;
    }
    s.sigma = sigma;
    const int k = atom_count(gen);
    for (int a = 0; a < k; ++a) {
        Vector z(d);
        for (int i = 0; i < d; ++i) z(i) = jump(gen);
        s.atoms.push_back({z, rate(gen)});
    }
    return *mclock::validate_spec(s).spec;
}

// Uniform point of the box [-width, width]^d that keeps 1 + <pi, z> >= margin.
inline Vector random_feasible(std::mt19937_64& gen, const LevyMarketSpec& spec, double width, double margin = 0.05) {
    std::uniform_real_distribution<double> u(-width, width);
    for (;;) {
        Vector pi(spec.d);
        for (int i = 0; i < spec.d; ++i) pi(i) = u(gen);
        if (mclock::min_wealth_ratio(pi, spec.atoms) >= margin) return pi;
    }
}

}  // namespace fixtures
