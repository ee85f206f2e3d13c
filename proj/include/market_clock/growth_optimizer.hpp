#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "market_clock/market_model.hpp"

namespace mclock {

inline constexpr double kBoundaryMargin = 1e-10;  // delta_bar of the line search
inline constexpr double kRankTol = 1e-10;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class SolveStatus {
    converged,
    not_converged,  // max_iter reached; see grad_norm
    unbounded,      // g* = +inf; `witness` holds the ascent direction
    not_viable,     // immediate arbitrage found before optimizing
    solver_failure  // the arbitrage LP failed
};

std::string to_string(SolveStatus status);

struct GrowthSolution {
    Vector rho;
    double g_star = 0.0;  // meaningless unless status is converged
    double alpha = 0.0;
    bool viable = false;
    std::optional<Vector> witness;
    int iterations = 0;
    double grad_norm = 0.0;
    SolveStatus status = SolveStatus::not_converged;
    // Tie-breaking rule applied to non-unique maximizers.
    std::string selection = "minimal-norm (row space of [c; atoms])";

    // Assumptions hold: no arbitrage and 0 < g* < inf.
    bool usable() const { return viable && status == SolveStatus::converged && g_star > 0.0; }
};

struct RiskPremium {
    Vector lambda;
    double lambda_sq = 0.0;
    Vector rho;
    bool solvable = false;
};

// Drift of log-wealth for constant proportions pi. Returns -inf if some
// atom sends wealth to zero (|1 + <pi,z>| within eps), throws DomainError if
// wealth would become negative.
double growth_rate(const Vector& pi, const LevyMarketSpec& spec, double eps_feas = kDefaultFeasTol);

Vector growth_gradient(const Vector& pi, const LevyMarketSpec& spec);
Matrix growth_hessian(const Vector& pi, const LevyMarketSpec& spec);

struct MaximizeOptions {
    double tol = 1e-11;
    int max_iter = 200;
};

// Damped Newton ascent from pi = 0 with a feasibility-preserving Armijo
// backtracking line search. Does not check viability; use analyze_market
// for the gated pipeline.
GrowthSolution maximize_growth(const LevyMarketSpec& spec, const MaximizeOptions& options = {});

// Largest relative jump of the numeraire, floored at zero.
double alpha_constant(const Vector& rho, const LevyMarketSpec& spec);

enum class ArbitrageOutcome { viable, arbitrage, solver_failure };

struct ArbitrageVerdict {
    ArbitrageOutcome outcome = ArbitrageOutcome::viable;
    std::optional<Vector> witness;
    std::string message;
};

// Searches the null space of c for a direction with no downside jumps,
// nonnegative drift and a strictly positive profit source.
ArbitrageVerdict immediate_arbitrage_check(const LevyMarketSpec& spec, double tol_psd = kDefaultPsdTol);

// Checks the defining conditions of an immediate arbitrage that also lies in
// the recession cone, directly and independently of how xi was produced.
bool is_arbitrage_witness(const Vector& xi, const LevyMarketSpec& spec, double tol = 1e-9);

// Viability check followed by maximization.
GrowthSolution analyze_market(const LevyMarketSpec& spec, const MaximizeOptions& options = {});

RiskPremium risk_premium(const Vector& a, const Matrix& sigma, double tol_rank = kRankTol);

}  // namespace mclock
