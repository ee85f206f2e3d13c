#include "market_clock/growth_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "market_clock/linalg.hpp"
#include "market_clock/lp_feasibility.hpp"

namespace mclock {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kRunawayNorm = 1e12;

}  // namespace

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::not_converged: return "not_converged";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::not_viable: return "not_viable";
        case SolveStatus::solver_failure: return "solver_failure";
    }
    return "unknown";
}

double growth_rate(const Vector& pi, const LevyMarketSpec& spec, double eps_feas) {
    double g = pi.dot(spec.a) - 0.5 * pi.dot(spec.c * pi);
    for (const auto& atom : spec.atoms) {
        const double u = pi.dot(atom.z);
        const double w = 1.0 + u;
        if (w < -eps_feas) throw DomainError("growth_rate: portfolio outside the natural constraints");
        if (w <= eps_feas) return -std::numeric_limits<double>::infinity();
        g -= atom.rate * (u - std::log1p(u));
    }
    return g;
}

Vector growth_gradient(const Vector& pi, const LevyMarketSpec& spec) {
    Vector grad = spec.a - spec.c * pi;
    for (const auto& atom : spec.atoms) {
        const double u = pi.dot(atom.z);
        if (1.0 + u <= 0.0) throw DomainError("growth_gradient: portfolio on or beyond the constraint boundary");
        grad -= atom.rate * (u / (1.0 + u)) * atom.z;
    }
    return grad;
}

Matrix growth_hessian(const Vector& pi, const LevyMarketSpec& spec) {
    Matrix h = -spec.c;
    for (const auto& atom : spec.atoms) {
        const double w = 1.0 + pi.dot(atom.z);
        if (w <= 0.0) throw DomainError("growth_hessian: portfolio on or beyond the constraint boundary");
        h -= (atom.rate / (w * w)) * atom.z * atom.z.transpose();
    }
    return h;
}

GrowthSolution maximize_growth(const LevyMarketSpec& spec, const MaximizeOptions& options) {
    GrowthSolution sol;
    sol.viable = true;
    Vector pi = Vector::Zero(spec.d);

    for (int it = 0;; ++it) {
        const Vector grad = growth_gradient(pi, spec);
        sol.iterations = it;
        sol.grad_norm = grad.norm();

        // Minimal-norm Newton step: keeps iterates in the row space of
        // [c; atoms], which selects the minimal-norm maximizer.
        const Matrix curvature = -growth_hessian(pi, spec);
        const Vector step = linalg::symmetric_pinv(curvature, kRankTol) * grad;
        const Vector flat = grad - curvature * step;
        if (flat.norm() > 1e-8 * std::max(1.0, sol.grad_norm)) {
            // g is affine with positive slope along `flat`.
            sol.status = SolveStatus::unbounded;
            sol.viable = false;
            sol.witness = flat.normalized();
            break;
        }
        // A small gradient alone is not enough: log(1 + pi) has a vanishing
        // gradient but a Newton decrement of 1 all the way to infinity.
        const double decrement_sq = grad.dot(step);
        if (sol.grad_norm <= options.tol && decrement_sq <= options.tol) {
            sol.status = SolveStatus::converged;
            break;
        }
        if (it >= options.max_iter) {
            sol.status = SolveStatus::not_converged;
            break;
        }

        double t = 1.0;
        while (min_wealth_ratio(pi + t * step, spec.atoms) < kBoundaryMargin && t > 1e-30) t *= 0.5;
        const double g0 = growth_rate(pi, spec);
        const double slope = grad.dot(step);
        const double slack = 1e-15 * (1.0 + std::abs(g0));
        while (t > 1e-20 && growth_rate(pi + t * step, spec) < g0 + kArmijo * t * slope - slack) t *= 0.5;
        pi += t * step;

        if (pi.norm() > kRunawayNorm) {
            sol.status = SolveStatus::unbounded;
            sol.viable = false;
            sol.witness = pi.normalized();
            break;
        }
    }

    sol.rho = pi;
    if (sol.status == SolveStatus::unbounded) {
        sol.g_star = std::numeric_limits<double>::infinity();
        sol.alpha = 0.0;
        return sol;
    }
    sol.g_star = growth_rate(pi, spec);
    sol.alpha = alpha_constant(pi, spec);
    return sol;
}

double alpha_constant(const Vector& rho, const LevyMarketSpec& spec) {
    double alpha = 0.0;
    for (const auto& atom : spec.atoms) alpha = std::max(alpha, rho.dot(atom.z));
    return alpha;
}

ArbitrageVerdict immediate_arbitrage_check(const LevyMarketSpec& spec, double tol_psd) {
    ArbitrageVerdict verdict;
    const double scale = std::max(1.0, spec.c.cwiseAbs().maxCoeff());
    const Matrix basis = linalg::null_space_basis(spec.c, tol_psd * scale);
    if (basis.cols() == 0) return verdict;

    const auto k = static_cast<Eigen::Index>(spec.atoms.size());
    Matrix g(k + 1, basis.cols());
    Vector total = spec.a;
    for (Eigen::Index i = 0; i < k; ++i) {
        g.row(i) = spec.atoms[i].z.transpose() * basis;
        total += spec.atoms[i].z;
    }
    g.row(k) = spec.a.transpose() * basis;
    const Vector e = basis.transpose() * total;

    try {
        const auto y = lp::find_cone_point(g, e);
        if (y) {
            verdict.outcome = ArbitrageOutcome::arbitrage;
            verdict.witness = Vector(basis * *y).normalized();
        }
    } catch (const lp::SolverFailure& ex) {
        verdict.outcome = ArbitrageOutcome::solver_failure;
        verdict.message = ex.what();
    }
    return verdict;
}

bool is_arbitrage_witness(const Vector& xi, const LevyMarketSpec& spec, double tol) {
    if (xi.size() != spec.d) return false;
    if ((spec.c * xi).norm() > tol * std::max(1.0, xi.norm())) return false;
    const double drift = xi.dot(spec.a);
    if (drift < -tol) return false;
    bool profit = drift > tol;
    for (const auto& atom : spec.atoms) {
        const double move = xi.dot(atom.z);
        if (move < -tol) return false;
        profit = profit || move > tol;
    }
    return profit;
}

GrowthSolution analyze_market(const LevyMarketSpec& spec, const MaximizeOptions& options) {
    const ArbitrageVerdict verdict = immediate_arbitrage_check(spec);
    if (verdict.outcome != ArbitrageOutcome::viable) {
        GrowthSolution sol;
        sol.rho = Vector::Zero(spec.d);
        sol.viable = false;
        sol.witness = verdict.witness;
        sol.status = verdict.outcome == ArbitrageOutcome::arbitrage ? SolveStatus::not_viable
                                                                    : SolveStatus::solver_failure;
        sol.g_star = verdict.outcome == ArbitrageOutcome::arbitrage ? std::numeric_limits<double>::infinity() : 0.0;
        return sol;
    }
    return maximize_growth(spec, options);
}

RiskPremium risk_premium(const Vector& a, const Matrix& sigma, double tol_rank) {
    RiskPremium out;
    const Matrix c = sigma * sigma.transpose();
    out.rho = linalg::symmetric_pinv(c, tol_rank) * a;
    out.lambda = sigma.transpose() * out.rho;
    out.lambda_sq = a.dot(out.rho);
    const double residual = (c * out.rho - a).norm();
    const double c_norm = c.size() == 0 ? 0.0 : c.norm();
    out.solvable = residual <= tol_rank * (a.norm() + c_norm * out.rho.norm());
    return out;
}

}  // namespace mclock
