#include "market_clock/market_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "market_clock/linalg.hpp"

namespace mclock {

namespace {

std::string shape(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

bool all_finite(const Eigen::Ref<const Matrix>& m) {
    return m.size() == 0 || m.allFinite();
}

void check_atoms(const std::vector<JumpAtom>& atoms, int d, std::vector<std::string>& errors) {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const auto& atom = atoms[k];
        const std::string tag = "atom " + std::to_string(k) + ": ";
        if (atom.z.size() != d) {
            errors.push_back(tag + "dimension mismatch: z has " + std::to_string(atom.z.size()) +
                             " entries, expected d=" + std::to_string(d));
            continue;
        }
        if (!atom.z.allFinite()) {
            errors.push_back(tag + "non-finite jump size");
            continue;
        }
        if ((atom.z.array() < -1.0).any()) errors.push_back(tag + "jump below -1");
        if ((atom.z.array() == 0.0).all()) errors.push_back(tag + "zero atom");
        if (!(atom.rate > 0.0) || !std::isfinite(atom.rate)) errors.push_back(tag + "nonpositive rate");
    }
}

}  // namespace

double LevyMarketSpec::total_jump_rate() const {
    double total = 0.0;
    for (const auto& atom : atoms) total += atom.rate;
    return total;
}

double LevyMarketSpec::kappa() const {
    double k = 0.0;
    for (const auto& atom : atoms) k = std::max(k, atom.z.maxCoeff());
    return k;
}

Validated<LevyMarketSpec> validate_spec(const LevyMarketSpec& spec) {
    std::vector<std::string> errors;
    if (spec.d < 1) {
        errors.push_back("dimension mismatch: d must be at least 1");
        return {std::nullopt, errors};
    }
    if (spec.a.size() != spec.d) {
        errors.push_back("dimension mismatch: a has " + std::to_string(spec.a.size()) +
                         " entries, expected d=" + std::to_string(spec.d));
    } else if (!spec.a.allFinite()) {
        errors.push_back("non-finite appreciation rate a");
    }

    LevyMarketSpec out = spec;
    bool have_c = spec.c.size() > 0;
    if (spec.sigma) {
        const Matrix& sigma = *spec.sigma;
        if (spec.m < 1 || sigma.rows() != spec.d || sigma.cols() != spec.m) {
            errors.push_back("dimension mismatch: sigma is " + shape(sigma) + ", expected " +
                             std::to_string(spec.d) + "x" + std::to_string(spec.m));
        } else if (!all_finite(sigma)) {
            errors.push_back("non-finite volatility sigma");
        } else {
            const Matrix from_sigma = sigma * sigma.transpose();
            if (have_c) {
                if (spec.c.rows() == spec.d && spec.c.cols() == spec.d && all_finite(spec.c) &&
                    (spec.c - from_sigma).cwiseAbs().maxCoeff() > kDefaultPsdTol) {
                    errors.push_back("sigma and c disagree: c != sigma sigma^T");
                }
            } else {
                out.c = from_sigma;
                have_c = true;
            }
        }
    } else if (!have_c) {
        errors.push_back("missing diffusion coefficients: supply sigma or c");
    }

    if (have_c && spec.c.size() > 0) {
        const Matrix& c = spec.c;
        if (c.rows() != spec.d || c.cols() != spec.d) {
            errors.push_back("dimension mismatch: c is " + shape(c) + ", expected " +
                             std::to_string(spec.d) + "x" + std::to_string(spec.d));
        } else if (!all_finite(c)) {
            errors.push_back("non-finite covariance c");
        } else if (!linalg::is_symmetric(c, kDefaultPsdTol)) {
            errors.push_back("c not symmetric");
        } else if (linalg::min_eigenvalue(c) < -kDefaultPsdTol) {
            errors.push_back("c not PSD");
        }
    }

    check_atoms(spec.atoms, spec.d, errors);

    if (!errors.empty()) return {std::nullopt, errors};
    return {out, {}};
}

Validated<ItoMarketSpec> validate_spec(const ItoMarketSpec& spec) {
    std::vector<std::string> errors;
    if (spec.d < 1 || spec.m < 1) {
        errors.push_back("dimension mismatch: d and m must be at least 1");
        return {std::nullopt, errors};
    }
    const auto check_pair = [&](const Vector& a, const Matrix& sigma, const std::string& tag) {
        if (a.size() != spec.d) {
            errors.push_back(tag + "dimension mismatch: a has " + std::to_string(a.size()) +
                             " entries, expected d=" + std::to_string(spec.d));
        } else if (!a.allFinite()) {
            errors.push_back(tag + "non-finite appreciation rate a");
        }
        if (sigma.rows() != spec.d || sigma.cols() != spec.m) {
            errors.push_back(tag + "dimension mismatch: sigma is " + shape(sigma) + ", expected " +
                             std::to_string(spec.d) + "x" + std::to_string(spec.m));
        } else if (!all_finite(sigma)) {
            errors.push_back(tag + "non-finite volatility sigma");
        }
    };
    check_pair(spec.a, spec.sigma, "");

    if (const auto* sched = std::get_if<ScheduleModel>(&spec.model)) {
        const auto n = sched->times.size();
        if (n == 0) {
            errors.push_back("schedule: no segments");
        } else if (sched->a.size() != n || sched->sigma.size() != n) {
            errors.push_back("schedule: times, a and sigma must have equal length");
        } else {
            if (sched->times.front() != 0.0) errors.push_back("schedule: first segment must start at t=0");
            for (std::size_t i = 1; i < n; ++i) {
                if (!(sched->times[i] > sched->times[i - 1]) || !std::isfinite(sched->times[i])) {
                    errors.push_back("schedule: times must be finite and strictly increasing");
                    break;
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                check_pair(sched->a[i], sched->sigma[i], "schedule segment " + std::to_string(i) + ": ");
            }
        }
    } else if (const auto* sv = std::get_if<StochasticVolModel>(&spec.model)) {
        if (!(sv->kappa > 0.0) || !std::isfinite(sv->kappa)) errors.push_back("stochastic_vol: kappa must be positive");
        if (!(sv->xi >= 0.0) || !std::isfinite(sv->xi)) errors.push_back("stochastic_vol: xi must be nonnegative");
        if (!std::isfinite(sv->y0)) errors.push_back("stochastic_vol: y0 must be finite");
    }

    if (!errors.empty()) return {std::nullopt, errors};
    return {spec, {}};
}

ConstraintQuery::ConstraintQuery(const LevyMarketSpec& spec, double eps)
    : ConstraintQuery(std::span<const JumpAtom>(spec.atoms), eps) {}

ConstraintQuery::ConstraintQuery(std::span<const JumpAtom> a, double eps) : atoms(a), eps_feas(eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("ConstraintQuery: eps_feas must be nonnegative");
}

bool in_constraint_set(const Vector& pi, const ConstraintQuery& q) {
    return std::all_of(q.atoms.begin(), q.atoms.end(),
                       [&](const JumpAtom& atom) { return 1.0 + pi.dot(atom.z) >= -q.eps_feas; });
}

bool in_recession_cone(const Vector& eta, const ConstraintQuery& q) {
    return std::all_of(q.atoms.begin(), q.atoms.end(),
                       [&](const JumpAtom& atom) { return eta.dot(atom.z) >= -q.eps_feas; });
}

double min_wealth_ratio(const Vector& pi, std::span<const JumpAtom> atoms) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& atom : atoms) lo = std::min(lo, 1.0 + pi.dot(atom.z));
    return lo;
}

}  // namespace mclock
