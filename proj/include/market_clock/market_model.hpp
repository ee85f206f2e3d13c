#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace mclock {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultFeasTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-10;

// One atom of a finite jump measure: relative jump sizes z (one per asset)
// occurring at Poisson intensity `rate` per unit calendar time.
struct JumpAtom {
    Vector z;
    double rate = 0.0;
};

// Exponential Levy market given by its triplet (a, c, nu) with nu a finite
// sum of atoms. Either `sigma` (d x m) or `c` (d x d) may be supplied; after
// validation `c` is always populated.
struct LevyMarketSpec {
    int d = 0;
    int m = 0;
    Vector a;
    std::optional<Matrix> sigma;
    Matrix c;
    std::vector<JumpAtom> atoms;

    double total_jump_rate() const;
    // Largest jump coordinate over all atoms (0 if none).
    double kappa() const;
};

// Piecewise-constant coefficients: segment i is active on [times[i], times[i+1]).
struct ScheduleModel {
    std::vector<double> times;
    std::vector<Vector> a;
    std::vector<Matrix> sigma;
};

struct ConstantModel {};

// sigma_t = sigma * exp(Y_t), a_t = a, with Y an Ornstein-Uhlenbeck factor
// dY = -kappa Y dt + xi dB, B independent of the asset noise.
struct StochasticVolModel {
    double kappa = 1.0;
    double xi = 0.0;
    double y0 = 0.0;
};

using CoefficientModel = std::variant<ConstantModel, ScheduleModel, StochasticVolModel>;

// Ito market with step-function coefficients generated on a calendar grid.
// `a` and `sigma` are the base coefficients used by the constant and
// stochastic-volatility models.
struct ItoMarketSpec {
    int d = 0;
    int m = 0;
    Vector a;
    Matrix sigma;
    CoefficientModel model = ConstantModel{};
};

template <typename Spec>
struct Validated {
    std::optional<Spec> spec;
    std::vector<std::string> errors;

    bool ok() const { return spec.has_value(); }
};

Validated<LevyMarketSpec> validate_spec(const LevyMarketSpec& spec);
Validated<ItoMarketSpec> validate_spec(const ItoMarketSpec& spec);

// Read-only view over the atoms of a validated spec plus the tolerance used
// for boundary decisions.
struct ConstraintQuery {
    std::span<const JumpAtom> atoms;
    double eps_feas = kDefaultFeasTol;

    explicit ConstraintQuery(const LevyMarketSpec& spec, double eps = kDefaultFeasTol);
    explicit ConstraintQuery(std::span<const JumpAtom> atoms, double eps = kDefaultFeasTol);
};

// pi lies in the natural constraint set: 1 + <pi, z> >= -eps on every atom.
bool in_constraint_set(const Vector& pi, const ConstraintQuery& q);

// eta lies in the recession cone of the natural constraints: <eta, z> >= -eps
// on every atom.
bool in_recession_cone(const Vector& eta, const ConstraintQuery& q);

// Smallest 1 + <pi, z_k> over the atoms (+inf without atoms).
double min_wealth_ratio(const Vector& pi, std::span<const JumpAtom> atoms);

}  // namespace mclock
