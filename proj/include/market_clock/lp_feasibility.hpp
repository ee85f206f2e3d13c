#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace mclock::lp {

class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FeasibilityOptions {
    double tol = 1e-9;
    int max_pivots = 10000;
};

// Finds x >= 0 with A x = b using phase one of the dense simplex method
// (Bland's rule, so no cycling). Returns nullopt when the system is
// infeasible; throws SolverFailure if the pivot budget runs out.
std::optional<Eigen::VectorXd> find_nonnegative_solution(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                                         const FeasibilityOptions& options = {});

// Finds y (free) with G y >= 0 and e^T y = 1, or nullopt if none exists.
std::optional<Eigen::VectorXd> find_cone_point(const Eigen::MatrixXd& G, const Eigen::VectorXd& e,
                                               const FeasibilityOptions& options = {});

}  // namespace mclock::lp
