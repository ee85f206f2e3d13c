#include "market_clock/lp_feasibility.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mclock::lp {

std::optional<Eigen::VectorXd> find_nonnegative_solution(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                                         const FeasibilityOptions& options) {
    const Eigen::Index rows = A.rows();
    const Eigen::Index n = A.cols();
    if (b.size() != rows) throw std::invalid_argument("find_nonnegative_solution: size mismatch");
    if (rows == 0) return Eigen::VectorXd::Zero(n);

    // Tableau columns: structural (n) | artificial (rows) | rhs.
    const Eigen::Index rhs = n + rows;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows, n + rows + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double sign = b(i) < 0.0 ? -1.0 : 1.0;
        t.row(i).head(n) = sign * A.row(i);
        t(i, n + i) = 1.0;
        t(i, rhs) = sign * b(i);
    }
    std::vector<Eigen::Index> basis(rows);
    for (Eigen::Index i = 0; i < rows; ++i) basis[i] = n + i;

    // Reduced costs of the phase-one objective (sum of artificials).
    Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + rows + 1);
    for (Eigen::Index i = 0; i < rows; ++i) cost -= t.row(i);
    for (Eigen::Index i = 0; i < rows; ++i) cost(n + i) = 0.0;

    const double scale = 1.0 + t.col(rhs).cwiseAbs().maxCoeff();
    for (int pivots = 0;; ++pivots) {
        if (pivots >= options.max_pivots) throw SolverFailure("simplex pivot budget exhausted");

        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n + rows; ++j) {
            if (cost(j) < -options.tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;

        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (t(i, enter) > options.tol) {
                const double ratio = t(i, rhs) / t(i, enter);
                const bool tie = std::abs(ratio - best) <= options.tol;
                if (leave < 0 || ratio < best - options.tol || (tie && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        // Phase-one objective is bounded below by zero, so an entering column
        // always has a positive entry unless the tableau is numerically broken.
        if (leave < 0) throw SolverFailure("simplex phase one reported an unbounded ray");

        t.row(leave) /= t(leave, enter);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
        }
        cost -= cost(enter) * t.row(leave);
        basis[leave] = enter;
    }

    const double infeasibility = -cost(rhs);
    if (infeasibility > options.tol * scale) return std::nullopt;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (basis[i] < n) x(basis[i]) = std::max(0.0, t(i, rhs));
    }
    return x;
}

std::optional<Eigen::VectorXd> find_cone_point(const Eigen::MatrixXd& G, const Eigen::VectorXd& e,
                                               const FeasibilityOptions& options) {
    const Eigen::Index k = G.rows();
    const Eigen::Index r = G.cols();
    if (e.size() != r) throw std::invalid_argument("find_cone_point: size mismatch");
    if (r == 0) return std::nullopt;

    // y = u - v, G y - s = 0, e^T y = 1, with u, v, s >= 0.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k + 1, 2 * r + k);
    A.topLeftCorner(k, r) = G;
    A.block(0, r, k, r) = -G;
    A.block(0, 2 * r, k, k) = -Eigen::MatrixXd::Identity(k, k);
    A.block(k, 0, 1, r) = e.transpose();
    A.block(k, r, 1, r) = -e.transpose();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
    b(k) = 1.0;

    const auto x = find_nonnegative_solution(A, b, options);
    if (!x) return std::nullopt;
    return Eigen::VectorXd(x->head(r) - x->segment(r, r));
}

}  // namespace mclock::lp
