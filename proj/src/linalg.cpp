#include "market_clock/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mclock::linalg {

Eigen::MatrixXd symmetric_pinv(const Eigen::MatrixXd& s, double rel_tol) {
    const auto n = s.rows();
    if (n == 0) return Eigen::MatrixXd(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double largest = ev.cwiseAbs().maxCoeff();
    const double cutoff = rel_tol * largest;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (largest > 0.0 && ev(i) > cutoff) inv(i) = 1.0 / ev(i);
    }
    const Eigen::MatrixXd& v = es.eigenvectors();
    return v * inv.asDiagonal() * v.transpose();
}

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& s, double abs_tol) {
    const auto n = s.rows();
    if (n == 0) return Eigen::MatrixXd(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd& ev = es.eigenvalues();
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(ev(i)) <= abs_tol) ++count;
    }
    Eigen::MatrixXd basis(n, count);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(ev(i)) <= abs_tol) basis.col(col++) = es.eigenvectors().col(i);
    }
    return basis;
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
    if (s.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& s) {
    if (s.rows() == 0) return Eigen::MatrixXd(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd& v = es.eigenvectors();
    return v * root.asDiagonal() * v.transpose();
}

bool is_symmetric(const Eigen::MatrixXd& s, double tol) {
    if (s.rows() != s.cols()) return false;
    if (s.size() == 0) return true;
    return (s - s.transpose()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace mclock::linalg
