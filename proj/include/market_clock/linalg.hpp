#pragma once

#include <Eigen/Dense>

namespace mclock::linalg {

// Moore-Penrose pseudo-inverse of a symmetric PSD matrix. Eigenvalues at or
// below rel_tol * (largest eigenvalue) are treated as zero.
Eigen::MatrixXd symmetric_pinv(const Eigen::MatrixXd& s, double rel_tol);

// Orthonormal basis (as columns) of the eigenspace of a symmetric matrix
// whose eigenvalues are below abs_tol in magnitude. May have zero columns.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& s, double abs_tol);

double min_eigenvalue(const Eigen::MatrixXd& s);

// Symmetric square root of a PSD matrix (negative round-off eigenvalues are
// clamped to zero).
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& s);

bool is_symmetric(const Eigen::MatrixXd& s, double tol);

}  // namespace mclock::linalg
