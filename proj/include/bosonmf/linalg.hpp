#pragma once

// Small dense eigensolvers used for trace norms and spectral checks.

#include <vector>

#include <Eigen/Dense>

namespace bosonmf {

struct JacobiOptions {
  double tolerance = 1e-13;  // on the off-diagonal Frobenius norm, relative to max(1, ||A||_F)
  int max_sweeps = 100;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options = {});

/// Eigenvalues of a Hermitian matrix, ascending. The matrix is embedded as the
/// real symmetric [[Re, -Im], [Im, Re]], whose spectrum is each eigenvalue twice.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h, const JacobiOptions& options = {});

}  // namespace bosonmf
