#pragma once

#include <Eigen/Dense>

namespace rokhlin {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Largest singular value.  Falls back to power iteration on A^*A if the SVD
/// does not converge.
double operator_norm(const CMatrix& a);
double operator_norm(const RMatrix& a);

/// Smallest eigenvalue of the Hermitian part (a + a^*)/2.
double min_hermitian_eigenvalue(const CMatrix& a);
double max_hermitian_eigenvalue(const CMatrix& a);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace rokhlin
