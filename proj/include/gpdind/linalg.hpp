#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gpdind {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Numerical rank: singular values above rel_tol * sigma_max.
Eigen::Index numerical_rank(const Matrix& m, double rel_tol);

/// Orthonormal basis of the column span (rank decided at rel_tol).
Matrix column_space(const Matrix& m, double rel_tol);

/// Block-diagonal direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Smallest eigenvalue of a Hermitian matrix (0 for an empty matrix).
double min_eigenvalue(const Matrix& hermitian);

}  // namespace gpdind
