#pragma once
// Thin helpers over Eigen used throughout: operator norms, Hermitian square
// roots, Kronecker products, and random matrices fed from our Rng.

#include <Eigen/Dense>
#include <complex>

#include "polyball/rng.hpp"

namespace polyball {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Largest singular value.
double operator_norm(const Matrix& a);

// Smallest eigenvalue of the Hermitian part (a + a*)/2.
double min_eigenvalue(const Matrix& a);

Matrix hermitian_part(const Matrix& a);

// Square root of a PSD matrix; eigenvalues in [-clip, 0) are clipped to 0,
// anything below -clip throws InvalidArgument.
Matrix psd_sqrt(const Matrix& a, double clip = 1e-10);

Matrix kron(const Matrix& a, const Matrix& b);

// Ratio of extreme singular values, +inf when the smallest is 0.
double condition_estimate(const Matrix& a);

// iid complex Gaussian entries (unit variance per entry).
Matrix random_matrix(int rows, int cols, Rng& rng);

// Haar-ish unitary: QR of a Gaussian matrix with the phase fix that makes
// the diagonal of R positive, which removes the QR sign ambiguity.
Matrix random_unitary(int n, Rng& rng);

} // namespace polyball
