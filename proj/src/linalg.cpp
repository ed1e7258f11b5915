#include "polyball/linalg.hpp"

#include <cmath>
#include <limits>

#include "polyball/errors.hpp"

namespace polyball {

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    // sqrt of the top eigenvalue of the smaller of a* a and a a*; the
    // self-adjoint solver is both faster and more accurate than a full SVD
    // at the sizes we use, and the smaller Gram side keeps wide row
    // concatenations cheap.
    Matrix gram = a.rows() < a.cols() ? Matrix(a * a.adjoint()) : Matrix(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

Matrix hermitian_part(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

double min_eigenvalue(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix psd_sqrt(const Matrix& a, double clip) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] < -clip) {
            throw Error(ErrorCode::InvalidArgument,
                        "psd_sqrt: matrix has eigenvalue " + std::to_string(ev[i]));
        }
        ev[i] = ev[i] > 0.0 ? std::sqrt(ev[i]) : 0.0;
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double condition_estimate(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

Matrix random_matrix(int rows, int cols, Rng& rng) {
    Matrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out(i, j) = rng.complex_gaussian();
    return out;
}

Matrix random_unitary(int n, Rng& rng) {
    Matrix g = random_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double m = std::abs(d);
        q.col(j) *= m > 0.0 ? d / m : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace polyball
