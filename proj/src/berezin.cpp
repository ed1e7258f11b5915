#include "polyball/berezin.hpp"

#include <Eigen/Eigenvalues>

#include "polyball/errors.hpp"
#include "polyball/linalg.hpp"

namespace polyball {

namespace {

BerezinKernel build_kernel(const OpTuple& x, const TruncFock& fock, Matrix basis) {
    const int dim_h = x.dim_h();
    const int rank = static_cast<int>(basis.cols());
    const Matrix root = psd_sqrt(full_defect(x), 1e-8);

    BerezinKernel k{fock, dim_h, rank, std::move(basis),
                    Matrix::Zero(static_cast<Eigen::Index>(fock.dim()) * rank, dim_h),
                    {}};
    for (int b = 0; b < fock.dim(); ++b) {
        const MultiWord mw = fock.multiword_at(b);
        const Matrix block = k.defect_basis.adjoint() * root * x.multiword_product(mw).adjoint();
        k.matrix.block(static_cast<Eigen::Index>(b) * rank, 0, rank, dim_h) = block;
    }
    k.tail_bounds.reserve(static_cast<size_t>(x.factors()));
    for (int i = 1; i <= x.factors(); ++i) {
        const Matrix tail = cp_map_power(x.row(i), fock.caps()[i - 1] + 1, dim_h);
        k.tail_bounds.push_back(std::sqrt(operator_norm(tail)));
    }
    return k;
}

void check_kernel_inputs(const OpTuple& x, const TruncFock& fock) {
    if (x.n() != fock.n()) {
        throw Error(ErrorCode::ShapeMismatch,
                    "tuple row lengths do not match the model alphabet sizes");
    }
    if (membership_report(x).cls == Membership::Outside) {
        throw Error(ErrorCode::NotInClosedBall,
                    "Berezin kernel requires a tuple in the closed polyball");
    }
}

} // namespace

BerezinKernel berezin_kernel(const OpTuple& x, const TruncFock& fock, double defect_cutoff) {
    check_kernel_inputs(x, fock);
    const Matrix defect = full_defect(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(defect));
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::DegenerateSample, "defect eigendecomposition failed");
    }
    // Eigen orders eigenvalues ascending; keep the significant ones, largest
    // first, so the leading defect direction sits in column zero.
    std::vector<int> keep;
    for (int j = static_cast<int>(es.eigenvalues().size()) - 1; j >= 0; --j) {
        if (es.eigenvalues()(j) > defect_cutoff) keep.push_back(j);
    }
    if (keep.empty()) {
        throw Error(ErrorCode::DegenerateSample,
                    "defect operator is numerically zero; no kernel codomain");
    }
    Matrix basis(x.dim_h(), static_cast<Eigen::Index>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    return build_kernel(x, fock, std::move(basis));
}

BerezinKernel berezin_kernel_with_basis(const OpTuple& x, const TruncFock& fock,
                                        const Matrix& defect_basis) {
    check_kernel_inputs(x, fock);
    if (defect_basis.rows() != x.dim_h() || defect_basis.cols() < 1) {
        throw Error(ErrorCode::ShapeMismatch, "defect basis must be dim_h x rank");
    }
    const Matrix gram = defect_basis.adjoint() * defect_basis;
    if (operator_norm(gram - Matrix::Identity(gram.rows(), gram.cols())) > 1e-8) {
        throw Error(ErrorCode::InvalidArgument, "defect basis columns must be orthonormal");
    }
    return build_kernel(x, fock, defect_basis);
}

Matrix berezin_transform(const BerezinKernel& k, const Matrix& g) {
    if (g.rows() != k.fock.dim() || g.cols() != k.fock.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "transform argument must act on the model space");
    }
    return k.matrix.adjoint() * kron(g, Matrix::Identity(k.defect_rank, k.defect_rank)) * k.matrix;
}

KernelUnitarityReport kernel_unitarity_report(const BerezinKernel& k, int margin) {
    if (margin < 0) margin = k.fock.default_interior_margin();
    const Matrix p = k.fock.interior_projection(margin);
    const Matrix p_amp = kron(p, Matrix::Identity(k.defect_rank, k.defect_rank));

    Matrix iso = k.matrix.adjoint() * k.matrix - Matrix::Identity(k.dim_h, k.dim_h);
    if (k.dim_h == k.fock.dim()) iso = p * iso * p;

    const Matrix co = k.matrix * k.matrix.adjoint()
        - Matrix::Identity(k.matrix.rows(), k.matrix.rows());
    return {operator_norm(iso), operator_norm(p_amp * co * p_amp), margin};
}

bool kernel_is_unitary(const BerezinKernel& k, double tol, int margin) {
    const KernelUnitarityReport r = kernel_unitarity_report(k, margin);
    return r.isometry_residual <= tol && r.coisometry_residual <= tol;
}

Matrix berezin_implemented_automorphism(const BerezinKernel& k, const Matrix& g,
                                        double tol, int margin) {
    if (!kernel_is_unitary(k, tol, margin)) {
        const KernelUnitarityReport r = kernel_unitarity_report(k, margin);
        throw Error(ErrorCode::KernelNotUnitary,
                    "kernel unitarity residuals " + std::to_string(r.isometry_residual)
                    + ", " + std::to_string(r.coisometry_residual) + " exceed tolerance");
    }
    return berezin_transform(k, g);
}

} // namespace polyball
