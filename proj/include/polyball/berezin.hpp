#pragma once
// Noncommutative Berezin kernels and transforms on a truncated model: the
// dilation intertwiner of a tuple inside the closed polyball, the compression
// transform, the unitary-kernel criterion, and the conjugation map a unitary
// kernel implements.

#include <vector>

#include "polyball/fock.hpp"
#include "polyball/tuples.hpp"

namespace polyball {

inline constexpr double kDefectCutoff = 1e-12;

struct BerezinKernel {
    TruncFock fock;
    int dim_h;
    int defect_rank;
    Matrix defect_basis;  // dim_h x defect_rank, orthonormal columns
    // Codomain layout: fock slot slow, defect slot fast; the row block of
    // multiword beta holds basis* Delta^{1/2} X*_(beta).
    Matrix matrix;  // (fock.dim * defect_rank) x dim_h
    std::vector<double> tail_bounds;  // per factor: ||Phi_i^{cap+1}(I)||^{1/2}
};

// Kernel columns from the truncated series sum_beta e_(beta) (x) Delta^{1/2}
// X*_(beta) h; exact (an isometry) for jointly nilpotent X within caps.
BerezinKernel berezin_kernel(const OpTuple& x, const TruncFock& fock,
                             double defect_cutoff = kDefectCutoff);

// Same construction with a caller-chosen orthonormal defect basis; used when
// the defect is known to be essentially rank one and a fixed phase matters.
BerezinKernel berezin_kernel_with_basis(const OpTuple& x, const TruncFock& fock,
                                        const Matrix& defect_basis);

// K* (g tensor I_defect) K.
Matrix berezin_transform(const BerezinKernel& k, const Matrix& g);

// Both residuals ||K*K - I|| and ||KK* - I||, the latter restricted to the
// interior block (degrees at most caps - margin, margin < 0 meaning the fock
// default). When the tuple lives on the model space itself the isometry side
// is restricted too: truncation injects spurious defect directions at top
// degrees that say nothing about the untruncated operator.
bool kernel_is_unitary(const BerezinKernel& k, double tol, int margin = -1);

struct KernelUnitarityReport {
    double isometry_residual;
    double coisometry_residual;
    int margin;
};
KernelUnitarityReport kernel_unitarity_report(const BerezinKernel& k, int margin = -1);

// Gamma(g) = K* (g tensor I) K for a unitary kernel; conjugation by the
// kernel, multiplicative up to truncation.
Matrix berezin_implemented_automorphism(const BerezinKernel& k, const Matrix& g,
                                        double tol = 1e-6, int margin = -1);

} // namespace polyball
