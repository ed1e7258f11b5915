#pragma once
// Free holomorphic automorphisms of the polyball in canonical triple form
// (permutation, row unitaries, Moebius centers): evaluation on tuples and on
// the truncated model, group operations by canonical refactorization, the
// defect transformation identity, the automorphism metric, and the projective
// unitary representation on the model space.

#include <vector>

#include "polyball/berezin.hpp"
#include "polyball/fock.hpp"
#include "polyball/rng.hpp"
#include "polyball/tuples.hpp"

namespace polyball {

// A point of the open unit ball of C^n with its two defect factors cached:
// the scalar (1 - |lambda|^2)^{1/2} and the n x n root (I - lambda* lambda)^{1/2}.
class BallPoint {
public:
    explicit BallPoint(Vector lambda);
    static BallPoint origin(int n);

    int n() const { return static_cast<int>(lambda_.size()); }
    const Vector& lambda() const { return lambda_; }
    double delta() const { return delta_; }
    const Matrix& delta_star() const { return delta_star_; }

private:
    Vector lambda_;
    double delta_;
    Matrix delta_star_;
};

// The Moebius row map lambda - delta (I - sum conj(lambda_j) Y_j)^{-1} [Y] delta_star.
// Defined whenever the resolvent exists; rows of tuples in the closed ball
// always qualify because ||sum conj(lambda_j) Y_j|| <= |lambda| < 1.
std::vector<Matrix> moebius_apply(const BallPoint& lp, const std::vector<Matrix>& y_row,
                                  double cond_limit = 1e12);
Vector moebius_apply_scalar(const BallPoint& lp, const Vector& z);

// Canonical triple (sigma, U, lambda) of an automorphism: per-factor Moebius
// maps, then each row times its unitary, then factor permutation. sigma is
// stored as 1-based images, sigma(i) = image of output slot i, and must
// satisfy n_{sigma(i)} = n_i.
class Automorphism {
public:
    Automorphism(std::vector<int> sigma, std::vector<Matrix> u,
                 std::vector<BallPoint> lambda);

    static Automorphism identity(const std::vector<int>& n_vec);
    // The involution with these centers: (id, +I, lambda).
    static Automorphism moebius(std::vector<BallPoint> lambda);

    const std::vector<int>& n() const { return n_; }
    int factors() const { return static_cast<int>(n_.size()); }
    const std::vector<int>& sigma() const { return sigma_; }
    const Matrix& u(int factor) const;          // 1-based
    const BallPoint& center(int factor) const;  // 1-based

private:
    std::vector<int> sigma_;
    std::vector<Matrix> u_;
    std::vector<BallPoint> lambda_;
    std::vector<int> n_;
};

OpTuple apply(const Automorphism& a, const OpTuple& x);
std::vector<Vector> apply_scalar(const Automorphism& a, const std::vector<Vector>& z);
// Solves a(z) = w in closed form (the Moebius factors are involutions).
std::vector<Vector> inverse_point(const Automorphism& a, const std::vector<Vector>& w);

// Boundary function at r: the rows of a applied to the scaled model tuple.
std::vector<std::vector<Matrix>> apply_to_model(const Automorphism& a, const TruncFock& fock,
                                                double r = 1.0);

// Max over rows i and letter pairs (j, l) of the interior-block residual of
// hat{Psi}_i* hat{Psi}_i = I, i.e. || P (Psi_{i,j}* Psi_{i,l} - delta_{jl} I) P ||.
double boundary_row_isometry_residual(const std::vector<std::vector<Matrix>>& rows,
                                      const TruncFock& fock, int margin = -1);

struct LinearFactorization {
    std::vector<int> sigma;       // 1-based images
    std::vector<Matrix> blocks;   // blocks[i-1] = the unitary at (sigma(i), i)
};

// Detects the permuted-block-unitary pattern of an automorphism linear part:
// for each output factor block exactly one input block carries mass, that
// block is unitary within tol, everything else is below tol. Any other shape
// is rejected; automorphism linear parts admit no further freedom.
LinearFactorization factor_linear_part(const Matrix& l, const std::vector<int>& n_vec,
                                       double tol = 1e-6);

// Canonical triple of a1 after a2 (a1 applied second). The center comes from
// exact point inversion; the linear part from central differences of the
// composition Psi . Psi_center, which is exactly linear, so fd_step only
// balances rounding. The result is validated at fixed random scalar points.
Automorphism compose(const Automorphism& a1, const Automorphism& a2,
                     double fd_step = 1e-5);
Automorphism inverse(const Automorphism& a, double fd_step = 1e-5);

// || defect(a(X)) - prod(1 - |lambda_i|^2) R defect(X) R* || with R the
// product over factors of (I - sum conj(lambda_{i,j}) X_{i,j})^{-1}.
double defect_identity_residual(const Automorphism& a, const OpTuple& x);

// Boundary-function sup distance over the r-grid plus the Euclidean distance
// of the centers a^{-1}(0). The first term is a lower estimate of the true
// sup over all representations; the grid default is {0.5, 0.9, 0.99}.
double metric(const Automorphism& a1, const Automorphism& a2, const TruncFock& fock,
              const std::vector<double>& r_grid = {0.5, 0.9, 0.99});

// Number of path components of the automorphism group: the count of
// permutations preserving the alphabet-size pattern, prod (multiplicity!).
long long component_count(const std::vector<int>& n_vec);

struct ProjectiveUnitary {
    Matrix u;                    // fock.dim x fock.dim
    int margin;
    double unitarity_residual;   // ||P(U*U - I)P||
    double defect_ratio;         // second / largest defect eigenvalue, interior
    double defect_norm_sq;       // ||Delta^{1/2} vacuum||^2, near prod(1 - |lambda_i|^2)
};

// U rows are v0* Delta^{1/2} hat{Psi}*_(beta) with v0 the normalized leading
// defect direction Delta^{1/2}(vacuum); then U* S_{i,j} U = hat{Psi}_{i,j}
// on the interior block. Throws DefectRankNotOne when the interior defect is
// not numerically rank one (ratio above rank_tol).
ProjectiveUnitary projective_unitary(const Automorphism& a, const TruncFock& fock,
                                     int margin = -1, double rank_tol = 1e-3);

// Max over (i, j) of || P (U* S_{i,j} U - hat{Psi}_{i,j}) P ||.
double conjugation_residual(const Matrix& u, const std::vector<std::vector<Matrix>>& rows,
                            const TruncFock& fock, int margin = -1);

// Berezin transform at the scalar point z of each boundary-function entry;
// agrees with apply_scalar up to the truncation tail.
std::vector<Vector> scalar_group_iso(const Automorphism& a, const std::vector<Vector>& z,
                                     const TruncFock& fock);

// Random triple: unitaries from Haar-like QR draws, centers of the given
// norm, sigma an optional pattern-preserving permutation (identity default).
Automorphism random_automorphism(const std::vector<int>& n_vec, double center_norm,
                                 Rng& rng, const std::vector<int>& sigma = {});

} // namespace polyball
