#pragma once
// Operator tuples on a finite-dimensional space: completely positive row
// maps, defect operators, polyball membership, purity, the Minkowski gauge,
// and structured sampling of random cross-commuting tuples.

#include <vector>

#include "polyball/fock.hpp"
#include "polyball/linalg.hpp"
#include "polyball/rng.hpp"

namespace polyball {

inline constexpr double kCommutationTol = 1e-10;
inline constexpr double kMembershipTol = 1e-10;
inline constexpr double kBisectionTol = 1e-8;

// k rows of dimH x dimH matrices; entries of distinct rows must commute
// (validated at construction, scaled by the operator norms involved).
class OpTuple {
public:
    OpTuple(std::vector<int> row_lengths, int dim_h,
            std::vector<std::vector<Matrix>> entries,
            double commutation_tol = kCommutationTol);

    const std::vector<int>& n() const { return n_; }
    int factors() const { return static_cast<int>(n_.size()); }
    int dim_h() const { return dim_h_; }

    // Rows and letters are 1-based, matching subscripts X_{i,j}.
    const Matrix& entry(int factor, int letter) const;
    const std::vector<Matrix>& row(int factor) const;

    OpTuple scaled(Complex factor) const;

    // X_{i,w} = X_{i,w_1} ... X_{i,w_p}; empty word gives the identity.
    Matrix word_product(int factor, const Word& w) const;
    // X_(alpha) = X_{1,alpha_1} ... X_{k,alpha_k}.
    Matrix multiword_product(const MultiWord& mw) const;

    static OpTuple zero(std::vector<int> row_lengths, int dim_h);
    // dimH = 1 tuple from scalar row vectors.
    static OpTuple scalar_point(const std::vector<Vector>& z);
    // The left creation tuple on a truncated model.
    static OpTuple from_model(const TruncFock& fock);

    // Shape checks only; skips the cross-commutation scan. For tuples whose
    // commutation holds by construction (scalings, model tuples, entrywise
    // functions of a single validated row). User-supplied data must go
    // through the checking constructor instead.
    static OpTuple trusted(std::vector<int> row_lengths, int dim_h,
                           std::vector<std::vector<Matrix>> entries);

private:
    struct TrustedTag {};
    OpTuple(TrustedTag, std::vector<int> row_lengths, int dim_h,
            std::vector<std::vector<Matrix>> entries);

    std::vector<int> n_;
    int dim_h_;
    std::vector<std::vector<Matrix>> x_;
};

// Phi_{X_i}(Y) = sum_j X_{i,j} Y X_{i,j}*.
Matrix cp_map_apply(const std::vector<Matrix>& x_row, const Matrix& y);

// Phi_{X_i}^q(I).
Matrix cp_map_power(const std::vector<Matrix>& x_row, int q, int dim_h);

// Composition over factors of (id - Phi_i)^{p_i} applied to I; the factors
// commute when the tuple cross-commutes, so the order is immaterial.
Matrix defect(const OpTuple& x, const std::vector<int>& p_vec);

// p = (1,...,1).
Matrix full_defect(const OpTuple& x);

enum class Membership { Interior, ClosedBoundary, Outside };
const char* membership_name(Membership m);

struct MembershipReport {
    Membership cls;
    double defect_min_eigenvalue;   // of the full defect
    double worst_defect_eigenvalue; // most negative over all 2^k defects
    std::vector<double> row_norms;  // ||Phi_{X_i}(I)||, i = 1..k
    double tol;
};

MembershipReport membership_report(const OpTuple& x, double tol = kMembershipTol);
Membership membership(const OpTuple& x, double tol = kMembershipTol);

enum class Purity { Pure, NotPure, Undetermined };
const char* purity_name(Purity p);

struct PurityReport {
    std::vector<Purity> per_factor;
    std::vector<int> power_used;       // q at which the verdict was reached
    std::vector<double> final_norms;   // ||Phi_i^q(I)|| at that q
    Purity overall;
};

PurityReport is_pure(const OpTuple& x, double tol = 1e-10, int max_power = 100);

// inf{r > 0 : X/r lies in the open polyball}, by bisection. The bracket
// starts at [0, 2 * max row norm + 1] and grows if the top is not interior.
double minkowski(const OpTuple& x, double tol = kBisectionTol);

// Cross-commuting random tuple with minkowski within 0.02 of target_m (in
// practice much closer: the raw sample is rescaled by target_m/minkowski).
// With nilpotent=true every entry is strictly block-lower-triangular in a
// common basis, so the tuple is jointly nilpotent and pure.
OpTuple random_tuple(const std::vector<int>& row_lengths, int dim_h, double target_m,
                     bool nilpotent, Rng& rng);

} // namespace polyball
