#pragma once
// Free power series with one fixed coefficient shape: homogeneous Gram
// norms, evaluation at tuples and on the truncated model, the convergence
// radius estimate, Cauchy and Abel diagnostics, free partial derivatives,
// composition, and the Schwarz margin harness.

#include <map>
#include <vector>

#include "polyball/tuples.hpp"

namespace polyball {

struct MultiWordOrder {
    bool operator()(const MultiWord& a, const MultiWord& b) const {
        return multiword_less(a, b);
    }
};

// Sparse map from multiwords to coefficients; every coefficient shares the
// shape fixed at construction, and absent entries are zero. A series whose
// stored terms are only a prefix of an infinite expansion carries the
// truncated_tail mark; without it the stored terms are the whole series.
class FreeSeries {
public:
    using TermMap = std::map<MultiWord, Matrix, MultiWordOrder>;

    FreeSeries(std::vector<int> row_lengths, int coeff_rows, int coeff_cols);

    static FreeSeries scalar_series(std::vector<int> row_lengths);
    // The coordinate monomial Z_{i,j}.
    static FreeSeries coordinate(const std::vector<int>& row_lengths, int factor,
                                 int letter);

    const std::vector<int>& n() const { return n_; }
    int factors() const { return static_cast<int>(n_.size()); }
    int coeff_rows() const { return rows_; }
    int coeff_cols() const { return cols_; }

    void set(const MultiWord& mw, Matrix coeff);
    void set(const MultiWord& mw, Complex coeff);  // scalar shape only
    void add(const MultiWord& mw, const Matrix& coeff);
    Matrix coeff_or_zero(const MultiWord& mw) const;
    const TermMap& terms() const { return terms_; }

    MultiWord unit() const;  // all factors empty
    int max_total_degree() const;

    bool truncated_tail() const { return truncated_tail_; }
    void mark_truncated_tail(bool value) { truncated_tail_ = value; }

    FreeSeries scaled(Complex factor) const;

private:
    std::vector<int> n_;
    int rows_;
    int cols_;
    bool truncated_tail_ = false;
    TermMap terms_;
};

// ||sum over |alpha_i| = p_i of A*_(alpha) A_(alpha)||^{1/2}.
double homogeneous_norm(const FreeSeries& s, const std::vector<int>& p_vec);

// Multidegrees with nonzero stored coefficients, with their Gram norms.
std::map<std::vector<int>, double> homogeneous_norms_by_multidegree(const FreeSeries& s);

struct EvalReport {
    Matrix value;            // (coeff_rows * dimH) x (coeff_cols * dimH)
    double last_block_norm;
    int degrees_used;        // highest total degree summed
    bool reached_tol;
};

// Grouped homogeneous summation in increasing total degree. Stops early
// after two consecutive blocks fall below tol (tol = 0 disables the early
// stop); throws Diverging after five consecutive strictly growing blocks.
EvalReport evaluate(const FreeSeries& s, const OpTuple& x, int max_total_degree,
                    double tol);

// F(rS) on the truncated model; the norm of the result is the sup-norm
// estimate from below.
Matrix evaluate_on_model(const FreeSeries& s, const TruncFock& fock,
                         const std::vector<double>& r_vec);
double model_norm(const FreeSeries& s, const TruncFock& fock,
                  const std::vector<double>& r_vec);

// Norm of the homogeneous piece of F(rS) per total degree, up to the stored
// maximum; used by the convergence dichotomy probes.
std::vector<double> model_block_norms(const FreeSeries& s, const TruncFock& fock,
                                      const std::vector<double>& r_vec);

// Radius estimate: 1 / max over total degrees q in [max(2, max/2), max] of
// (max Gram norm at total degree q)^{1/q}, computed in log2 space; +inf when
// the window holds no nonzero coefficient. Degrees absent from storage are
// taken as zero, so the caller picks max_total_degree to match what the
// stored data represents.
double hadamard_radius(const FreeSeries& s, int max_total_degree);

struct AbelReport {
    bool bounded;
    double bound;                        // max scaled Gram norm observed
    std::vector<int> offending_multidegree;  // empty when bounded
};

// Boundedness probe for the scaled Gram norms r^{2p} ||sum A*A||. The upper
// half of the degree window must not exceed the lower half's maximum (plus
// roundoff); degree zero is excluded since boundedness is a tail property.
AbelReport abel_bounded_on(const FreeSeries& s, const std::vector<double>& r_vec,
                           int max_total_degree);

struct CauchyEntry {
    std::vector<int> p_vec;
    double lhs;   // homogeneous_norm(p)
    double rhs;   // (1+slack) * model_norm / prod r^p
    bool pass;
};

struct CauchyReport {
    double model_norm;
    std::vector<CauchyEntry> entries;
    bool pass;
};

CauchyReport cauchy_check(const FreeSeries& s, const std::vector<double>& r_vec,
                          const TruncFock& fock, double slack);

// Sum over occurrences of letter j in factor i of the monomial with that
// occurrence deleted.
FreeSeries free_partial_derivative(const FreeSeries& s, int factor, int letter);

// Series product; per-factor concatenation of monomials. Terms above the
// cutoff are dropped and mark the result's truncated tail.
FreeSeries multiply(const FreeSeries& a, const FreeSeries& b, int max_total_degree);

// Substitution Z_{i,j} -> g[i-1][j-1]; the inner series must share one shape
// of scalar coefficients over a common target alphabet.
FreeSeries compose(const FreeSeries& f, const std::vector<std::vector<FreeSeries>>& g,
                   int max_total_degree);

struct SchwarzReport {
    double value_norm;    // ||F(X)||
    double gauge;         // Minkowski gauge of X
    double sup_estimate;  // ||F(rS)|| at r = 0.999 on the given caps
    double bound;         // (1+slack) * gauge * sup_estimate
    bool pass;
    double x_row_sum_norm;  // ||Phi_{X_1}(I)+...+Phi_{X_k}(I)||^{1/2}
};

SchwarzReport schwarz_margin(const FreeSeries& f, const OpTuple& x, const TruncFock& fock,
                             double slack, double gauge_tol = kBisectionTol);

} // namespace polyball
