#include "polyball/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polyball/errors.hpp"

namespace polyball {
namespace {

void check_same_alphabets(const FreeSeries& s, const std::vector<int>& n_vec) {
    if (s.n() != n_vec)
        throw Error(ErrorCode::ShapeMismatch, "series alphabets do not match");
}

std::vector<int> multidegree(const MultiWord& mw) {
    std::vector<int> p;
    p.reserve(mw.parts.size());
    for (const Word& w : mw.parts) p.push_back(static_cast<int>(w.size()));
    return p;
}

} // namespace

FreeSeries::FreeSeries(std::vector<int> row_lengths, int coeff_rows, int coeff_cols)
    : n_(std::move(row_lengths)), rows_(coeff_rows), cols_(coeff_cols) {
    if (n_.empty())
        throw Error(ErrorCode::ShapeMismatch, "series needs at least one factor");
    for (int ni : n_)
        if (ni < 1) throw Error(ErrorCode::ShapeMismatch, "alphabet size must be >= 1");
    if (rows_ < 1 || cols_ < 1)
        throw Error(ErrorCode::ShapeMismatch, "coefficient shape must be positive");
}

FreeSeries FreeSeries::scalar_series(std::vector<int> row_lengths) {
    return FreeSeries(std::move(row_lengths), 1, 1);
}

FreeSeries FreeSeries::coordinate(const std::vector<int>& row_lengths, int factor,
                                  int letter) {
    FreeSeries s = scalar_series(row_lengths);
    MultiWord mw;
    mw.parts.resize(row_lengths.size());
    if (factor < 1 || factor > static_cast<int>(row_lengths.size()))
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    if (letter < 1 || letter > row_lengths[static_cast<std::size_t>(factor - 1)])
        throw Error(ErrorCode::IndexOutOfRange, "letter " + std::to_string(letter));
    mw.parts[static_cast<std::size_t>(factor - 1)] = Word{letter};
    s.set(mw, Complex(1.0, 0.0));
    return s;
}

MultiWord FreeSeries::unit() const {
    MultiWord mw;
    mw.parts.resize(n_.size());
    return mw;
}

void FreeSeries::set(const MultiWord& mw, Matrix coeff) {
    if (static_cast<int>(mw.parts.size()) != factors())
        throw Error(ErrorCode::ShapeMismatch, "multiword factor count mismatch");
    for (std::size_t i = 0; i < mw.parts.size(); ++i)
        for (int letter : mw.parts[i])
            if (letter < 1 || letter > n_[i])
                throw Error(ErrorCode::IndexOutOfRange,
                            "letter " + std::to_string(letter) + " in factor " +
                                std::to_string(i + 1));
    if (coeff.rows() != rows_ || coeff.cols() != cols_)
        throw Error(ErrorCode::ShapeMismatch, "coefficient shape mismatch");
    terms_[mw] = std::move(coeff);
}

void FreeSeries::set(const MultiWord& mw, Complex coeff) {
    if (rows_ != 1 || cols_ != 1)
        throw Error(ErrorCode::ShapeMismatch, "scalar set on a matrix-valued series");
    set(mw, Matrix::Constant(1, 1, coeff));
}

void FreeSeries::add(const MultiWord& mw, const Matrix& coeff) {
    auto it = terms_.find(mw);
    if (it == terms_.end())
        set(mw, coeff);
    else
        it->second += coeff;
}

Matrix FreeSeries::coeff_or_zero(const MultiWord& mw) const {
    auto it = terms_.find(mw);
    if (it != terms_.end()) return it->second;
    return Matrix::Zero(rows_, cols_);
}

int FreeSeries::max_total_degree() const {
    int d = 0;
    for (const auto& [mw, coeff] : terms_) d = std::max(d, mw.total_degree());
    return d;
}

FreeSeries FreeSeries::scaled(Complex factor) const {
    FreeSeries out = *this;
    for (auto& [mw, coeff] : out.terms_) coeff *= factor;
    return out;
}

double homogeneous_norm(const FreeSeries& s, const std::vector<int>& p_vec) {
    if (static_cast<int>(p_vec.size()) != s.factors())
        throw Error(ErrorCode::ShapeMismatch, "p_vec length mismatch");
    Matrix gram = Matrix::Zero(s.coeff_cols(), s.coeff_cols());
    bool any = false;
    for (const auto& [mw, coeff] : s.terms()) {
        if (multidegree(mw) != p_vec) continue;
        gram += coeff.adjoint() * coeff;
        any = true;
    }
    if (!any) return 0.0;
    return std::sqrt(operator_norm(gram));
}

std::map<std::vector<int>, double> homogeneous_norms_by_multidegree(const FreeSeries& s) {
    std::map<std::vector<int>, Matrix> grams;
    for (const auto& [mw, coeff] : s.terms()) {
        auto p = multidegree(mw);
        auto it = grams.find(p);
        if (it == grams.end())
            grams.emplace(std::move(p), Matrix(coeff.adjoint() * coeff));
        else
            it->second += coeff.adjoint() * coeff;
    }
    std::map<std::vector<int>, double> out;
    for (const auto& [p, gram] : grams) out[p] = std::sqrt(operator_norm(gram));
    return out;
}

EvalReport evaluate(const FreeSeries& s, const OpTuple& x, int max_total_degree,
                    double tol) {
    check_same_alphabets(s, x.n());
    const int big_rows = s.coeff_rows() * x.dim_h();
    const int big_cols = s.coeff_cols() * x.dim_h();

    // Group terms by total degree once.
    std::map<int, std::vector<const std::pair<const MultiWord, Matrix>*>> by_degree;
    for (const auto& term : s.terms()) {
        int q = term.first.total_degree();
        if (q <= max_total_degree) by_degree[q].push_back(&term);
    }

    EvalReport rep;
    rep.value = Matrix::Zero(big_rows, big_cols);
    rep.last_block_norm = 0.0;
    rep.degrees_used = 0;
    rep.reached_tol = false;

    int max_q = std::min(max_total_degree, s.max_total_degree());
    double prev_norm = 0.0;
    int growth_streak = 0;
    for (int q = 0; q <= max_q; ++q) {
        Matrix block = Matrix::Zero(big_rows, big_cols);
        auto it = by_degree.find(q);
        if (it != by_degree.end())
            for (const auto* term : it->second)
                block += kron(term->second, x.multiword_product(term->first));
        rep.value += block;
        double bn = operator_norm(block);
        rep.degrees_used = q;
        if (q >= 1 && bn > prev_norm && bn > tol) {
            if (++growth_streak >= 5)
                throw Error(ErrorCode::Diverging,
                            "homogeneous blocks grew for five consecutive degrees "
                            "(last norm " + std::to_string(bn) + ")");
        } else {
            growth_streak = 0;
        }
        // Two consecutive sub-tol blocks end the summation; one alone could
        // be a parity gap in the support.
        if (tol > 0.0 && q >= 1 && bn < tol && prev_norm < tol) {
            rep.last_block_norm = bn;
            rep.reached_tol = true;
            return rep;
        }
        prev_norm = bn;
        rep.last_block_norm = bn;
    }
    // Ran out of stored data: everything further is zero by construction.
    if (max_q < max_total_degree)
        rep.reached_tol = true;
    else
        rep.reached_tol = rep.last_block_norm < tol;
    return rep;
}

namespace {

// Model operators for every letter, built once per call.
std::vector<std::vector<Matrix>> model_rows(const TruncFock& fock) {
    std::vector<std::vector<Matrix>> rows;
    for (int i = 1; i <= fock.factors(); ++i) {
        std::vector<Matrix> row;
        for (int j = 1; j <= fock.n()[static_cast<std::size_t>(i - 1)]; ++j)
            row.push_back(creation_operator(fock, i, j, Side::Left));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix model_word_product(const std::vector<std::vector<Matrix>>& rows,
                          const MultiWord& mw, std::int64_t dim) {
    Matrix out = Matrix::Identity(dim, dim);
    for (std::size_t i = 0; i < mw.parts.size(); ++i)
        for (int letter : mw.parts[i])
            out = out * rows[i][static_cast<std::size_t>(letter - 1)];
    return out;
}

double radial_scale(const MultiWord& mw, const std::vector<double>& r_vec) {
    double c = 1.0;
    for (std::size_t i = 0; i < mw.parts.size(); ++i)
        c *= std::pow(r_vec[i], static_cast<double>(mw.parts[i].size()));
    return c;
}

void check_radii(const FreeSeries& s, const std::vector<double>& r_vec) {
    if (static_cast<int>(r_vec.size()) != s.factors())
        throw Error(ErrorCode::ShapeMismatch, "radius vector length mismatch");
    for (double r : r_vec)
        if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "radii must be >= 0");
}

bool within_caps(const MultiWord& mw, const TruncFock& fock) {
    for (std::size_t i = 0; i < mw.parts.size(); ++i)
        if (static_cast<int>(mw.parts[i].size()) > fock.caps()[i]) return false;
    return true;
}

} // namespace

Matrix evaluate_on_model(const FreeSeries& s, const TruncFock& fock,
                         const std::vector<double>& r_vec) {
    check_same_alphabets(s, fock.n());
    check_radii(s, r_vec);
    auto rows = model_rows(fock);
    Matrix out = Matrix::Zero(s.coeff_rows() * fock.dim(), s.coeff_cols() * fock.dim());
    for (const auto& [mw, coeff] : s.terms()) {
        if (!within_caps(mw, fock)) continue;  // the model word vanishes
        out += kron(coeff, radial_scale(mw, r_vec) * model_word_product(rows, mw, fock.dim()));
    }
    return out;
}

double model_norm(const FreeSeries& s, const TruncFock& fock,
                  const std::vector<double>& r_vec) {
    return operator_norm(evaluate_on_model(s, fock, r_vec));
}

std::vector<double> model_block_norms(const FreeSeries& s, const TruncFock& fock,
                                      const std::vector<double>& r_vec) {
    check_same_alphabets(s, fock.n());
    check_radii(s, r_vec);
    auto rows = model_rows(fock);
    std::vector<Matrix> blocks(static_cast<std::size_t>(s.max_total_degree()) + 1,
                               Matrix::Zero(s.coeff_rows() * fock.dim(),
                                            s.coeff_cols() * fock.dim()));
    for (const auto& [mw, coeff] : s.terms()) {
        if (!within_caps(mw, fock)) continue;
        blocks[static_cast<std::size_t>(mw.total_degree())] +=
            kron(coeff, radial_scale(mw, r_vec) * model_word_product(rows, mw, fock.dim()));
    }
    std::vector<double> norms;
    norms.reserve(blocks.size());
    for (const Matrix& b : blocks) norms.push_back(operator_norm(b));
    return norms;
}

double hadamard_radius(const FreeSeries& s, int max_total_degree) {
    int q_max = max_total_degree;
    int q_min = std::max(2, q_max / 2);
    auto norms = homogeneous_norms_by_multidegree(s);
    bool any = false;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [p, norm] : norms) {
        int q = 0;
        for (int pi : p) q += pi;
        if (q < q_min || q > q_max || norm <= 0.0) continue;
        // norm^{1/q} compared in log2 space to keep powers of two exact.
        worst = std::max(worst, std::log2(norm) / static_cast<double>(q));
        any = true;
    }
    if (!any) return std::numeric_limits<double>::infinity();
    return std::exp2(-worst);
}

AbelReport abel_bounded_on(const FreeSeries& s, const std::vector<double>& r_vec,
                           int max_total_degree) {
    check_radii(s, r_vec);
    AbelReport rep;
    rep.bounded = true;
    rep.bound = 0.0;

    // Scaled Gram norms ||r^{2p} sum A*A|| by multidegree; boundedness is a
    // tail property, so total degree zero stays out of the comparison.
    struct Entry {
        std::vector<int> p;
        int q;
        double value;
    };
    std::vector<Entry> entries;
    for (const auto& [p, norm] : homogeneous_norms_by_multidegree(s)) {
        int q = 0;
        double scale = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            q += p[i];
            scale *= std::pow(r_vec[i], 2.0 * p[i]);
        }
        if (q < 1 || q > max_total_degree) continue;
        entries.push_back({p, q, scale * norm * norm});
    }
    if (entries.empty()) return rep;

    for (const Entry& e : entries) rep.bound = std::max(rep.bound, e.value);

    // The upper half of the degree window must not exceed the lower half's
    // maximum; growth across the window is the divergence witness.
    int half = std::max(1, max_total_degree / 2);
    double lower_max = 0.0;
    for (const Entry& e : entries)
        if (e.q <= half) lower_max = std::max(lower_max, e.value);
    const Entry* offender = nullptr;
    for (const Entry& e : entries) {
        if (e.q > half && e.value > lower_max * (1.0 + 1e-9)) {
            if (!offender || e.value > offender->value) offender = &e;
        }
    }
    if (offender) {
        rep.bounded = false;
        rep.offending_multidegree = offender->p;
    }
    return rep;
}

CauchyReport cauchy_check(const FreeSeries& s, const std::vector<double>& r_vec,
                          const TruncFock& fock, double slack) {
    check_radii(s, r_vec);
    for (double r : r_vec)
        if (r <= 0.0 || r >= 1.0)
            throw Error(ErrorCode::InvalidArgument, "radii must lie in (0, 1)");
    CauchyReport rep;
    rep.model_norm = model_norm(s, fock, r_vec);
    rep.pass = true;
    for (const auto& [p, norm] : homogeneous_norms_by_multidegree(s)) {
        double denom = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            denom *= std::pow(r_vec[i], static_cast<double>(p[i]));
        CauchyEntry entry;
        entry.p_vec = p;
        entry.lhs = norm;
        entry.rhs = (1.0 + slack) * rep.model_norm / denom;
        entry.pass = entry.lhs <= entry.rhs;
        rep.pass = rep.pass && entry.pass;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

FreeSeries free_partial_derivative(const FreeSeries& s, int factor, int letter) {
    if (factor < 1 || factor > s.factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    if (letter < 1 || letter > s.n()[static_cast<std::size_t>(factor - 1)])
        throw Error(ErrorCode::IndexOutOfRange, "letter " + std::to_string(letter));
    FreeSeries out(s.n(), s.coeff_rows(), s.coeff_cols());
    out.mark_truncated_tail(s.truncated_tail());
    for (const auto& [mw, coeff] : s.terms()) {
        const Word& w = mw.parts[static_cast<std::size_t>(factor - 1)];
        for (std::size_t t = 0; t < w.size(); ++t) {
            if (w[t] != letter) continue;
            MultiWord reduced = mw;
            Word& rw = reduced.parts[static_cast<std::size_t>(factor - 1)];
            rw.erase(rw.begin() + static_cast<std::ptrdiff_t>(t));
            out.add(reduced, coeff);
        }
    }
    return out;
}

FreeSeries multiply(const FreeSeries& a, const FreeSeries& b, int max_total_degree) {
    check_same_alphabets(b, a.n());
    int rows, cols;
    enum class Mode { ScalarLeft, ScalarRight, MatrixProduct } mode;
    if (a.coeff_rows() == 1 && a.coeff_cols() == 1) {
        rows = b.coeff_rows();
        cols = b.coeff_cols();
        mode = Mode::ScalarLeft;
    } else if (b.coeff_rows() == 1 && b.coeff_cols() == 1) {
        rows = a.coeff_rows();
        cols = a.coeff_cols();
        mode = Mode::ScalarRight;
    } else if (a.coeff_cols() == b.coeff_rows()) {
        rows = a.coeff_rows();
        cols = b.coeff_cols();
        mode = Mode::MatrixProduct;
    } else {
        throw Error(ErrorCode::ShapeMismatch, "coefficient shapes not composable");
    }

    FreeSeries out(a.n(), rows, cols);
    bool dropped = false;
    for (const auto& [mwa, ca] : a.terms()) {
        for (const auto& [mwb, cb] : b.terms()) {
            if (mwa.total_degree() + mwb.total_degree() > max_total_degree) {
                dropped = true;
                continue;
            }
            Matrix c;
            switch (mode) {
                case Mode::ScalarLeft: c = ca(0, 0) * cb; break;
                case Mode::ScalarRight: c = cb(0, 0) * ca; break;
                case Mode::MatrixProduct: c = ca * cb; break;
            }
            out.add(concat(mwa, mwb), c);
        }
    }
    out.mark_truncated_tail(a.truncated_tail() || b.truncated_tail() || dropped);
    return out;
}

FreeSeries compose(const FreeSeries& f, const std::vector<std::vector<FreeSeries>>& g,
                   int max_total_degree) {
    if (static_cast<int>(g.size()) != f.factors())
        throw Error(ErrorCode::ShapeMismatch, "substitution family has wrong factor count");
    for (int i = 0; i < f.factors(); ++i)
        if (static_cast<int>(g[static_cast<std::size_t>(i)].size()) !=
            f.n()[static_cast<std::size_t>(i)])
            throw Error(ErrorCode::ShapeMismatch,
                        "substitution row " + std::to_string(i + 1) + " has wrong length");

    const std::vector<int>& target = g[0][0].n();
    bool inner_truncated = false;
    bool inner_constant = false;
    for (const auto& row : g) {
        for (const FreeSeries& gij : row) {
            check_same_alphabets(gij, target);
            if (gij.coeff_rows() != 1 || gij.coeff_cols() != 1)
                throw Error(ErrorCode::ShapeMismatch,
                            "substitution series must have scalar coefficients");
            inner_truncated = inner_truncated || gij.truncated_tail();
            if (std::abs(gij.coeff_or_zero(gij.unit())(0, 0)) > 0.0) inner_constant = true;
        }
    }
    if (f.truncated_tail() && inner_constant)
        throw Error(ErrorCode::ConstantTermAmbiguity,
                    "outer series has an unstored tail and the inner family does not "
                    "vanish at the origin; constant-term regrouping would need it");

    FreeSeries out(target, f.coeff_rows(), f.coeff_cols());
    bool dropped = false;
    for (const auto& [mw, coeff] : f.terms()) {
        // With a vanishing inner constant term each outer degree only feeds
        // target degrees at least as large, so deep terms cannot contribute.
        if (!inner_constant && mw.total_degree() > max_total_degree) {
            dropped = true;
            continue;
        }
        FreeSeries product = FreeSeries::scalar_series(target);
        product.set(product.unit(), Complex(1.0, 0.0));
        for (std::size_t i = 0; i < mw.parts.size(); ++i)
            for (int letter : mw.parts[i])
                product = multiply(product, g[i][static_cast<std::size_t>(letter - 1)],
                                   max_total_degree);
        dropped = dropped || product.truncated_tail();
        for (const auto& [mwp, c] : product.terms()) out.add(mwp, c(0, 0) * coeff);
    }
    out.mark_truncated_tail(f.truncated_tail() || inner_truncated || dropped);
    return out;
}

SchwarzReport schwarz_margin(const FreeSeries& f, const OpTuple& x, const TruncFock& fock,
                             double slack, double gauge_tol) {
    if (operator_norm(f.coeff_or_zero(f.unit())) > 0.0)
        throw Error(ErrorCode::ZeroConstantTermViolated,
                    "series has a nonzero constant term");
    SchwarzReport rep;
    rep.value_norm = operator_norm(evaluate(f, x, f.max_total_degree(), 0.0).value);
    rep.gauge = minkowski(x, gauge_tol);
    std::vector<double> r(static_cast<std::size_t>(f.factors()), 0.999);
    rep.sup_estimate = model_norm(f, fock, r);
    rep.bound = (1.0 + slack) * rep.gauge * rep.sup_estimate;
    rep.pass = rep.value_norm <= rep.bound + 1e-15;

    Matrix row_sum = Matrix::Zero(x.dim_h(), x.dim_h());
    for (int i = 1; i <= x.factors(); ++i)
        row_sum += cp_map_apply(x.row(i), Matrix::Identity(x.dim_h(), x.dim_h()));
    rep.x_row_sum_norm = std::sqrt(operator_norm(row_sum));
    return rep;
}

} // namespace polyball
