#include "polyball/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyball/errors.hpp"

namespace polyball {

OpTuple::OpTuple(TrustedTag, std::vector<int> row_lengths, int dim_h,
                 std::vector<std::vector<Matrix>> entries)
    : n_(std::move(row_lengths)), dim_h_(dim_h), x_(std::move(entries)) {
    if (n_.empty())
        throw Error(ErrorCode::ShapeMismatch, "tuple needs at least one row");
    if (dim_h_ < 1)
        throw Error(ErrorCode::ShapeMismatch, "ambient dimension must be >= 1");
    if (x_.size() != n_.size())
        throw Error(ErrorCode::ShapeMismatch, "row count does not match n_vec");
    for (std::size_t i = 0; i < n_.size(); ++i) {
        if (n_[i] < 1)
            throw Error(ErrorCode::ShapeMismatch, "row length must be >= 1");
        if (static_cast<int>(x_[i].size()) != n_[i])
            throw Error(ErrorCode::ShapeMismatch,
                        "row " + std::to_string(i + 1) + " has wrong length");
        for (const Matrix& m : x_[i])
            if (m.rows() != dim_h_ || m.cols() != dim_h_)
                throw Error(ErrorCode::ShapeMismatch,
                            "entry in row " + std::to_string(i + 1) +
                                " is not dimH x dimH");
    }
}

OpTuple::OpTuple(std::vector<int> row_lengths, int dim_h,
                 std::vector<std::vector<Matrix>> entries, double commutation_tol)
    : OpTuple(TrustedTag{}, std::move(row_lengths), dim_h, std::move(entries)) {
    // Entries of distinct rows must commute; the tolerance scales with the
    // norms so that scaling a valid tuple cannot invalidate it.
    for (std::size_t s = 0; s + 1 < x_.size(); ++s) {
        for (std::size_t t = s + 1; t < x_.size(); ++t) {
            for (std::size_t j = 0; j < x_[s].size(); ++j) {
                const Matrix& a = x_[s][j];
                double na = operator_norm(a);
                for (std::size_t p = 0; p < x_[t].size(); ++p) {
                    const Matrix& b = x_[t][p];
                    double scale = std::max(1.0, na * operator_norm(b));
                    double resid = operator_norm(a * b - b * a);
                    if (resid > commutation_tol * scale)
                        throw Error(ErrorCode::CommutationViolation,
                                    "entries (" + std::to_string(s + 1) + "," +
                                        std::to_string(j + 1) + ") and (" +
                                        std::to_string(t + 1) + "," + std::to_string(p + 1) +
                                        ") have commutator norm " + std::to_string(resid));
                }
            }
        }
    }
}

const Matrix& OpTuple::entry(int factor, int letter) const {
    if (factor < 1 || factor > factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    if (letter < 1 || letter > n_[static_cast<std::size_t>(factor - 1)])
        throw Error(ErrorCode::IndexOutOfRange, "letter " + std::to_string(letter));
    return x_[static_cast<std::size_t>(factor - 1)][static_cast<std::size_t>(letter - 1)];
}

const std::vector<Matrix>& OpTuple::row(int factor) const {
    if (factor < 1 || factor > factors())
        throw Error(ErrorCode::IndexOutOfRange, "factor " + std::to_string(factor));
    return x_[static_cast<std::size_t>(factor - 1)];
}

OpTuple OpTuple::scaled(Complex factor) const {
    std::vector<std::vector<Matrix>> entries = x_;
    for (auto& row : entries)
        for (Matrix& m : row) m *= factor;
    return trusted(n_, dim_h_, std::move(entries));
}

Matrix OpTuple::word_product(int factor, const Word& w) const {
    Matrix out = Matrix::Identity(dim_h_, dim_h_);
    for (int letter : w) out = out * entry(factor, letter);
    return out;
}

Matrix OpTuple::multiword_product(const MultiWord& mw) const {
    if (static_cast<int>(mw.parts.size()) != factors())
        throw Error(ErrorCode::ShapeMismatch, "multiword factor count mismatch");
    Matrix out = Matrix::Identity(dim_h_, dim_h_);
    for (int i = 1; i <= factors(); ++i)
        out = out * word_product(i, mw.parts[static_cast<std::size_t>(i - 1)]);
    return out;
}

OpTuple OpTuple::zero(std::vector<int> row_lengths, int dim_h) {
    std::vector<std::vector<Matrix>> entries;
    for (int ni : row_lengths)
        entries.emplace_back(static_cast<std::size_t>(ni), Matrix::Zero(dim_h, dim_h));
    return trusted(std::move(row_lengths), dim_h, std::move(entries));
}

OpTuple OpTuple::scalar_point(const std::vector<Vector>& z) {
    std::vector<int> row_lengths;
    std::vector<std::vector<Matrix>> entries;
    for (const Vector& zi : z) {
        if (zi.size() == 0)
            throw Error(ErrorCode::ShapeMismatch, "scalar point row is empty");
        row_lengths.push_back(static_cast<int>(zi.size()));
        std::vector<Matrix> row;
        for (Eigen::Index j = 0; j < zi.size(); ++j)
            row.push_back(Matrix::Constant(1, 1, zi[j]));
        entries.push_back(std::move(row));
    }
    return trusted(std::move(row_lengths), 1, std::move(entries));
}

OpTuple OpTuple::from_model(const TruncFock& fock) {
    std::vector<std::vector<Matrix>> entries;
    for (int i = 1; i <= fock.factors(); ++i) {
        std::vector<Matrix> row;
        for (int j = 1; j <= fock.n()[static_cast<std::size_t>(i - 1)]; ++j)
            row.push_back(creation_operator(fock, i, j, Side::Left));
        entries.push_back(std::move(row));
    }
    return trusted(fock.n(), static_cast<int>(fock.dim()), std::move(entries));
}

OpTuple OpTuple::trusted(std::vector<int> row_lengths, int dim_h,
                         std::vector<std::vector<Matrix>> entries) {
    return OpTuple(TrustedTag{}, std::move(row_lengths), dim_h, std::move(entries));
}

Matrix cp_map_apply(const std::vector<Matrix>& x_row, const Matrix& y) {
    if (x_row.empty())
        throw Error(ErrorCode::ShapeMismatch, "empty operator row");
    if (y.rows() != y.cols())
        throw Error(ErrorCode::ShapeMismatch, "argument of a cp map must be square");
    Matrix out = Matrix::Zero(y.rows(), y.cols());
    for (const Matrix& x : x_row) {
        if (x.rows() != y.rows() || x.cols() != y.cols())
            throw Error(ErrorCode::ShapeMismatch, "row entry shape mismatch");
        out += x * y * x.adjoint();
    }
    return out;
}

Matrix cp_map_power(const std::vector<Matrix>& x_row, int q, int dim_h) {
    Matrix y = Matrix::Identity(dim_h, dim_h);
    for (int t = 0; t < q; ++t) y = cp_map_apply(x_row, y);
    return y;
}

Matrix defect(const OpTuple& x, const std::vector<int>& p_vec) {
    if (static_cast<int>(p_vec.size()) != x.factors())
        throw Error(ErrorCode::ShapeMismatch, "p_vec length mismatch");
    for (int p : p_vec)
        if (p != 0 && p != 1)
            throw Error(ErrorCode::InvalidArgument, "p_vec entries must be 0 or 1");
    Matrix y = Matrix::Identity(x.dim_h(), x.dim_h());
    for (int i = 1; i <= x.factors(); ++i)
        if (p_vec[static_cast<std::size_t>(i - 1)] == 1) y -= cp_map_apply(x.row(i), y);
    return y;
}

Matrix full_defect(const OpTuple& x) {
    return defect(x, std::vector<int>(static_cast<std::size_t>(x.factors()), 1));
}

const char* membership_name(Membership m) {
    switch (m) {
        case Membership::Interior: return "Interior";
        case Membership::ClosedBoundary: return "ClosedBoundary";
        case Membership::Outside: return "Outside";
    }
    return "?";
}

const char* purity_name(Purity p) {
    switch (p) {
        case Purity::Pure: return "Pure";
        case Purity::NotPure: return "NotPure";
        case Purity::Undetermined: return "Undetermined";
    }
    return "?";
}

MembershipReport membership_report(const OpTuple& x, double tol) {
    int k = x.factors();
    MembershipReport rep;
    rep.tol = tol;
    rep.worst_defect_eigenvalue = 0.0;
    rep.defect_min_eigenvalue = 0.0;

    // All 2^k - 1 nonzero defect signs.
    std::vector<int> p(static_cast<std::size_t>(k), 0);
    bool first = true;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
        double ev = min_eigenvalue(defect(x, p));
        if (first || ev < rep.worst_defect_eigenvalue) rep.worst_defect_eigenvalue = ev;
        first = false;
        if (mask + 1 == (1u << k)) rep.defect_min_eigenvalue = ev;  // p = (1,...,1)
    }

    for (int i = 1; i <= x.factors(); ++i)
        rep.row_norms.push_back(
            operator_norm(cp_map_apply(x.row(i), Matrix::Identity(x.dim_h(), x.dim_h()))));

    if (rep.worst_defect_eigenvalue < -tol) {
        rep.cls = Membership::Outside;
        return rep;
    }
    bool strict_rows = true;
    for (double rn : rep.row_norms) strict_rows = strict_rows && rn < 1.0 - tol;
    if (rep.defect_min_eigenvalue > tol && strict_rows)
        rep.cls = Membership::Interior;
    else
        rep.cls = Membership::ClosedBoundary;
    return rep;
}

Membership membership(const OpTuple& x, double tol) {
    return membership_report(x, tol).cls;
}

PurityReport is_pure(const OpTuple& x, double tol, int max_power) {
    PurityReport rep;
    rep.overall = Purity::Pure;
    for (int i = 1; i <= x.factors(); ++i) {
        Matrix y = Matrix::Identity(x.dim_h(), x.dim_h());
        double prev = 1.0;
        double cur = 1.0;
        Purity verdict = Purity::NotPure;
        int used = 0;
        for (int q = 1; q <= max_power; ++q) {
            y = cp_map_apply(x.row(i), y);
            prev = cur;
            cur = operator_norm(y);
            used = q;
            if (cur < tol) {
                verdict = Purity::Pure;
                break;
            }
        }
        if (verdict != Purity::Pure) {
            // Still visibly shrinking at max_power: refuse to call it.
            verdict = (cur < prev * (1.0 - 1e-6)) ? Purity::Undetermined : Purity::NotPure;
        }
        rep.per_factor.push_back(verdict);
        rep.power_used.push_back(used);
        rep.final_norms.push_back(cur);
        if (verdict == Purity::NotPure)
            rep.overall = Purity::NotPure;
        else if (verdict == Purity::Undetermined && rep.overall == Purity::Pure)
            rep.overall = Purity::Undetermined;
    }
    return rep;
}

double minkowski(const OpTuple& x, double tol) {
    double max_row = 0.0;
    for (int i = 1; i <= x.factors(); ++i) {
        double rn = operator_norm(
            cp_map_apply(x.row(i), Matrix::Identity(x.dim_h(), x.dim_h())));
        max_row = std::max(max_row, std::sqrt(rn));
    }
    if (max_row == 0.0) return 0.0;

    // The interior test's eigenvalue fuzz caps how sharply the gauge scale
    // can be located, so tie it to the requested precision.
    double eig_tol = std::min(kMembershipTol, tol);

    double hi = 2.0 * max_row + 1.0;
    int guard = 0;
    while (membership(x.scaled(1.0 / hi), eig_tol) != Membership::Interior) {
        hi *= 2.0;
        if (++guard > 60)
            throw Error(ErrorCode::InvalidArgument,
                        "minkowski bracket failed to find an interior scale");
    }
    double lo = 0.0;
    // Bisect to a quarter of the requested tolerance so that downstream
    // homogeneity comparisons (which combine two calls) stay within tol.
    while (hi - lo > 0.25 * tol) {
        double mid = 0.5 * (lo + hi);
        if (membership(x.scaled(1.0 / mid), eig_tol) == Membership::Interior)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Split dim_h into k slot sizes, each >= 2, when its prime factorization
// allows it; empty result means no such split exists.
std::vector<int> slot_sizes(int dim_h, int k) {
    std::vector<int> primes;
    int m = dim_h;
    for (int p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    if (m > 1) primes.push_back(m);
    if (static_cast<int>(primes.size()) < k) return {};
    // Largest primes first, round-robin into k buckets.
    std::sort(primes.rbegin(), primes.rend());
    std::vector<int> sizes(static_cast<std::size_t>(k), 1);
    for (std::size_t t = 0; t < primes.size(); ++t)
        sizes[t % static_cast<std::size_t>(k)] *= primes[t];
    return sizes;
}

Matrix strictly_lower(const Matrix& a) {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 1; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) out(i, j) = a(i, j);
    return out;
}

// Sample one raw cross-commuting family before rescaling.
std::vector<std::vector<Matrix>> sample_family(const std::vector<int>& row_lengths,
                                               int dim_h, bool nilpotent, Rng& rng) {
    int k = static_cast<int>(row_lengths.size());
    std::vector<std::vector<Matrix>> entries(static_cast<std::size_t>(k));

    if (k == 1) {
        // No cross constraint: free matrices give the richest samples.
        for (int j = 0; j < row_lengths[0]; ++j) {
            Matrix a = random_matrix(dim_h, dim_h, rng);
            entries[0].push_back(nilpotent ? strictly_lower(a) : a);
        }
        return entries;
    }

    std::vector<int> sizes = slot_sizes(dim_h, k);
    if (!sizes.empty()) {
        // Kronecker slots: row i acts on its own tensor leg, so distinct rows
        // commute exactly while entries within a row stay noncommutative.
        for (int i = 0; i < k; ++i) {
            int d = sizes[static_cast<std::size_t>(i)];
            for (int j = 0; j < row_lengths[static_cast<std::size_t>(i)]; ++j) {
                Matrix a = random_matrix(d, d, rng);
                if (nilpotent) a = strictly_lower(a);
                Matrix big = Matrix::Identity(1, 1);
                for (int s = 0; s < k; ++s) {
                    int ds = sizes[static_cast<std::size_t>(s)];
                    big = kron(big, s == i ? a : Matrix(Matrix::Identity(ds, ds)));
                }
                entries[static_cast<std::size_t>(i)].push_back(std::move(big));
            }
        }
        if (nilpotent) {
            // Reorder the ambient basis by total slot weight so that every
            // entry becomes literally strictly block-lower-triangular.
            std::vector<std::int64_t> strides(static_cast<std::size_t>(k), 1);
            for (std::size_t i = static_cast<std::size_t>(k); i-- > 1;)
                strides[i - 1] = strides[i] * sizes[i];
            std::vector<int> order(static_cast<std::size_t>(dim_h));
            for (int idx = 0; idx < dim_h; ++idx) order[static_cast<std::size_t>(idx)] = idx;
            auto weight = [&](int idx) {
                int w = 0;
                for (int i = 0; i < k; ++i)
                    w += static_cast<int>((idx / strides[static_cast<std::size_t>(i)]) %
                                          sizes[static_cast<std::size_t>(i)]);
                return w;
            };
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return weight(a) < weight(b); });
            Matrix perm = Matrix::Zero(dim_h, dim_h);
            for (int r = 0; r < dim_h; ++r) perm(r, order[static_cast<std::size_t>(r)]) = 1.0;
            for (auto& row : entries)
                for (Matrix& m : row) m = perm * m * perm.adjoint();
        }
        return entries;
    }

    // Fallback: polynomials in one shared nilpotent commute across (and
    // within) rows; with a constant term when the tuple need not be nilpotent.
    Matrix nil = strictly_lower(random_matrix(dim_h, dim_h, rng));
    std::vector<Matrix> powers;
    powers.push_back(Matrix::Identity(dim_h, dim_h));
    for (int t = 1; t < dim_h; ++t) powers.push_back(powers.back() * nil);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < row_lengths[static_cast<std::size_t>(i)]; ++j) {
            Matrix m = Matrix::Zero(dim_h, dim_h);
            for (int t = nilpotent ? 1 : 0; t < dim_h; ++t)
                m += rng.complex_gaussian() * powers[static_cast<std::size_t>(t)];
            entries[static_cast<std::size_t>(i)].push_back(std::move(m));
        }
    }
    return entries;
}

} // namespace

OpTuple random_tuple(const std::vector<int>& row_lengths, int dim_h, double target_m,
                     bool nilpotent, Rng& rng) {
    if (target_m <= 0.0 || target_m >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "target_m must lie in (0, 1)");
    if (row_lengths.empty() || dim_h < 1)
        throw Error(ErrorCode::ShapeMismatch, "bad tuple shape");

    for (int attempt = 0; attempt < 32; ++attempt) {
        auto entries = sample_family(row_lengths, dim_h, nilpotent, rng);
        OpTuple raw(row_lengths, dim_h, std::move(entries));
        double m0 = minkowski(raw);
        if (m0 < 1e-12) continue;  // degenerate, draw again
        return raw.scaled(target_m / m0);
    }
    throw Error(ErrorCode::DegenerateSample,
                "could not sample a tuple with usable Minkowski gauge");
}

} // namespace polyball
