#include "polyball/autgroup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "polyball/errors.hpp"

namespace polyball {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kFactorTol = 1e-6;
constexpr double kPointCheckTol = 1e-8;
constexpr std::uint64_t kPointCheckSeed = 0x7c3a1d5ef02b91ULL;

std::vector<int> identity_perm(int k) {
    std::vector<int> s(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) s[static_cast<size_t>(i)] = i + 1;
    return s;
}

Matrix polar_unitary(const Matrix& b) {
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

std::vector<Vector> zero_point(const std::vector<int>& n_vec) {
    std::vector<Vector> z;
    z.reserve(n_vec.size());
    for (int n : n_vec) z.push_back(Vector::Zero(n));
    return z;
}

} // namespace

BallPoint::BallPoint(Vector lambda) : lambda_(std::move(lambda)) {
    const double nsq = lambda_.squaredNorm();
    if (!(1.0 - nsq > 1e-12)) {
        throw Error(ErrorCode::InvalidArgument,
                    "Moebius center must lie strictly inside the unit ball");
    }
    delta_ = std::sqrt(1.0 - nsq);
    const int n = static_cast<int>(lambda_.size());
    delta_star_ = Matrix::Identity(n, n);
    if (nsq > 0.0) {
        // I - lambda* lambda is the identity minus a rank-one piece; its root
        // shifts the lambda* direction eigenvalue from 1 to delta.
        delta_star_ += ((delta_ - 1.0) / nsq)
            * (lambda_.conjugate() * lambda_.transpose());
    }
}

BallPoint BallPoint::origin(int n) { return BallPoint(Vector::Zero(n)); }

std::vector<Matrix> moebius_apply(const BallPoint& lp, const std::vector<Matrix>& y_row,
                                  double cond_limit) {
    const int n = lp.n();
    if (static_cast<int>(y_row.size()) != n) {
        throw Error(ErrorCode::ShapeMismatch, "row length does not match the center");
    }
    const Eigen::Index d = y_row[0].rows();
    Matrix m = Matrix::Zero(d, d);
    for (int j = 0; j < n; ++j) {
        if (y_row[static_cast<size_t>(j)].rows() != d || y_row[static_cast<size_t>(j)].cols() != d) {
            throw Error(ErrorCode::ShapeMismatch, "row entries must be square of equal size");
        }
        m += std::conj(lp.lambda()(j)) * y_row[static_cast<size_t>(j)];
    }
    const Matrix a = Matrix::Identity(d, d) - m;
    Eigen::PartialPivLU<Matrix> lu(a);
    if (!(lu.rcond() > 1.0 / cond_limit)) {
        throw Error(ErrorCode::ResolventSingular,
                    "I - sum conj(lambda_j) Y_j is numerically singular");
    }
    std::vector<Matrix> out(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        Matrix b = Matrix::Zero(d, d);
        for (int t = 0; t < n; ++t) {
            b += y_row[static_cast<size_t>(t)] * lp.delta_star()(t, j);
        }
        out[static_cast<size_t>(j)] = lp.lambda()(j) * Matrix::Identity(d, d)
            - lp.delta() * lu.solve(b);
    }
    return out;
}

Vector moebius_apply_scalar(const BallPoint& lp, const Vector& z) {
    const int n = lp.n();
    if (static_cast<int>(z.size()) != n) {
        throw Error(ErrorCode::ShapeMismatch, "point length does not match the center");
    }
    // Eigen's dot conjugates its left argument, so this is 1 - sum conj(lambda_t) z_t.
    const Complex denom = Complex(1.0, 0.0) - lp.lambda().dot(z);
    if (std::abs(denom) < 1e-12) {
        throw Error(ErrorCode::ResolventSingular, "Moebius denominator vanished");
    }
    Vector out(n);
    for (int j = 0; j < n; ++j) {
        Complex b(0.0, 0.0);
        for (int t = 0; t < n; ++t) b += z(t) * lp.delta_star()(t, j);
        out(j) = lp.lambda()(j) - lp.delta() * b / denom;
    }
    return out;
}

Automorphism::Automorphism(std::vector<int> sigma, std::vector<Matrix> u,
                           std::vector<BallPoint> lambda)
    : sigma_(std::move(sigma)), u_(std::move(u)), lambda_(std::move(lambda)) {
    const int k = static_cast<int>(lambda_.size());
    if (static_cast<int>(sigma_.size()) != k || static_cast<int>(u_.size()) != k || k == 0) {
        throw Error(ErrorCode::ShapeMismatch, "triple parts must agree on the factor count");
    }
    n_.reserve(static_cast<size_t>(k));
    for (const BallPoint& lp : lambda_) n_.push_back(lp.n());

    std::vector<bool> seen(static_cast<size_t>(k), false);
    for (int i = 1; i <= k; ++i) {
        const int s = sigma_[static_cast<size_t>(i - 1)];
        if (s < 1 || s > k || seen[static_cast<size_t>(s - 1)]) {
            throw Error(ErrorCode::InvalidArgument, "sigma is not a permutation of 1..k");
        }
        seen[static_cast<size_t>(s - 1)] = true;
        if (n_[static_cast<size_t>(s - 1)] != n_[static_cast<size_t>(i - 1)]) {
            throw Error(ErrorCode::InvalidArgument,
                        "sigma must map factors to factors of equal alphabet size");
        }
    }
    for (int i = 0; i < k; ++i) {
        const Matrix& ui = u_[static_cast<size_t>(i)];
        const int ni = n_[static_cast<size_t>(i)];
        if (ui.rows() != ni || ui.cols() != ni) {
            throw Error(ErrorCode::ShapeMismatch, "U_i must be n_i x n_i");
        }
        if (operator_norm(ui.adjoint() * ui - Matrix::Identity(ni, ni)) > kUnitaryTol) {
            throw Error(ErrorCode::InvalidArgument, "U_i is not unitary");
        }
    }
}

Automorphism Automorphism::identity(const std::vector<int>& n_vec) {
    std::vector<Matrix> u;
    std::vector<BallPoint> lambda;
    for (int n : n_vec) {
        u.push_back(-Matrix::Identity(n, n));
        lambda.push_back(BallPoint::origin(n));
    }
    return Automorphism(identity_perm(static_cast<int>(n_vec.size())), std::move(u),
                        std::move(lambda));
}

Automorphism Automorphism::moebius(std::vector<BallPoint> lambda) {
    const int k = static_cast<int>(lambda.size());
    std::vector<Matrix> u;
    for (const BallPoint& lp : lambda) u.push_back(Matrix::Identity(lp.n(), lp.n()));
    return Automorphism(identity_perm(k), std::move(u), std::move(lambda));
}

const Matrix& Automorphism::u(int factor) const {
    return u_[static_cast<size_t>(factor - 1)];
}

const BallPoint& Automorphism::center(int factor) const {
    return lambda_[static_cast<size_t>(factor - 1)];
}

OpTuple apply(const Automorphism& a, const OpTuple& x) {
    if (a.n() != x.n()) {
        throw Error(ErrorCode::ShapeMismatch, "automorphism and tuple shapes differ");
    }
    const int k = a.factors();
    std::vector<std::vector<Matrix>> staged(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const std::vector<Matrix> w = moebius_apply(a.center(i), x.row(i));
        const int ni = a.n()[static_cast<size_t>(i - 1)];
        std::vector<Matrix> v(static_cast<size_t>(ni));
        for (int q = 0; q < ni; ++q) {
            Matrix acc = Matrix::Zero(x.dim_h(), x.dim_h());
            for (int m = 0; m < ni; ++m) acc += w[static_cast<size_t>(m)] * a.u(i)(m, q);
            v[static_cast<size_t>(q)] = std::move(acc);
        }
        staged[static_cast<size_t>(i - 1)] = std::move(v);
    }
    std::vector<std::vector<Matrix>> out(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        out[static_cast<size_t>(i - 1)] = std::move(staged[static_cast<size_t>(a.sigma()[static_cast<size_t>(i - 1)] - 1)]);
    }
    // Each image row is a function of a single row of x, so cross-commutation
    // is inherited from the input tuple; skip the O(dim^3) re-check.
    return OpTuple::trusted(x.n(), x.dim_h(), std::move(out));
}

std::vector<Vector> apply_scalar(const Automorphism& a, const std::vector<Vector>& z) {
    const int k = a.factors();
    if (static_cast<int>(z.size()) != k) {
        throw Error(ErrorCode::ShapeMismatch, "point has the wrong factor count");
    }
    std::vector<Vector> staged(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const Vector w = moebius_apply_scalar(a.center(i), z[static_cast<size_t>(i - 1)]);
        staged[static_cast<size_t>(i - 1)] = a.u(i).transpose() * w;
    }
    std::vector<Vector> out(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        out[static_cast<size_t>(i - 1)] = staged[static_cast<size_t>(a.sigma()[static_cast<size_t>(i - 1)] - 1)];
    }
    return out;
}

std::vector<Vector> inverse_point(const Automorphism& a, const std::vector<Vector>& w) {
    const int k = a.factors();
    if (static_cast<int>(w.size()) != k) {
        throw Error(ErrorCode::ShapeMismatch, "point has the wrong factor count");
    }
    // Invert each stage: undo the permutation, the unitaries, then the
    // involutive Moebius factors.
    std::vector<int> sigma_inv(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) sigma_inv[static_cast<size_t>(a.sigma()[static_cast<size_t>(i - 1)] - 1)] = i;
    std::vector<Vector> out(static_cast<size_t>(k));
    for (int j = 1; j <= k; ++j) {
        const Vector& r = w[static_cast<size_t>(sigma_inv[static_cast<size_t>(j - 1)] - 1)];
        const Vector m = a.u(j).conjugate() * r;
        out[static_cast<size_t>(j - 1)] = moebius_apply_scalar(a.center(j), m);
    }
    return out;
}

std::vector<std::vector<Matrix>> apply_to_model(const Automorphism& a, const TruncFock& fock,
                                                double r) {
    const OpTuple model = OpTuple::from_model(fock).scaled(Complex(r, 0.0));
    const OpTuple image = apply(a, model);
    std::vector<std::vector<Matrix>> rows;
    rows.reserve(static_cast<size_t>(image.factors()));
    for (int i = 1; i <= image.factors(); ++i) rows.push_back(image.row(i));
    return rows;
}

double boundary_row_isometry_residual(const std::vector<std::vector<Matrix>>& rows,
                                      const TruncFock& fock, int margin) {
    if (margin < 0) margin = fock.default_interior_margin();
    const Matrix p = fock.interior_projection(margin);
    double worst = 0.0;
    for (const std::vector<Matrix>& row : rows) {
        const int n = static_cast<int>(row.size());
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                Matrix g = row[static_cast<size_t>(j)].adjoint() * row[static_cast<size_t>(l)];
                if (j == l) g -= Matrix::Identity(g.rows(), g.cols());
                worst = std::max(worst, operator_norm(p * g * p));
            }
        }
    }
    return worst;
}

LinearFactorization factor_linear_part(const Matrix& l, const std::vector<int>& n_vec,
                                       double tol) {
    const int k = static_cast<int>(n_vec.size());
    std::vector<int> off(static_cast<size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i) off[static_cast<size_t>(i) + 1] = off[static_cast<size_t>(i)] + n_vec[static_cast<size_t>(i)];
    if (l.rows() != off[static_cast<size_t>(k)] || l.cols() != off[static_cast<size_t>(k)]) {
        throw Error(ErrorCode::ShapeMismatch, "linear part has the wrong size");
    }

    LinearFactorization fac;
    fac.sigma.assign(static_cast<size_t>(k), 0);
    fac.blocks.resize(static_cast<size_t>(k));
    std::vector<bool> used(static_cast<size_t>(k), false);
    for (int i = 0; i < k; ++i) {
        int found = -1;
        for (int p = 0; p < k; ++p) {
            const double block_norm = l.block(off[static_cast<size_t>(p)], off[static_cast<size_t>(i)],
                                              n_vec[static_cast<size_t>(p)], n_vec[static_cast<size_t>(i)]).norm();
            if (block_norm <= tol) continue;
            if (found >= 0) {
                throw Error(ErrorCode::FactorizationFailed,
                            "two input factors feed one output factor");
            }
            found = p;
        }
        if (found < 0) {
            throw Error(ErrorCode::FactorizationFailed, "output factor receives no mass");
        }
        if (n_vec[static_cast<size_t>(found)] != n_vec[static_cast<size_t>(i)] || used[static_cast<size_t>(found)]) {
            throw Error(ErrorCode::FactorizationFailed,
                        "block pattern is not a size-preserving permutation");
        }
        const Matrix b = l.block(off[static_cast<size_t>(found)], off[static_cast<size_t>(i)],
                                 n_vec[static_cast<size_t>(found)], n_vec[static_cast<size_t>(i)]);
        if (operator_norm(b.adjoint() * b - Matrix::Identity(b.cols(), b.cols())) > tol) {
            throw Error(ErrorCode::FactorizationFailed, "diagonal block is not unitary");
        }
        // Everything outside the selected block must vanish within tol;
        // automorphism linear parts carry no freedom beyond permuted
        // unitary blocks.
        for (int p = 0; p < k; ++p) {
            if (p == found) continue;
            if (l.block(off[static_cast<size_t>(p)], off[static_cast<size_t>(i)],
                        n_vec[static_cast<size_t>(p)], n_vec[static_cast<size_t>(i)]).norm() > tol) {
                throw Error(ErrorCode::FactorizationFailed, "off-pattern mass in linear part");
            }
        }
        used[static_cast<size_t>(found)] = true;
        fac.sigma[static_cast<size_t>(i)] = found + 1;
        fac.blocks[static_cast<size_t>(i)] = b;
    }
    return fac;
}

namespace {

using PointMap = std::function<std::vector<Vector>(const std::vector<Vector>&)>;

std::vector<Vector> unflatten(const Vector& flat, const std::vector<int>& n_vec) {
    std::vector<Vector> z;
    z.reserve(n_vec.size());
    int pos = 0;
    for (int n : n_vec) {
        z.push_back(flat.segment(pos, n));
        pos += n;
    }
    return z;
}

Vector flatten(const std::vector<Vector>& z, int total) {
    Vector flat(total);
    int pos = 0;
    for (const Vector& part : z) {
        flat.segment(pos, part.size()) = part;
        pos += static_cast<int>(part.size());
    }
    return flat;
}

Matrix jacobian_at_zero(const PointMap& theta, const std::vector<int>& n_vec, double h) {
    int total = 0;
    for (int n : n_vec) total += n;
    Matrix j(total, total);
    for (int p = 0; p < total; ++p) {
        Vector e = Vector::Zero(total);
        e(p) = Complex(h, 0.0);
        const Vector plus = flatten(theta(unflatten(e, n_vec)), total);
        const Vector minus = flatten(theta(unflatten(-e, n_vec)), total);
        j.row(p) = ((plus - minus) / (2.0 * h)).transpose();
    }
    return j;
}

double point_distance(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
    return std::sqrt(s);
}

std::vector<Vector> random_interior_point(const std::vector<int>& n_vec, Rng& rng) {
    std::vector<Vector> z;
    z.reserve(n_vec.size());
    for (int n : n_vec) {
        Vector v(n);
        for (int c = 0; c < n; ++c) v(c) = rng.complex_gaussian();
        const double norm = v.norm();
        const double radius = rng.uniform(0.05, 0.6);
        z.push_back(norm > 0 ? Vector((radius / norm) * v) : Vector::Zero(n));
    }
    return z;
}

// Shared canonical-triple recovery: given an automorphism as a point map F
// and its zero preimage mu, the composite F . Psi_mu fixes the origin and is
// exactly linear, so central differences recover its matrix up to rounding.
Automorphism canonical_from_map(const PointMap& f, const std::vector<int>& n_vec,
                                const std::vector<Vector>& mu, double fd_step) {
    std::vector<BallPoint> centers;
    centers.reserve(mu.size());
    for (const Vector& m : mu) centers.push_back(BallPoint(m));
    const Automorphism pure = Automorphism::moebius(centers);

    const PointMap theta = [&](const std::vector<Vector>& z) {
        return f(apply_scalar(pure, z));
    };
    const Matrix j_h = jacobian_at_zero(theta, n_vec, fd_step);
    const Matrix j_half = jacobian_at_zero(theta, n_vec, fd_step / 2.0);
    if ((j_h - j_half).cwiseAbs().maxCoeff() > 1e-6) {
        throw Error(ErrorCode::FactorizationFailed,
                    "linear part did not stabilize under step refinement");
    }
    const Matrix j = (4.0 * j_half - j_h) / 3.0;

    const LinearFactorization fac = factor_linear_part(j, n_vec, kFactorTol);
    const int k = static_cast<int>(n_vec.size());
    std::vector<Matrix> u(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        u[static_cast<size_t>(fac.sigma[static_cast<size_t>(i)] - 1)] = polar_unitary(fac.blocks[static_cast<size_t>(i)]);
    }
    Automorphism result(fac.sigma, std::move(u), std::move(centers));

    Rng rng(kPointCheckSeed);
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<Vector> z = random_interior_point(n_vec, rng);
        if (point_distance(apply_scalar(result, z), f(z)) > kPointCheckTol) {
            throw Error(ErrorCode::FactorizationFailed,
                        "recovered triple disagrees with the composition at test points");
        }
    }
    return result;
}

} // namespace

Automorphism compose(const Automorphism& a1, const Automorphism& a2, double fd_step) {
    if (a1.n() != a2.n()) {
        throw Error(ErrorCode::ShapeMismatch, "composed automorphisms must share the shape");
    }
    const std::vector<int>& n_vec = a1.n();
    const PointMap f = [&](const std::vector<Vector>& z) {
        return apply_scalar(a1, apply_scalar(a2, z));
    };
    const std::vector<Vector> mu = inverse_point(a2, inverse_point(a1, zero_point(n_vec)));
    return canonical_from_map(f, n_vec, mu, fd_step);
}

Automorphism inverse(const Automorphism& a, double fd_step) {
    const std::vector<int>& n_vec = a.n();
    const PointMap f = [&](const std::vector<Vector>& w) { return inverse_point(a, w); };
    const std::vector<Vector> mu = apply_scalar(a, zero_point(n_vec));
    return canonical_from_map(f, n_vec, mu, fd_step);
}

double defect_identity_residual(const Automorphism& a, const OpTuple& x) {
    if (a.n() != x.n()) {
        throw Error(ErrorCode::ShapeMismatch, "automorphism and tuple shapes differ");
    }
    const int d = x.dim_h();
    const Matrix lhs = full_defect(apply(a, x));

    Matrix prod = Matrix::Identity(d, d);
    double delta_sq = 1.0;
    for (int i = 1; i <= a.factors(); ++i) {
        const Vector& lam = a.center(i).lambda();
        Matrix ai = Matrix::Identity(d, d);
        for (int j = 0; j < lam.size(); ++j) ai -= std::conj(lam(j)) * x.entry(i, j + 1);
        prod = prod * ai;
        delta_sq *= 1.0 - lam.squaredNorm();
    }
    Eigen::PartialPivLU<Matrix> lu(prod);
    if (!(lu.rcond() > 1e-12)) {
        throw Error(ErrorCode::ResolventSingular, "defect identity resolvent is singular");
    }
    const Matrix r = lu.solve(Matrix::Identity(d, d));
    const Matrix rhs = delta_sq * r * full_defect(x) * r.adjoint();
    return operator_norm(lhs - rhs);
}

double metric(const Automorphism& a1, const Automorphism& a2, const TruncFock& fock,
              const std::vector<double>& r_grid) {
    if (a1.n() != a2.n()) {
        throw Error(ErrorCode::ShapeMismatch, "metric arguments must share the shape");
    }
    int total = 0;
    for (int n : a1.n()) total += n;
    const Eigen::Index d = fock.dim();

    double sup = 0.0;
    for (double r : r_grid) {
        const std::vector<std::vector<Matrix>> rows1 = apply_to_model(a1, fock, r);
        const std::vector<std::vector<Matrix>> rows2 = apply_to_model(a2, fock, r);
        Matrix diff(d, static_cast<Eigen::Index>(total) * d);
        Eigen::Index col = 0;
        for (size_t i = 0; i < rows1.size(); ++i) {
            for (size_t j = 0; j < rows1[i].size(); ++j) {
                diff.middleCols(col, d) = rows1[i][j] - rows2[i][j];
                col += d;
            }
        }
        sup = std::max(sup, operator_norm(diff));
    }

    double centers = 0.0;
    for (int i = 1; i <= a1.factors(); ++i) {
        centers += (a1.center(i).lambda() - a2.center(i).lambda()).squaredNorm();
    }
    return sup + std::sqrt(centers);
}

long long component_count(const std::vector<int>& n_vec) {
    std::map<int, long long> mult;
    for (int n : n_vec) ++mult[n];
    long long count = 1;
    for (const auto& [size, m] : mult) {
        (void)size;
        for (long long t = 2; t <= m; ++t) count *= t;
    }
    return count;
}

ProjectiveUnitary projective_unitary(const Automorphism& a, const TruncFock& fock,
                                     int margin, double rank_tol) {
    if (margin < 0) margin = fock.default_interior_margin();
    const std::vector<std::vector<Matrix>> rows = apply_to_model(a, fock);
    const OpTuple psi(a.n(), static_cast<int>(fock.dim()), rows);
    const Matrix defect = full_defect(psi);

    // Rank one must hold where truncation is trusted; top degrees carry
    // junk of order one regardless of the automorphism.
    const std::vector<std::int64_t> interior = fock.interior_indices(margin);
    Matrix sub(static_cast<Eigen::Index>(interior.size()), static_cast<Eigen::Index>(interior.size()));
    for (size_t r = 0; r < interior.size(); ++r) {
        for (size_t c = 0; c < interior.size(); ++c) {
            sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                defect(interior[r], interior[c]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(sub));
    const Eigen::Index last = es.eigenvalues().size() - 1;
    const double top = es.eigenvalues()(last);
    const double second = last > 0 ? std::max(0.0, es.eigenvalues()(last - 1)) : 0.0;
    if (!(top > 0.0) || second / top > rank_tol) {
        throw Error(ErrorCode::DefectRankNotOne,
                    "interior defect is not numerically rank one");
    }

    const Matrix root = psd_sqrt(defect, 1e-8);
    Vector v0 = root * fock.vacuum();
    const double norm_sq = v0.squaredNorm();
    if (!(norm_sq > 0.0)) {
        throw Error(ErrorCode::DefectRankNotOne, "defect annihilates the vacuum");
    }
    v0 /= std::sqrt(norm_sq);

    const BerezinKernel kernel = berezin_kernel_with_basis(psi, fock, v0);
    ProjectiveUnitary pu;
    pu.u = kernel.matrix;
    pu.margin = margin;
    pu.defect_ratio = second / top;
    pu.defect_norm_sq = norm_sq;
    const Matrix p = fock.interior_projection(margin);
    pu.unitarity_residual =
        operator_norm(p * (pu.u.adjoint() * pu.u - Matrix::Identity(pu.u.rows(), pu.u.cols())) * p);
    return pu;
}

double conjugation_residual(const Matrix& u, const std::vector<std::vector<Matrix>>& rows,
                            const TruncFock& fock, int margin) {
    if (margin < 0) margin = fock.default_interior_margin();
    const Matrix p = fock.interior_projection(margin);
    double worst = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            const Matrix s = creation_operator(fock, static_cast<int>(i) + 1,
                                               static_cast<int>(j) + 1, Side::Left);
            worst = std::max(worst,
                             operator_norm(p * (u.adjoint() * s * u - rows[i][j]) * p));
        }
    }
    return worst;
}

std::vector<Vector> scalar_group_iso(const Automorphism& a, const std::vector<Vector>& z,
                                     const TruncFock& fock) {
    const BerezinKernel kz = berezin_kernel(OpTuple::scalar_point(z), fock);
    const std::vector<std::vector<Matrix>> rows = apply_to_model(a, fock);
    std::vector<Vector> out;
    out.reserve(rows.size());
    for (const std::vector<Matrix>& row : rows) {
        Vector w(static_cast<Eigen::Index>(row.size()));
        for (size_t j = 0; j < row.size(); ++j) {
            w(static_cast<Eigen::Index>(j)) = berezin_transform(kz, row[j])(0, 0);
        }
        out.push_back(std::move(w));
    }
    return out;
}

Automorphism random_automorphism(const std::vector<int>& n_vec, double center_norm,
                                 Rng& rng, const std::vector<int>& sigma) {
    const int k = static_cast<int>(n_vec.size());
    std::vector<int> perm = sigma.empty() ? identity_perm(k) : sigma;
    std::vector<Matrix> u;
    std::vector<BallPoint> centers;
    for (int i = 0; i < k; ++i) {
        const int n = n_vec[static_cast<size_t>(i)];
        u.push_back(random_unitary(n, rng));
        Vector lam(n);
        for (int c = 0; c < n; ++c) lam(c) = rng.complex_gaussian();
        const double norm = lam.norm();
        const double target = center_norm * rng.uniform(0.5, 1.0);
        centers.push_back(BallPoint(norm > 0 ? Vector((target / norm) * lam) : Vector::Zero(n)));
    }
    return Automorphism(std::move(perm), std::move(u), std::move(centers));
}

} // namespace polyball
