#include "polyball/berezin.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "polyball/errors.hpp"
#include "polyball/linalg.hpp"
#include "polyball/rng.hpp"
#include "polyball/series.hpp"
#include "polyball/tuples.hpp"

using namespace polyball;

namespace {

double mat_norm(const Matrix& a) { return operator_norm(a); }

Matrix identity(int d) { return Matrix::Identity(d, d); }

// Independent check of the dilation identity: sum over every multiword within
// caps of X_(beta) Delta X*_(beta), computed with no kernel machinery at all.
Matrix dilation_sum(const OpTuple& x, const TruncFock& fock) {
    const Matrix delta = full_defect(x);
    Matrix acc = Matrix::Zero(x.dim_h(), x.dim_h());
    for (std::int64_t b = 0; b < fock.dim(); ++b) {
        const Matrix xb = x.multiword_product(fock.multiword_at(b));
        acc += xb * delta * xb.adjoint();
    }
    return acc;
}

} // namespace

TEST_CASE("kernel of the zero tuple is the vacuum embedding") {
    TruncFock fock({2}, {3});
    const OpTuple x = OpTuple::zero({2}, 3);
    const BerezinKernel k = berezin_kernel(x, fock);

    CHECK(k.defect_rank == 3);
    CHECK(mat_norm(k.matrix.adjoint() * k.matrix - identity(3)) <= 1e-14);

    // All mass sits in the vacuum block: rows 0..rank-1.
    CHECK(k.matrix.bottomRows(k.matrix.rows() - 3).norm() <= 1e-14);

    CHECK(mat_norm(berezin_transform(k, identity(static_cast<int>(fock.dim()))) - identity(3))
          <= 1e-14);
    const Matrix s11 = creation_operator(fock, 1, 1, Side::Left);
    CHECK(mat_norm(berezin_transform(k, s11)) <= 1e-14);

    // Zero tail: the zero tuple has no mass beyond degree zero.
    for (double t : k.tail_bounds) CHECK(t == 0.0);
}

TEST_CASE("scalar-point kernel matches the explicit coefficient formula") {
    TruncFock fock({2, 1}, {6, 6});
    std::vector<Vector> z(2);
    z[0] = Vector(2);
    z[0] << Complex(0.3, 0.0), Complex(0.0, -0.2);
    z[1] = Vector(1);
    z[1] << Complex(0.35, 0.1);
    const OpTuple x = OpTuple::scalar_point(z);

    const BerezinKernel k = berezin_kernel_with_basis(x, fock, Matrix::Ones(1, 1));
    CHECK(k.defect_rank == 1);

    double norm1_sq = 0.0;
    std::vector<double> row_sq = {z[0].squaredNorm(), z[1].squaredNorm()};
    const double delta = (1.0 - row_sq[0]) * (1.0 - row_sq[1]);
    for (std::int64_t b = 0; b < fock.dim(); ++b) {
        const MultiWord mw = fock.multiword_at(b);
        Complex zbeta(1.0, 0.0);
        for (int i = 0; i < 2; ++i) {
            for (int letter : mw.parts[static_cast<size_t>(i)]) {
                zbeta *= z[static_cast<size_t>(i)](letter - 1);
            }
        }
        const Complex expected = std::sqrt(delta) * std::conj(zbeta);
        CHECK(std::abs(k.matrix(b, 0) - expected) <= 1e-14);
        norm1_sq += std::norm(expected);
    }

    // The kernel column of h = 1 is a unit vector up to the truncation tail.
    CHECK(std::abs(k.tail_bounds[0] - std::pow(std::sqrt(row_sq[0]), 7)) <= 1e-12);
    CHECK(std::abs(k.tail_bounds[1] - std::pow(std::sqrt(row_sq[1]), 7)) <= 1e-12);
    const double tail_sq = k.tail_bounds[0] * k.tail_bounds[0]
        + k.tail_bounds[1] * k.tail_bounds[1];
    CHECK(norm1_sq <= 1.0 + 1e-14);
    CHECK(1.0 - norm1_sq <= 2.0 * tail_sq + 1e-12);
}

TEST_CASE("nilpotent tuples: dilation sum oracle, exact isometry, intertwining") {
    struct Shape {
        std::vector<int> n;
        std::vector<int> caps;
        int dim_h;
    };
    // caps at least dim_h - 1 so every nonzero word product is within range.
    const std::vector<Shape> shapes = {
        {{2}, {4}, 5},
        {{1, 1}, {3, 3}, 4},
        {{2, 1}, {3, 3}, 4},
        {{3}, {3}, 4},
    };

    Rng rng(20250819);
    int done = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const Shape& sh = shapes[static_cast<size_t>(rep) % shapes.size()];
        Rng sub = rng.split(rep);
        const OpTuple x = random_tuple(sh.n, sh.dim_h, 0.6, true, sub);
        TruncFock fock(sh.n, sh.caps);

        // Oracle first: the dilation sum must already equal the identity.
        CHECK(mat_norm(dilation_sum(x, fock) - identity(sh.dim_h)) <= 1e-12);

        const BerezinKernel k = berezin_kernel(x, fock);
        CHECK(mat_norm(k.matrix.adjoint() * k.matrix - identity(sh.dim_h)) <= 1e-12);

        const Matrix eye_rank = identity(k.defect_rank);
        for (int i = 1; i <= x.factors(); ++i) {
            for (int j = 1; j <= sh.n[static_cast<size_t>(i - 1)]; ++j) {
                const Matrix lhs = k.matrix * x.entry(i, j).adjoint();
                const Matrix rhs =
                    kron(creation_operator(fock, i, j, Side::Left).adjoint(), eye_rank)
                    * k.matrix;
                CHECK(mat_norm(lhs - rhs) <= 1e-12);
            }
        }
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("transform reconstructs word products from model compressions") {
    const std::vector<int> n = {2, 1};
    const std::vector<int> caps = {3, 3};
    TruncFock fock(n, caps);
    Rng rng(555);
    const OpTuple x = random_tuple(n, 4, 0.7, true, rng);
    const BerezinKernel k = berezin_kernel(x, fock);
    const OpTuple s = OpTuple::from_model(fock);

    CHECK(mat_norm(berezin_transform(k, identity(static_cast<int>(fock.dim())))
                   - identity(4)) <= 1e-12);

    int checked = 0;
    for (std::int64_t a = 0; a < fock.dim(); ++a) {
        const MultiWord alpha = fock.multiword_at(a);
        if (alpha.total_degree() > 3) continue;
        for (std::int64_t b = 0; b < fock.dim(); ++b) {
            const MultiWord beta = fock.multiword_at(b);
            if (alpha.total_degree() + beta.total_degree() > 3) continue;
            const Matrix g = s.multiword_product(alpha) * s.multiword_product(beta).adjoint();
            const Matrix want = x.multiword_product(alpha) * x.multiword_product(beta).adjoint();
            CHECK(mat_norm(berezin_transform(k, g) - want) <= 1e-11);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("transform is positivity-preserving on random positive arguments") {
    const std::vector<int> n = {2};
    TruncFock fock(n, {4});
    Rng rng(808);
    const OpTuple x = random_tuple(n, 3, 0.8, true, rng);
    const BerezinKernel k = berezin_kernel(x, fock);

    for (int rep = 0; rep < 10; ++rep) {
        Rng sub = rng.split(100 + rep);
        const Matrix m = random_matrix(static_cast<int>(fock.dim()),
                                       static_cast<int>(fock.dim()), sub);
        const Matrix g = m.adjoint() * m;
        CHECK(min_eigenvalue(berezin_transform(k, g)) >= -1e-10);
    }
}

TEST_CASE("scalar transform agrees with series evaluation") {
    const std::vector<int> n = {2, 1};
    TruncFock fock(n, {6, 6});
    // Row norms near 0.13 keep the degree-7 truncation tail below 1e-12, so
    // the kernel route and the direct series agree to the asserted 1e-10.
    std::vector<Vector> z(2);
    z[0] = Vector(2);
    z[0] << Complex(0.05, 0.025), Complex(-0.025, 0.025);
    z[1] = Vector(1);
    z[1] << Complex(0.0, 0.05);
    const OpTuple x = OpTuple::scalar_point(z);
    const BerezinKernel k = berezin_kernel(x, fock);

    // Coordinates first.
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= n[static_cast<size_t>(i - 1)]; ++j) {
            const Matrix got =
                berezin_transform(k, creation_operator(fock, i, j, Side::Left));
            CHECK(std::abs(got(0, 0) - z[static_cast<size_t>(i - 1)](j - 1)) <= 1e-10);
        }
    }

    // Then a random polynomial with scalar coefficients, degree at most 3.
    Rng rng(99);
    FreeSeries p = FreeSeries::scalar_series(n);
    for (std::int64_t b = 0; b < fock.dim(); ++b) {
        const MultiWord mw = fock.multiword_at(b);
        if (mw.total_degree() > 3) continue;
        p.set(mw, Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
    }
    const Matrix p_model = evaluate_on_model(p, fock, {1.0, 1.0});
    const Matrix via_kernel = berezin_transform(k, p_model);
    const Matrix direct = evaluate(p, x, 10, 0.0).value;
    CHECK(std::abs(via_kernel(0, 0) - direct(0, 0)) <= 1e-10);
}

TEST_CASE("unitarity criterion separates the model tuple from proper contractions") {
    TruncFock fock({2}, {4});
    const OpTuple s = OpTuple::from_model(fock);
    const BerezinKernel ks = berezin_kernel(s, fock);
    CHECK(ks.defect_rank == 1);
    CHECK(kernel_is_unitary(ks, 1e-10, 1));
    // The model kernel is the identity in the multiword basis.
    CHECK(mat_norm(ks.matrix - Matrix::Identity(fock.dim(), fock.dim())) <= 1e-12);

    const OpTuple zero = OpTuple::zero({2}, 3);
    const BerezinKernel kz = berezin_kernel(zero, fock);
    CHECK_FALSE(kernel_is_unitary(kz, 1e-6, 1));
    const KernelUnitarityReport rep = kernel_unitarity_report(kz, 1);
    CHECK(rep.isometry_residual <= 1e-12);
    CHECK(rep.coisometry_residual >= 0.5);
}

TEST_CASE("kernel construction rejects outside tuples and zero defects") {
    TruncFock fock({1}, {5});
    std::vector<Vector> far(1);
    far[0] = Vector(1);
    far[0] << Complex(1.2, 0.0);
    CHECK_THROWS_WITH_AS(berezin_kernel(OpTuple::scalar_point(far), fock),
                         doctest::Contains("NotInClosedBall"), Error);

    std::vector<Vector> edge(1);
    edge[0] = Vector(1);
    edge[0] << Complex(1.0, 0.0);
    CHECK_THROWS_WITH_AS(berezin_kernel(OpTuple::scalar_point(edge), fock),
                         doctest::Contains("DegenerateSample"), Error);
}

TEST_CASE("implemented automorphism: identity kernel acts as the identity map") {
    TruncFock fock({2}, {3});
    const OpTuple s = OpTuple::from_model(fock);
    const BerezinKernel ks = berezin_kernel(s, fock);

    Rng rng(31337);
    const int d = static_cast<int>(fock.dim());
    const Matrix g = random_matrix(d, d, rng);
    const Matrix h = random_matrix(d, d, rng);
    const Matrix gamma_g = berezin_implemented_automorphism(ks, g, 1e-8, 1);
    const Matrix gamma_h = berezin_implemented_automorphism(ks, h, 1e-8, 1);
    const Matrix gamma_gh = berezin_implemented_automorphism(ks, g * h, 1e-8, 1);
    CHECK(mat_norm(gamma_g - g) <= 1e-10);
    CHECK(mat_norm(gamma_gh - gamma_g * gamma_h) <= 1e-10);

    // Margin 1 keeps actual interior degrees in play; the default margin at
    // caps 3 would shrink the checked block to the vacuum alone.
    const BerezinKernel kz = berezin_kernel(OpTuple::zero({2}, 3), fock);
    CHECK_THROWS_WITH_AS(berezin_implemented_automorphism(kz, Matrix::Identity(d, d), 1e-6, 1),
                         doctest::Contains("KernelNotUnitary"), Error);
}
