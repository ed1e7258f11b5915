// Release gate. Ten numbered criteria cover the Moebius involution, the
// defect transformation identity, Berezin exactness on nilpotent tuples, the
// convergence radius with its dichotomy, the coefficient and Schwarz bounds,
// the group law with rigidity, the projective representation, the metric
// topology, and the CLI contract. Every tolerance and wall-clock budget is
// pinned here; each criterion prints exactly one pass/fail line and the
// binary exits 0 only when all of them pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "polyball/autgroup.hpp"
#include "polyball/errors.hpp"
#include "polyball/series.hpp"

using namespace polyball;

namespace {

// Accumulates labeled sub-checks for one criterion; any violated bound or
// requirement flips the criterion to FAIL.
struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& text) {
        if (!detail.empty()) detail += ", ";
        detail += text;
    }

    void bound(const std::string& label, double value, double tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %.2e (tol %.0e)", value, tol);
        note(label + buf);
        if (!(value <= tol)) pass = false;
    }

    void require(const std::string& label, bool ok) {
        note(label + (ok ? ": ok" : ": VIOLATED"));
        if (!ok) pass = false;
    }
};

class Gate {
public:
    void run(int index, const char* name, double budget_s,
             const std::function<void(Outcome&)>& body) {
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.note(std::string("threw: ") + e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();
        if (secs >= budget_s) {
            out.pass = false;
            out.note("over budget");
        }
        all_pass_ = all_pass_ && out.pass;
        std::printf("[%s] %2d %-20s %s [%.1fs of %.0fs]\n", out.pass ? "PASS" : "FAIL",
                    index, name, out.detail.c_str(), secs, budget_s);
        std::fflush(stdout);
    }

    int exit_code() const { return all_pass_ ? 0 : 1; }

private:
    bool all_pass_ = true;
};

double tuple_distance(const OpTuple& a, const OpTuple& b) {
    double worst = 0.0;
    for (int i = 1; i <= a.factors(); ++i)
        for (int j = 1; j <= a.n()[static_cast<size_t>(i - 1)]; ++j)
            worst = std::max(worst, operator_norm(a.entry(i, j) - b.entry(i, j)));
    return worst;
}

double point_distance(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).norm());
    return worst;
}

Vector random_center(int n, double norm_cap, Rng& rng) {
    Vector v(n);
    for (int t = 0; t < n; ++t) v(t) = rng.complex_gaussian();
    const double target = norm_cap * rng.uniform(0.5, 1.0);
    return Vector(v * (target / v.norm()));
}

std::vector<Vector> random_point(const std::vector<int>& n_vec, Rng& rng) {
    std::vector<Vector> z;
    for (int ni : n_vec) z.push_back(random_center(ni, 0.3, rng));
    return z;
}

FreeSeries random_scalar_poly(const std::vector<int>& n_vec, int degree,
                              bool zero_constant, Rng& rng) {
    FreeSeries s = FreeSeries::scalar_series(n_vec);
    const std::vector<int> caps(n_vec.size(), degree);
    for (const MultiWord& mw : enumerate_multiwords(n_vec, caps)) {
        const int d = mw.total_degree();
        if (d > degree || (zero_constant && d == 0)) continue;
        s.set(mw, rng.complex_gaussian());
    }
    return s;
}

BallPoint scalar_ball_point(Complex v) {
    Vector c(1);
    c << v;
    return BallPoint(c);
}

// 1. Every Moebius involution undoes itself on Interior tuples.
void criterion_involution(Outcome& out) {
    const std::vector<std::vector<int>> shapes = {{1},    {2},    {3},       {1, 1},
                                                  {2, 1}, {2, 2}, {3, 1},    {1, 1, 1},
                                                  {2, 2, 1}, {3, 2, 1}};
    const std::vector<int> dims = {2, 3, 4, 3, 4, 3, 5, 2, 3, 2};
    Rng rng(41);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto& shape = shapes[static_cast<size_t>(rep) % shapes.size()];
        Rng tr = rng.split("tuple-" + std::to_string(rep));
        const double m = tr.uniform(0.3, 0.8);
        const OpTuple x =
            random_tuple(shape, dims[static_cast<size_t>(rep) % dims.size()], m, false, tr);
        Rng cr = rng.split("center-" + std::to_string(rep));
        std::vector<BallPoint> centers;
        for (int ni : shape) centers.emplace_back(random_center(ni, 0.6, cr));
        const Automorphism a = Automorphism::moebius(std::move(centers));
        worst = std::max(worst, tuple_distance(apply(a, apply(a, x)), x));
    }
    out.bound("worst of 100", worst, 1e-9);
}

// 2. The defect transforms by the resolvent conjugation with the scalar
// factor prod(1 - |lambda_i|^2); the k = 1 cases are written out by hand in
// the single-ball form so they do not lean on defect_identity_residual.
void criterion_defect_identity(Outcome& out) {
    const std::vector<std::vector<int>> shapes = {{2}, {3}, {1, 1}, {2, 1}, {2, 2}, {1, 1, 1}};
    const std::vector<int> dims = {4, 5, 3, 4, 3, 4};
    Rng rng(42);
    double worst_general = 0.0;
    double worst_single = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const auto& shape = shapes[static_cast<size_t>(rep) % shapes.size()];
        Rng tr = rng.split("tuple-" + std::to_string(rep));
        const double m = tr.uniform(0.35, 0.65);
        const OpTuple x =
            random_tuple(shape, dims[static_cast<size_t>(rep) % dims.size()], m, true, tr);
        Rng ar = rng.split("aut-" + std::to_string(rep));
        if (shape.size() == 1) {
            const Vector lam = random_center(shape[0], 0.5, ar);
            const Automorphism a = Automorphism::moebius({BallPoint(lam)});
            const OpTuple y = apply(a, x);
            const int d = x.dim_h();
            Matrix mix = Matrix::Zero(d, d);
            for (int j = 1; j <= shape[0]; ++j) mix += std::conj(lam(j - 1)) * x.entry(1, j);
            const Matrix r = Matrix(Matrix::Identity(d, d) - mix).inverse();
            const Matrix lhs = full_defect(y);
            const Matrix rhs =
                (1.0 - lam.squaredNorm()) * r * full_defect(x) * r.adjoint();
            worst_single = std::max(worst_single, operator_norm(lhs - rhs));
            worst_general = std::max(worst_general, defect_identity_residual(a, x));
        } else {
            std::vector<int> sigma;
            if (rep % 2 == 1 && shape == std::vector<int>{1, 1}) sigma = {2, 1};
            if (rep % 2 == 1 && shape == std::vector<int>{2, 2}) sigma = {2, 1};
            if (rep % 2 == 1 && shape == std::vector<int>{1, 1, 1}) sigma = {2, 3, 1};
            const Automorphism a = random_automorphism(shape, 0.4, ar, sigma);
            worst_general = std::max(worst_general, defect_identity_residual(a, x));
        }
    }
    out.bound("50 pairs", worst_general, 1e-9);
    out.bound("k=1 single-ball form", worst_single, 1e-9);
}

// 3. Berezin kernels of jointly nilpotent tuples are exact isometries that
// intertwine the rows, and the transform reconstructs X_(alpha) X*_(beta).
void criterion_berezin(Outcome& out) {
    struct Shape {
        std::vector<int> n;
        int dim_h;
        std::vector<int> caps;
        bool reconstruct;
    };
    const std::vector<Shape> cases = {{{2}, 5, {4}, true},
                                      {{1, 1}, 4, {3, 3}, true},
                                      {{2, 1}, 4, {3, 3}, false}};
    Rng rng(43);
    double isometry = 0.0;
    double intertwine = 0.0;
    double reconstruct = 0.0;
    for (const Shape& c : cases) {
        const TruncFock fock(c.n, c.caps);
        const OpTuple s = OpTuple::from_model(fock);
        for (int rep = 0; rep < 5; ++rep) {
            Rng tr = rng.split("tuple-" + std::to_string(c.dim_h) + "-" + std::to_string(rep));
            const double m = tr.uniform(0.4, 0.6);
            const OpTuple x = random_tuple(c.n, c.dim_h, m, true, tr);
            const BerezinKernel k = berezin_kernel(x, fock);
            isometry = std::max(isometry, kernel_unitarity_report(k).isometry_residual);
            const Matrix eye = Matrix::Identity(k.defect_rank, k.defect_rank);
            for (int i = 1; i <= x.factors(); ++i)
                for (int j = 1; j <= c.n[static_cast<size_t>(i - 1)]; ++j) {
                    const Matrix lhs = k.matrix * x.entry(i, j).adjoint();
                    const Matrix rhs =
                        kron(creation_operator(fock, i, j, Side::Left).adjoint(), eye) *
                        k.matrix;
                    intertwine = std::max(intertwine, operator_norm(lhs - rhs));
                }
            if (!c.reconstruct || rep > 0) continue;
            std::vector<MultiWord> low;
            for (const MultiWord& mw :
                 enumerate_multiwords(c.n, std::vector<int>(c.n.size(), 3)))
                if (mw.total_degree() <= 3) low.push_back(mw);
            for (const MultiWord& alpha : low)
                for (const MultiWord& beta : low) {
                    const Matrix g =
                        s.multiword_product(alpha) * s.multiword_product(beta).adjoint();
                    const Matrix expect =
                        x.multiword_product(alpha) * x.multiword_product(beta).adjoint();
                    reconstruct = std::max(
                        reconstruct, operator_norm(berezin_transform(k, g) - expect));
                }
        }
    }
    out.bound("isometry", isometry, 1e-12);
    out.bound("intertwining", intertwine, 1e-12);
    out.bound("reconstruction deg<=3", reconstruct, 1e-11);
}

// 4. Convergence radius: the 1/2 and 1/sqrt(2) landmarks, then the
// block-norm dichotomy at 0.9 and 1.1 times the radius on truncated models.
void criterion_radius(Outcome& out) {
    FreeSeries geo = FreeSeries::scalar_series({1});
    double c = 1.0;
    for (int p = 0; p <= 40; ++p) {
        geo.set(MultiWord{{Word(static_cast<size_t>(p), 1)}}, Complex(c, 0.0));
        c *= 2.0;
    }
    geo.mark_truncated_tail(true);
    out.require("2^p series gamma == 0.5 exactly", hadamard_radius(geo, 40) == 0.5);

    auto all_ones_binary = [](int max_degree) {
        FreeSeries s = FreeSeries::scalar_series({2});
        for (const Word& w : enumerate_words(2, max_degree))
            s.set(MultiWord{{w}}, Complex(1.0, 0.0));
        s.mark_truncated_tail(true);
        return s;
    };
    const double root_half = 1.0 / std::sqrt(2.0);
    out.bound("|all-ones gamma - 1/sqrt 2|",
              std::abs(hadamard_radius(all_ones_binary(12), 12) - root_half), 1e-12);

    auto monotone = [](const std::vector<double>& blocks, bool increasing) {
        for (size_t d = 1; d + 1 < blocks.size(); ++d) {
            if (increasing && !(blocks[d + 1] > blocks[d])) return false;
            if (!increasing && !(blocks[d + 1] < blocks[d])) return false;
        }
        return blocks.size() > 2;
    };
    const TruncFock unary_fock({1}, {40});
    out.require("unary blocks shrink at 0.9 gamma",
                monotone(model_block_norms(geo, unary_fock, {0.45}), false));
    out.require("unary blocks grow at 1.1 gamma",
                monotone(model_block_norms(geo, unary_fock, {0.55}), true));
    const FreeSeries ones6 = all_ones_binary(6);
    const TruncFock binary_fock({2}, {6});
    out.require("binary blocks shrink at 0.9 gamma",
                monotone(model_block_norms(ones6, binary_fock, {0.9 * root_half}), false));
    out.require("binary blocks grow at 1.1 gamma",
                monotone(model_block_norms(ones6, binary_fock, {1.1 * root_half}), true));
}

// 5. Per-degree Gram norms obey the Cauchy bound against the model norm at
// caps = degree + 30 with 2% slack.
void criterion_coefficient_bound(Outcome& out) {
    Rng rng(45);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int degree = 3 + rep % 8;
        const TruncFock fock({1}, {degree + 30});
        Rng pr = rng.split("poly-" + std::to_string(rep));
        const FreeSeries poly = random_scalar_poly({1}, degree, false, pr);
        const CauchyReport rep_c = cauchy_check(poly, {0.6}, fock, 0.02);
        for (const CauchyEntry& e : rep_c.entries) worst = std::max(worst, e.lhs - e.rhs);
    }
    out.bound("worst Gram excess, 20 polynomials", std::max(0.0, worst), 1e-12);
}

// 6. Schwarz bound with 5% sup-norm slack on random zero-constant
// polynomials, then the classical disc equality case at the point 0.3,
// where the value, the gauge, and the sup norm are all exact.
void criterion_schwarz(Outcome& out) {
    Rng rng(46);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const bool unary = rep % 2 == 0;
        const std::vector<int> shape = unary ? std::vector<int>{2} : std::vector<int>{1, 1};
        const std::vector<int> caps = unary ? std::vector<int>{4} : std::vector<int>{8, 8};
        Rng pr = rng.split("poly-" + std::to_string(rep));
        const FreeSeries f = random_scalar_poly(shape, 3, true, pr);
        Rng tr = rng.split("tuple-" + std::to_string(rep));
        const double m = tr.uniform(0.3, 0.6);
        const OpTuple x = random_tuple(shape, 4, m, true, tr);
        const SchwarzReport sr = schwarz_margin(f, x, TruncFock(shape, caps), 0.05);
        worst = std::max(worst, sr.value_norm - sr.bound);
    }
    out.bound("worst bound excess, 50 polynomials", std::max(0.0, worst), 1e-12);

    const FreeSeries coord = FreeSeries::coordinate({1}, 1, 1);
    Vector z(1);
    z << Complex(0.3, 0.0);
    const OpTuple point = OpTuple::scalar_point({z});
    const double value = operator_norm(evaluate(coord, point, 1, 0.0).value);
    // On the disc the Minkowski gauge is the modulus itself.
    const double gauge = operator_norm(point.entry(1, 1));
    out.bound("classical |value - 0.3|", std::abs(value - 0.3), 1e-12);
    out.bound("classical |gauge - 0.3|", std::abs(gauge - 0.3), 1e-12);
}

// 7. Group law at scalar points: composition, inverse, associativity, with
// permutation parts exercised, plus the rigidity of linear parts.
void criterion_group_law(Outcome& out) {
    Rng rng(47);
    double worst = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<int> shape;
        std::vector<int> sig_a, sig_b, sig_c;
        switch (rep % 3) {
            case 0:
                shape = {2, 2};
                sig_a = {2, 1};
                sig_b = {2, 1};
                break;
            case 1:
                shape = {3};
                break;
            default:
                shape = {1, 1, 1};
                sig_a = {2, 3, 1};
                sig_b = {3, 1, 2};
                sig_c = {2, 1, 3};
                break;
        }
        Rng ar = rng.split("a-" + std::to_string(rep));
        Rng br = rng.split("b-" + std::to_string(rep));
        Rng cr = rng.split("c-" + std::to_string(rep));
        const Automorphism a = random_automorphism(shape, 0.25, ar, sig_a);
        const Automorphism b = random_automorphism(shape, 0.25, br, sig_b);
        const Automorphism c = random_automorphism(shape, 0.25, cr, sig_c);
        const Automorphism ab = compose(a, b);
        const Automorphism bc = compose(b, c);
        const Automorphism ab_c = compose(ab, c);
        const Automorphism a_bc = compose(a, bc);
        const Automorphism ia = inverse(a);
        Rng zr = rng.split("points-" + std::to_string(rep));
        for (int t = 0; t < 20; ++t) {
            const std::vector<Vector> z = random_point(shape, zr);
            worst = std::max(worst, point_distance(apply_scalar(ab, z),
                                                   apply_scalar(a, apply_scalar(b, z))));
            worst = std::max(worst,
                             point_distance(apply_scalar(ab_c, z), apply_scalar(a_bc, z)));
            worst = std::max(worst, point_distance(apply_scalar(ia, apply_scalar(a, z)), z));
        }
    }
    out.bound("compose/inverse/assoc at 20 points", worst, 1e-7);

    // Linear parts are exactly permuted block unitaries; off-pattern mass or
    // a non-unitary block must be rejected.
    Rng ur = rng.split("rigidity");
    const Automorphism swapper = random_automorphism({2, 2}, 0.0, ur, {2, 1});
    Matrix l = Matrix::Zero(4, 4);
    l.block(0, 2, 2, 2) = swapper.u(1);
    l.block(2, 0, 2, 2) = swapper.u(2);
    bool accepts_valid = true;
    bool rejects_off_pattern = false;
    bool rejects_non_unitary = false;
    try {
        factor_linear_part(l, {2, 2});
    } catch (const Error&) {
        accepts_valid = false;
    }
    Matrix off = l;
    off(0, 0) = 1e-3;
    try {
        factor_linear_part(off, {2, 2});
    } catch (const Error& e) {
        rejects_off_pattern = e.code() == ErrorCode::FactorizationFailed;
    }
    Matrix stretched = l;
    stretched.block(0, 2, 2, 2) *= 1.001;
    try {
        factor_linear_part(stretched, {2, 2});
    } catch (const Error& e) {
        rejects_non_unitary = e.code() == ErrorCode::FactorizationFailed;
    }
    out.require("rigidity", accepts_valid && rejects_off_pattern && rejects_non_unitary);
}

// 8. Projective representation on the unary caps-30 model with margin 10:
// conjugation implements the boundary rows on the interior block, and the
// composition defect is a scalar of modulus one.
void criterion_projective(Outcome& out) {
    const TruncFock fock({1}, {30});
    const int margin = 10;

    const Automorphism a = Automorphism::moebius({scalar_ball_point(Complex(0.08, 0.0))});
    const ProjectiveUnitary pu = projective_unitary(a, fock, margin);
    out.bound("conjugation",
              conjugation_residual(pu.u, apply_to_model(a, fock), fock, margin), 1e-6);
    out.bound("unitarity", pu.unitarity_residual, 1e-6);

    const Automorphism a1 = Automorphism::moebius({scalar_ball_point(Complex(0.04, 0.0))});
    const Automorphism a2 =
        Automorphism::moebius({scalar_ball_point(Complex(-0.028, 0.02))});
    const Matrix u1 = projective_unitary(a1, fock, margin).u;
    const Matrix u2 = projective_unitary(a2, fock, margin).u;
    const Matrix u12 = projective_unitary(compose(a1, a2), fock, margin).u;
    const Matrix p = fock.interior_projection(margin);
    const Matrix c_mat = p * (u1 * u2 * u12.adjoint()) * p;
    const Complex c = c_mat.trace() / p.trace();
    out.bound("cocycle off scalar", operator_norm(c_mat - c * p), 1e-6);
    out.bound("cocycle ||c| - 1|", std::abs(std::abs(c) - 1.0), 1e-6);
}

// 9. Metric topology: component counts over ten alphabet patterns, metric
// decay under parameter convergence, and sigma-mismatch separation.
void criterion_metric(Outcome& out) {
    struct Pattern {
        std::vector<int> n;
        long long expect;
    };
    const std::vector<Pattern> patterns = {
        {{1}, 1},       {{2}, 1},          {{1, 1}, 2},    {{1, 2}, 1},
        {{2, 2}, 2},    {{2, 2, 2}, 6},    {{3, 3, 3}, 6}, {{1, 1, 2}, 2},
        {{1, 2, 3}, 1}, {{1, 1, 2, 2, 2}, 12}};
    bool counts_ok = true;
    for (const Pattern& p : patterns) counts_ok = counts_ok && component_count(p.n) == p.expect;
    out.require("component counts (10 patterns)", counts_ok);

    const TruncFock fock({2, 2}, {3, 3});
    Rng rng(49);
    Rng base_rng = rng.split("base");
    const Automorphism base = random_automorphism({2, 2}, 0.3, base_rng);
    double prev = 2.0;
    bool decreasing = true;
    for (int mag = 1; mag <= 3; ++mag) {
        Vector c1 = base.center(1).lambda();
        c1(0) += std::pow(10.0, -mag);
        const Automorphism moved(std::vector<int>(base.sigma()), {base.u(1), base.u(2)},
                                 {BallPoint(c1), base.center(2)});
        const double d = metric(base, moved, fock);
        decreasing = decreasing && d < prev && d > 0.0;
        prev = d;
    }
    out.require("metric falls over 3 magnitudes", decreasing);

    // Centers at the origin make the boundary term the whole metric.
    Rng r1 = rng.split("sep-one");
    Rng r2 = rng.split("sep-two");
    const Automorphism id_side = random_automorphism({2, 2}, 0.0, r1, {1, 2});
    const Automorphism swapped = random_automorphism({2, 2}, 0.0, r2, {2, 1});
    out.require("sigma mismatch keeps first term >= 0.9",
                metric(id_side, swapped, fock) >= 0.9);
}

// 10. The CLI: byte-identical reports for identical seed and flags, and all
// four exit codes.
void criterion_cli(Outcome& out) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("polyball_acceptance_" + std::to_string(static_cast<long>(::getpid())));
    std::filesystem::create_directories(dir);
    auto fixture = [&](const char* name, const std::string& text) {
        const auto path = dir / name;
        std::ofstream f(path);
        f << text;
        return path.string();
    };
    auto run_cli = [](const std::string& args, std::string* text) {
        const std::string cmd = std::string(POLYBALL_CLI_PATH) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (pipe == nullptr) return -1;
        std::string captured;
        char buf[4096];
        size_t got = 0;
        while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) captured.append(buf, got);
        const int status = pclose(pipe);
        if (text) *text = std::move(captured);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    std::string first, second;
    const int code_first = run_cli("verify --suite defect --seed 7", &first);
    const int code_second = run_cli("verify --suite defect --seed 7", &second);
    out.require("byte-identical reports",
                code_first == 0 && code_second == 0 && !first.empty() && first == second);
    out.require("exit 0 on pass", code_first == 0);
    out.require("exit 1 on forced failure",
                run_cli("verify --suite defect --tol-scale 1e-20", nullptr) == 1);
    const std::string bad = fixture("bad.json", "{\"n\": [1,");
    out.require("exit 2 on malformed input", run_cli("membership " + bad, nullptr) == 2);
    const std::string half = fixture(
        "aut_half.json", "{\"sigma\":[1],\"U\":[[[[1.0,0.0]]]],\"lambda\":[[[0.5,0.0]]]}");
    const std::string two =
        fixture("point_two.json", "{\"n\":[1],\"dimH\":1,\"X\":[[[[[2.0,0.0]]]]]}");
    out.require("exit 3 on numerical failure",
                run_cli("aut apply " + half + " " + two, nullptr) == 3);
}

} // namespace

int main() {
    Gate gate;
    gate.run(1, "moebius-involution", 10.0, criterion_involution);
    gate.run(2, "defect-identity", 10.0, criterion_defect_identity);
    gate.run(3, "berezin-exactness", 10.0, criterion_berezin);
    gate.run(4, "hadamard-radius", 5.0, criterion_radius);
    gate.run(5, "coefficient-bound", 30.0, criterion_coefficient_bound);
    gate.run(6, "schwarz-bound", 30.0, criterion_schwarz);
    gate.run(7, "group-law", 20.0, criterion_group_law);
    gate.run(8, "projective-rep", 20.0, criterion_projective);
    gate.run(9, "metric-topology", 10.0, criterion_metric);
    gate.run(10, "cli-contract", 10.0, criterion_cli);
    return gate.exit_code();
}
