#include "polyball/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "polyball/autgroup.hpp"
#include "polyball/berezin.hpp"
#include "polyball/errors.hpp"
#include "polyball/linalg.hpp"
#include "polyball/rng.hpp"
#include "polyball/series.hpp"

namespace polyball {

namespace {

// Every check draws from a substream labeled with its own name, so adding or
// reordering checks never shifts the randomness of the others.
class SuiteBuilder {
public:
    SuiteBuilder(std::uint64_t seed, double tol_scale)
        : root_(seed), tol_scale_(tol_scale) {}

    void add(const std::string& name, double base_tol,
             const std::function<double(Rng)>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        const double residual = body(root_.split(name));
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const double tol = base_tol * tol_scale_;
        checks_.push_back({name, residual, tol, residual <= tol, ms});
    }

    std::vector<CheckResult> take() {
        std::sort(checks_.begin(), checks_.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
        return std::move(checks_);
    }

private:
    Rng root_;
    double tol_scale_;
    std::vector<CheckResult> checks_;
};

double tuple_distance(const OpTuple& a, const OpTuple& b) {
    double worst = 0.0;
    for (int i = 1; i <= a.factors(); ++i)
        for (int j = 1; j <= a.n()[i - 1]; ++j)
            worst = std::max(worst, operator_norm(a.entry(i, j) - b.entry(i, j)));
    return worst;
}

Vector random_center(int n, double norm, Rng& rng) {
    Vector v(n);
    for (int t = 0; t < n; ++t) v(t) = rng.complex_gaussian();
    return Vector(v * (norm * rng.uniform(0.5, 1.0) / v.norm()));
}

FreeSeries random_scalar_poly(const std::vector<int>& n_vec, int degree,
                              bool zero_constant, Rng& rng) {
    FreeSeries s = FreeSeries::scalar_series(n_vec);
    std::vector<int> caps(n_vec.size(), degree);
    for (const MultiWord& mw : enumerate_multiwords(n_vec, caps)) {
        const int d = mw.total_degree();
        if (d > degree || (zero_constant && d == 0)) continue;
        s.set(mw, rng.complex_gaussian());
    }
    return s;
}

int clamp_caps(int requested, int fallback, int lo, int hi) {
    if (requested <= 0) return fallback;
    return std::clamp(requested, lo, hi);
}

void build_defect(SuiteBuilder& b) {
    b.add("defect-identity-k1", 1e-9, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2}, 3, 0.6, true, tr);
        Rng cr = rng.split("center");
        const Automorphism a = Automorphism::moebius({BallPoint(random_center(2, 0.5, cr))});
        return defect_identity_residual(a, x);
    });
    b.add("defect-identity-pair-1", 1e-9, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({1, 1}, 3, 0.55, true, tr);
        Rng ar = rng.split("aut");
        const Automorphism a = random_automorphism({1, 1}, 0.4, ar, {2, 1});
        return defect_identity_residual(a, x);
    });
    b.add("defect-identity-pair-2", 1e-9, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2, 1}, 3, 0.5, true, tr);
        Rng ar = rng.split("aut");
        const Automorphism a = random_automorphism({2, 1}, 0.4, ar);
        return defect_identity_residual(a, x);
    });
    b.add("defect-positivity", 1e-10, [](Rng rng) {
        const OpTuple x = random_tuple({2, 1}, 4, 0.8, false, rng);
        const MembershipReport rep = membership_report(x);
        return std::max(0.0, -rep.worst_defect_eigenvalue);
    });
    b.add("moebius-involution-1", 1e-9, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2}, 3, 0.6, false, tr);
        Rng cr = rng.split("center");
        const Automorphism a = Automorphism::moebius({BallPoint(random_center(2, 0.6, cr))});
        return tuple_distance(apply(a, apply(a, x)), x);
    });
    b.add("moebius-involution-2", 1e-9, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2, 1}, 3, 0.5, false, tr);
        Rng cr = rng.split("center");
        const Automorphism a = Automorphism::moebius(
            {BallPoint(random_center(2, 0.5, cr)), BallPoint(random_center(1, 0.5, cr))});
        return tuple_distance(apply(a, apply(a, x)), x);
    });
}

void build_schwarz(SuiteBuilder& b) {
    b.add("coefficient-bound-1", 1e-12, [](Rng rng) {
        const FreeSeries poly = random_scalar_poly({1}, 3, false, rng);
        const TruncFock fock({1}, {33});
        const CauchyReport rep = cauchy_check(poly, {0.6}, fock, 0.02);
        double worst = 0.0;
        for (const CauchyEntry& e : rep.entries) worst = std::max(worst, e.lhs - e.rhs);
        return std::max(0.0, worst);
    });
    b.add("coefficient-bound-2", 1e-12, [](Rng rng) {
        // Caps below degree + 30 here, so the wider 5% slack applies.
        const FreeSeries poly = random_scalar_poly({1, 1}, 3, false, rng);
        const TruncFock fock({1, 1}, {12, 12});
        const CauchyReport rep = cauchy_check(poly, {0.55, 0.6}, fock, 0.05);
        double worst = 0.0;
        for (const CauchyEntry& e : rep.entries) worst = std::max(worst, e.lhs - e.rhs);
        return std::max(0.0, worst);
    });
    b.add("minkowski-homogeneity", 1e-8, [](Rng rng) {
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2, 1}, 3, 0.7, false, tr);
        Rng sr = rng.split("scale");
        Complex lam = sr.complex_gaussian();
        lam *= sr.uniform(0.5, 2.0) / std::abs(lam);
        const double lhs = minkowski(x.scaled(lam), 1e-10);
        const double rhs = std::abs(lam) * minkowski(x, 1e-10);
        return std::abs(lhs - rhs);
    });
    b.add("schwarz-bound-1", 1e-12, [](Rng rng) {
        Rng pr = rng.split("poly");
        const FreeSeries f = random_scalar_poly({2}, 3, true, pr);
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({2}, 4, 0.5, true, tr);
        const TruncFock fock({2}, {4});
        const SchwarzReport rep = schwarz_margin(f, x, fock, 0.05);
        return std::max(0.0, rep.value_norm - rep.bound);
    });
    b.add("schwarz-bound-2", 1e-12, [](Rng rng) {
        Rng pr = rng.split("poly");
        const FreeSeries f = random_scalar_poly({1, 1}, 3, true, pr);
        Rng tr = rng.split("tuple");
        const OpTuple x = random_tuple({1, 1}, 4, 0.6, true, tr);
        const TruncFock fock({1, 1}, {8, 8});
        const SchwarzReport rep = schwarz_margin(f, x, fock, 0.05);
        return std::max(0.0, rep.value_norm - rep.bound);
    });
}

void build_berezin(SuiteBuilder& b, int caps_flag) {
    // Exact kernels need caps at least dimH - 1; the clamp keeps user caps
    // from blowing the binary-alphabet dimension up.
    const int caps = clamp_caps(caps_flag, 4, 4, 6);
    b.add("kernel-intertwining", 1e-12, [caps](Rng rng) {
        const OpTuple x = random_tuple({2}, 5, 0.6, true, rng);
        const TruncFock fock({2}, {caps});
        const BerezinKernel k = berezin_kernel(x, fock);
        const Matrix eye = Matrix::Identity(k.defect_rank, k.defect_rank);
        double worst = 0.0;
        for (int j = 1; j <= 2; ++j) {
            const Matrix lhs = k.matrix * x.entry(1, j).adjoint();
            const Matrix rhs = kron(creation_operator(fock, 1, j, Side::Left).adjoint(), eye) *
                               k.matrix;
            worst = std::max(worst, operator_norm(lhs - rhs));
        }
        return worst;
    });
    b.add("kernel-isometry-1", 1e-12, [caps](Rng rng) {
        const OpTuple x = random_tuple({2}, 5, 0.6, true, rng);
        const TruncFock fock({2}, {caps});
        return kernel_unitarity_report(berezin_kernel(x, fock)).isometry_residual;
    });
    b.add("kernel-isometry-2", 1e-12, [caps](Rng rng) {
        const OpTuple x = random_tuple({1, 1}, 4, 0.5, true, rng);
        const TruncFock fock({1, 1}, {caps, caps});
        return kernel_unitarity_report(berezin_kernel(x, fock)).isometry_residual;
    });
    b.add("transform-reconstruction", 1e-11, [caps](Rng rng) {
        const OpTuple x = random_tuple({2}, 4, 0.55, true, rng);
        const TruncFock fock({2}, {caps});
        const BerezinKernel k = berezin_kernel(x, fock);
        const OpTuple s = OpTuple::from_model(fock);
        double worst = 0.0;
        for (const MultiWord& alpha : enumerate_multiwords({2}, {2}))
            for (const MultiWord& beta : enumerate_multiwords({2}, {2})) {
                const Matrix g =
                    s.multiword_product(alpha) * s.multiword_product(beta).adjoint();
                const Matrix expect =
                    x.multiword_product(alpha) * x.multiword_product(beta).adjoint();
                worst = std::max(worst, operator_norm(berezin_transform(k, g) - expect));
            }
        return worst;
    });
}

void build_projective(SuiteBuilder& b, int caps_flag) {
    const int caps = caps_flag > 0 ? std::max(caps_flag, 8) : 30;
    const int margin = std::max(2, std::min(10, caps / 3));
    // The representing matrix truncates gracefully only while the Taylor
    // support edge (caps + 1)(1 - lam)/(1 + lam) of the first dropped row
    // power stays above caps - margin; this choice keeps a slack of about
    // a third of the margin at every caps.
    const double t = (caps - 0.35 * margin) / (caps + 1.0);
    const double lam_main = (1.0 - t) / (1.0 + t);

    b.add("boundary-row-isometry", 1e-10, [caps, margin](Rng) {
        const double lam = std::pow(10.0, -6.0 / margin);
        Vector c(1);
        c << Complex(lam, 0.0);
        const Automorphism a = Automorphism::moebius({BallPoint(c)});
        const TruncFock fock({1}, {caps});
        return boundary_row_isometry_residual(apply_to_model(a, fock), fock, margin);
    });
    b.add("projective-cocycle", 1e-6, [caps, margin, lam_main](Rng) {
        const TruncFock fock({1}, {caps});
        // The composition's center is near the sum of the factor centers, so
        // the factors split the calibrated budget instead of each using it.
        Vector c1(1), c2(1);
        c1 << Complex(0.5 * lam_main, 0.0);
        c2 << Complex(-0.35 * lam_main, 0.25 * lam_main);
        const Automorphism a1 = Automorphism::moebius({BallPoint(c1)});
        const Automorphism a2 = Automorphism::moebius({BallPoint(c2)});
        const Matrix u1 = projective_unitary(a1, fock, margin).u;
        const Matrix u2 = projective_unitary(a2, fock, margin).u;
        const Matrix u12 = projective_unitary(compose(a1, a2), fock, margin).u;
        const Matrix p = fock.interior_projection(margin);
        const Matrix c_mat = p * (u1 * u2 * u12.adjoint()) * p;
        const Complex c = c_mat.trace() / p.trace();
        return std::max(std::abs(std::abs(c) - 1.0), operator_norm(c_mat - c * p));
    });
    b.add("projective-conjugation", 1e-6, [caps, margin, lam_main](Rng) {
        Vector c(1);
        c << Complex(lam_main, 0.0);
        const Automorphism a = Automorphism::moebius({BallPoint(c)});
        const TruncFock fock({1}, {caps});
        const ProjectiveUnitary pu = projective_unitary(a, fock, margin);
        return conjugation_residual(pu.u, apply_to_model(a, fock), fock, margin);
    });
    b.add("projective-unitarity", 1e-6, [caps, margin, lam_main](Rng) {
        Vector c(1);
        c << Complex(lam_main, 0.0);
        const Automorphism a = Automorphism::moebius({BallPoint(c)});
        const TruncFock fock({1}, {caps});
        return projective_unitary(a, fock, margin).unitarity_residual;
    });
}

void build_metric(SuiteBuilder& b, int caps_flag) {
    const int caps = clamp_caps(caps_flag, 3, 2, 4);
    b.add("component-count-1", 0.5, [](Rng) {
        return std::abs(static_cast<double>(component_count({2, 2}) - 2));
    });
    b.add("component-count-2", 0.5, [](Rng) {
        return std::abs(static_cast<double>(component_count({3, 3, 3}) - 6));
    });
    b.add("component-count-3", 0.5, [](Rng) {
        return std::abs(static_cast<double>(component_count({1, 1, 2, 2, 2}) - 12));
    });
    b.add("metric-convergence", 0.6, [caps](Rng rng) {
        const TruncFock fock({2, 2}, {caps, caps});
        const Automorphism base = random_automorphism({2, 2}, 0.3, rng);
        double prev = -1.0;
        double worst_ratio = 0.0;
        for (int m = 1; m <= 3; ++m) {
            Vector c1 = base.center(1).lambda();
            c1(0) += std::pow(10.0, -m);
            const Automorphism moved(std::vector<int>(base.sigma()),
                                     {base.u(1), base.u(2)},
                                     {BallPoint(c1), base.center(2)});
            const double d = metric(base, moved, fock);
            if (prev > 0.0) worst_ratio = std::max(worst_ratio, d / prev);
            prev = d;
        }
        return worst_ratio;
    });
    b.add("metric-sigma-separation", 1e-9, [caps](Rng rng) {
        const TruncFock fock({2, 2}, {caps, caps});
        Rng r1 = rng.split("one");
        Rng r2 = rng.split("two");
        const Automorphism a1 = random_automorphism({2, 2}, 0.2, r1, {1, 2});
        const Automorphism a2 = random_automorphism({2, 2}, 0.2, r2, {2, 1});
        return std::max(0.0, 0.9 - metric(a1, a2, fock));
    });
    b.add("metric-symmetry", 1e-12, [caps](Rng rng) {
        const TruncFock fock({2, 2}, {caps, caps});
        Rng r1 = rng.split("one");
        Rng r2 = rng.split("two");
        const Automorphism a1 = random_automorphism({2, 2}, 0.25, r1);
        const Automorphism a2 = random_automorphism({2, 2}, 0.25, r2);
        return std::abs(metric(a1, a2, fock) - metric(a2, a1, fock));
    });
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"defect",     "schwarz", "berezin",
                                                   "projective", "metric",  "all"};
    return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyConfig& config) {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw Error(ErrorCode::InvalidArgument, "unknown suite \"" + suite + "\"");

    SuiteBuilder b(config.seed, config.tol_scale);
    if (suite == "defect" || suite == "all") build_defect(b);
    if (suite == "schwarz" || suite == "all") build_schwarz(b);
    if (suite == "berezin" || suite == "all") build_berezin(b, config.caps);
    if (suite == "projective" || suite == "all") build_projective(b, config.caps);
    if (suite == "metric" || suite == "all") build_metric(b, config.caps);

    VerifyReport report{suite, config, b.take(), true};
    for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

Json report_to_json(const VerifyReport& report) {
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        Json entry{{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}};
        if (report.config.timing) entry["runtime_ms"] = c.runtime_ms;
        checks.push_back(std::move(entry));
    }
    return Json{{"suite", report.suite},
                {"config",
                 Json{{"seed", report.config.seed},
                      {"caps", report.config.caps},
                      {"tol_scale", report.config.tol_scale},
                      {"timing", report.config.timing}}},
                {"checks", std::move(checks)},
                {"pass", report.pass}};
}

} // namespace polyball
