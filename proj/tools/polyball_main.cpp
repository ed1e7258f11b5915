// Command line front end. Every command reads and writes JSON; randomness
// flows from one seed flag (or POLYBALL_SEED) so equal invocations produce
// byte-identical output. Exit codes: 0 success, 1 verification failure,
// 2 input error, 3 numerical failure.

#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyball/autgroup.hpp"
#include "polyball/errors.hpp"
#include "polyball/json_io.hpp"
#include "polyball/series.hpp"
#include "polyball/tuples.hpp"
#include "polyball/verify.hpp"

namespace {

using polyball::Json;

// Flat or nested JSON object mirroring the flag tree, e.g.
// {"verify": {"caps": 8}} sets the default of polyball verify --caps.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        const Json j = Json::parse(input, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw CLI::FileError("config must be a JSON object");
        std::vector<CLI::ConfigItem> out;
        collect(j, {}, out);
        return out;
    }

private:
    static std::string scalar(const Json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    }

    static void collect(const Json& node, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                std::vector<std::string> next = parents;
                next.push_back(key);
                collect(value, next, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array())
                for (const auto& el : value) item.inputs.push_back(scalar(el));
            else
                item.inputs.push_back(scalar(value));
            out.push_back(std::move(item));
        }
    }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_radius(const std::string& file, int max_degree_flag) {
    const polyball::FreeSeries s = polyball::series_from_json(polyball::parse_file(file));
    // A truncated series is probed over its stored window; a genuine
    // polynomial is probed wholly beyond its degree, where every block is
    // zero, so the radius comes out infinite.
    int max_degree = max_degree_flag;
    if (max_degree <= 0)
        max_degree = s.truncated_tail() ? s.max_total_degree()
                                        : 2 * s.max_total_degree() + 2;
    max_degree = std::max(max_degree, 4);

    std::vector<double> per_degree(static_cast<std::size_t>(max_degree) + 1, 0.0);
    for (const auto& [p_vec, norm] : polyball::homogeneous_norms_by_multidegree(s)) {
        int total = 0;
        for (int p : p_vec) total += p;
        if (total <= max_degree)
            per_degree[static_cast<std::size_t>(total)] =
                std::max(per_degree[static_cast<std::size_t>(total)], norm);
    }

    const double gamma = polyball::hadamard_radius(s, max_degree);
    Json out;
    if (std::isinf(gamma))
        out["gamma"] = "inf";
    else
        out["gamma"] = gamma;
    out["per_degree"] = per_degree;
    emit(out);
    return 0;
}

int cmd_membership(const std::string& file, double tol) {
    const polyball::OpTuple x = polyball::tuple_from_json(polyball::parse_file(file));
    const polyball::Membership cls = polyball::membership(x, tol);
    Json out{{"class", polyball::membership_name(cls)},
             {"minkowski", polyball::minkowski(x, polyball::kBisectionTol)}};
    emit(out);
    return 0;
}

// Largest coordinate distance between images of seeded random interior
// scalar points; the round-trip law each command promises is checked at
// those points.
double scalar_residual(const polyball::Automorphism& lhs_of, const polyball::Automorphism& rhs_of,
                       bool rhs_is_identity, std::uint64_t seed) {
    polyball::Rng rng = polyball::Rng(seed).split("aut-validation");
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        std::vector<polyball::Vector> z;
        for (int i = 1; i <= lhs_of.factors(); ++i) {
            const int n = lhs_of.n()[i - 1];
            polyball::Vector v(n);
            for (int c = 0; c < n; ++c) v(c) = rng.complex_gaussian();
            z.push_back(polyball::Vector(v * (0.3 * rng.uniform(0.5, 1.0) / v.norm())));
        }
        const std::vector<polyball::Vector> lhs = polyball::apply_scalar(lhs_of, z);
        const std::vector<polyball::Vector> rhs =
            rhs_is_identity ? z : polyball::apply_scalar(rhs_of, z);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            worst = std::max(worst, (lhs[i] - rhs[i]).norm());
    }
    return worst;
}

int cmd_aut_compose(const std::string& file_a, const std::string& file_b, std::uint64_t seed) {
    const polyball::Automorphism a =
        polyball::automorphism_from_json(polyball::parse_file(file_a));
    const polyball::Automorphism b =
        polyball::automorphism_from_json(polyball::parse_file(file_b));
    const polyball::Automorphism c = polyball::compose(a, b);

    // c(z) must equal a(b(z)); build the pointwise composition for the check.
    polyball::Rng rng = polyball::Rng(seed).split("compose-points");
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        std::vector<polyball::Vector> z;
        for (int i = 1; i <= a.factors(); ++i) {
            const int n = a.n()[i - 1];
            polyball::Vector v(n);
            for (int cc = 0; cc < n; ++cc) v(cc) = rng.complex_gaussian();
            z.push_back(polyball::Vector(v * (0.3 * rng.uniform(0.5, 1.0) / v.norm())));
        }
        const auto lhs = polyball::apply_scalar(c, z);
        const auto rhs = polyball::apply_scalar(a, polyball::apply_scalar(b, z));
        for (std::size_t i = 0; i < lhs.size(); ++i)
            worst = std::max(worst, (lhs[i] - rhs[i]).norm());
    }

    Json out = polyball::to_json(c);
    out["residual"] = worst;
    emit(out);
    return 0;
}

int cmd_aut_invert(const std::string& file_a, std::uint64_t seed) {
    const polyball::Automorphism a =
        polyball::automorphism_from_json(polyball::parse_file(file_a));
    const polyball::Automorphism inv = polyball::inverse(a);
    Json out = polyball::to_json(inv);
    out["residual"] = scalar_residual(polyball::compose(inv, a), a, true, seed);
    emit(out);
    return 0;
}

int cmd_aut_apply(const std::string& file_a, const std::string& tuple_file, int caps) {
    const polyball::Automorphism a =
        polyball::automorphism_from_json(polyball::parse_file(file_a));
    if (tuple_file.empty() == (caps <= 0))
        throw polyball::Error(polyball::ErrorCode::InvalidArgument,
                              "apply needs either a tuple file or --caps, not both");
    if (!tuple_file.empty()) {
        const polyball::OpTuple x =
            polyball::tuple_from_json(polyball::parse_file(tuple_file));
        const polyball::OpTuple y = polyball::apply(a, x);
        Json out = polyball::to_json(y);
        out["defect_residual"] = polyball::defect_identity_residual(a, x);
        emit(out);
        return 0;
    }
    const polyball::TruncFock fock(a.n(), std::vector<int>(a.n().size(), caps));
    const auto rows = polyball::apply_to_model(a, fock);
    const polyball::OpTuple y(a.n(), static_cast<int>(fock.dim()), rows);
    Json out = polyball::to_json(y);
    out["row_isometry_residual"] = polyball::boundary_row_isometry_residual(rows, fock);
    emit(out);
    return 0;
}

int cmd_verify(const std::string& suite, const polyball::VerifyConfig& config) {
    const polyball::VerifyReport report = polyball::run_suite(suite, config);
    emit(polyball::report_to_json(report));
    return report.pass ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{"Truncated Fock models, Berezin transforms, and polyball automorphisms"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "optional JSON file with flag defaults");

    int exit_code = 0;

    auto* radius = app.add_subcommand("radius", "Radius of convergence of a stored series");
    std::string radius_file;
    int max_degree = 0;
    radius->add_option("series", radius_file, "series JSON file")->required();
    radius->add_option("--max-degree", max_degree,
                       "probe ceiling; default: the stored degree for truncated series, "
                       "past the stored degree for polynomials");
    radius->callback([&] { exit_code = cmd_radius(radius_file, max_degree); });

    auto* membership = app.add_subcommand("membership", "Polyball membership and gauge");
    std::string tuple_file;
    double mem_tol = polyball::kMembershipTol;
    membership->add_option("tuple", tuple_file, "operator tuple JSON file")->required();
    membership->add_option("--tol", mem_tol, "eigenvalue tolerance for the classification");
    membership->callback([&] { exit_code = cmd_membership(tuple_file, mem_tol); });

    auto* aut = app.add_subcommand("aut", "Automorphism group operations");
    aut->require_subcommand(1);
    std::string aut_a;
    std::string aut_b;
    std::string aut_tuple;
    int aut_caps = 0;
    std::uint64_t aut_seed = polyball::kDefaultVerifySeed;

    auto* compose = aut->add_subcommand("compose", "Canonical triple of a after b");
    compose->add_option("a", aut_a, "left automorphism JSON file")->required();
    compose->add_option("b", aut_b, "right automorphism JSON file")->required();
    compose->add_option("--seed", aut_seed, "seed for the validation points")
        ->envname("POLYBALL_SEED");
    compose->callback([&] { exit_code = cmd_aut_compose(aut_a, aut_b, aut_seed); });

    auto* invert = aut->add_subcommand("invert", "Canonical triple of the inverse");
    invert->add_option("a", aut_a, "automorphism JSON file")->required();
    invert->add_option("--seed", aut_seed, "seed for the validation points")
        ->envname("POLYBALL_SEED");
    invert->callback([&] { exit_code = cmd_aut_invert(aut_a, aut_seed); });

    auto* aply = aut->add_subcommand("apply", "Image of a tuple or of the truncated model");
    aply->add_option("a", aut_a, "automorphism JSON file")->required();
    aply->add_option("tuple", aut_tuple, "operator tuple JSON file");
    aply->add_option("--caps", aut_caps, "apply to the truncated model with these caps");
    aply->callback([&] { exit_code = cmd_aut_apply(aut_a, aut_tuple, aut_caps); });

    auto* verify = app.add_subcommand("verify", "Seeded self-check suites");
    polyball::VerifyConfig config;
    std::string suite = "all";
    verify->add_option("--suite", suite, "one of: defect, schwarz, berezin, projective, metric, all")
        ->check(CLI::IsMember(polyball::verify_suite_names()));
    verify->add_option("--caps", config.caps,
                       "model caps; 0 picks per-suite defaults, bounded suites clamp");
    verify->add_option("--seed", config.seed, "root seed for every sampled check")
        ->envname("POLYBALL_SEED");
    verify->add_option("--tol-scale", config.tol_scale,
                       "multiply every tolerance; small values force the failure path");
    verify->add_flag("--timing", config.timing,
                     "include per-check runtimes (output is then not deterministic)");
    verify->callback([&] { exit_code = cmd_verify(suite, config); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const polyball::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return polyball::is_numerical_failure(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
