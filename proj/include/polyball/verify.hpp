#pragma once
// Seeded self-check suites behind the CLI verify command. Each suite runs a
// fixed list of named checks drawn deterministically from one seed; a check
// passes when its residual is at most its tolerance, and tolerances scale
// uniformly with tol_scale so the failure path can be forced. Reports list
// checks sorted by name and are byte-deterministic for a fixed config
// (runtimes are measured but serialized only when timing is requested).

#include <cstdint>
#include <string>
#include <vector>

#include "polyball/json_io.hpp"

namespace polyball {

inline constexpr std::uint64_t kDefaultVerifySeed = 1729;

struct CheckResult {
    std::string name;
    double residual;
    double tolerance;   // after tol_scale
    bool pass;
    double runtime_ms;
};

struct VerifyConfig {
    std::uint64_t seed = kDefaultVerifySeed;
    int caps = 0;            // 0 = per-suite default; bounded suites clamp it
    double tol_scale = 1.0;
    bool timing = false;
};

struct VerifyReport {
    std::string suite;
    VerifyConfig config;
    std::vector<CheckResult> checks;  // sorted by name
    bool pass;
};

// Suites: defect, schwarz, berezin, projective, metric, all. InvalidArgument
// on anything else.
const std::vector<std::string>& verify_suite_names();
VerifyReport run_suite(const std::string& suite, const VerifyConfig& config);

Json report_to_json(const VerifyReport& report);

} // namespace polyball
