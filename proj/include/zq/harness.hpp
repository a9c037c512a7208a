#pragma once

#include "zq/fixtures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zq {

struct HarnessConfig {
    std::size_t n = 4096;            // periodic grid for seminorm checks
    std::size_t spectral_n = 256;
    std::size_t spectral_trials = 32;
    std::size_t welding_n = 1024;
    double spacing = 1.0 / 32;       // planar solver spacing; refinement checks halve it
    double alpha = 1.0;
    double lambda = 0;               // 0 selects default_lambda(alpha)
    int max_iterations = 200;
    double mu_cap = 0.7;
    std::size_t trials = 32;         // operator-norm trials
    std::uint64_t seed = 1;
    std::vector<std::string> fixtures{"radial-stretch", "annulus-mode"};

    // Unknown keys and out-of-range values throw UsageError.
    static HarnessConfig from_json(const json& j);
    json to_json() const;
    double effective_lambda() const;
};

HarnessConfig load_config(const std::string& path);

struct VerificationReport {
    std::string check;
    std::string inputs_digest;
    double lhs = 0, rhs = 0, residual = 0, tolerance = 0;
    bool one_sided = false;  // passes when lhs <= rhs
    bool passed = false;
    json environment = json::object();
    std::string error;       // set when the check threw

    json to_json() const;
};

// residual = |lhs - rhs| (relative when rel is set); passes when residual <= tol
VerificationReport two_sided(std::string id, double lhs, double rhs, double tol, bool rel = false);
// passes when lhs <= rhs
VerificationReport one_sided(std::string id, double lhs, double rhs);

std::vector<std::string> suite_names();
// Reports sorted by check id. A check that throws yields a failed report
// carrying the message; later checks still run.
std::vector<VerificationReport> run_suite(const std::string& suite, const HarnessConfig& cfg);
json reports_to_json(const std::string& suite, const std::vector<VerificationReport>& reports);
bool all_passed(const std::vector<VerificationReport>& reports);

// Documentation for a check id; ids with a "/fixture" suffix use the base entry.
std::string explain(const std::string& check_id);
std::vector<std::string> check_ids();

} // namespace zq
