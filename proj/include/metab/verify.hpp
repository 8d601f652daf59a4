#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metab {

struct PropertyResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    /// trial index of the first failing check
    std::optional<std::uint64_t> first_failure;
};

struct SuiteResult {
    std::string name;
    std::vector<PropertyResult> properties;

    std::uint64_t checks() const;
    std::uint64_t failures() const;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<SuiteResult> suites;

    std::uint64_t failures() const;
    bool ok() const { return failures() == 0; }
};

/// division, normalize, group, freeness, residue, folner, interface, retraction
const std::vector<std::string>& suite_names();

/// Runs one suite; `trials` random instances per randomized property, with
/// trial k of suite s drawing from derive_rng(seed, s, k). Exhaustive checks
/// run once regardless of `trials`. Throws DomainError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed);

/// `suite` is a suite name or "all".
VerifyReport verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed);

/// Line-oriented summary; identical inputs give identical text.
std::string render_report(const VerifyReport& report);

}  // namespace metab
