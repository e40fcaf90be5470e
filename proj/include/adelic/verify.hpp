#pragma once

// Cross-path identity suites: each row evaluates one identity along two
// independent routes and records the residual.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adelic/ordering.hpp"

namespace adelic {

struct VerifyOptions {
    std::optional<double> target_error;    // loosens both evaluation targets and row tolerances
    std::optional<std::int64_t> max_terms; // cap on series truncation
    std::optional<int> quad_levels;
    std::string fault; // test hook: "tau2" corrupts τ(2) before the modular rows
};

/// "all" first, then the individual suites in report order.
std::vector<std::string> suite_names();

/// Rows of one suite in deterministic order. Throws InvalidArgument for an
/// unknown suite name. Evaluation failures propagate.
std::vector<IdentityReport> run_suite(const std::string &name, const VerifyOptions &opts);

} // namespace adelic
