#pragma once

#include <stdexcept>
#include <string>

namespace backfrac {

// CLI exit codes: 0 success, 2 config error, 3 infeasible discrepancy,
// 4 numerical failure.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the discrepancy equation rho(alpha) = tau*eps has no root,
// i.e. tau*eps >= ||f|| (rho is bounded above by ||f||).
struct infeasible_discrepancy : std::runtime_error {
    explicit infeasible_discrepancy(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace backfrac
