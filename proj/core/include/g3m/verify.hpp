#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g3m/engine.hpp"

namespace g3m {

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string counterexample;  // first failing case, full precision
    bool passed() const noexcept { return failures == 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t cases = 10000;
    // Optional user pool folded into the pool-based checks as an extra case.
    const Pool* extra_pool = nullptr;
};

// Runs the seeded randomized check suite for the mean family and the swap
// engine: idempotence, bounds, monotonicity, power-mean ordering, the p -> 0
// limit, concavity, superadditivity, homogeneity, f-mean agreement, solver
// round trips, a bisection cross-check, invariant preservation, quote
// monotonicity, spec coincidence, and the feasibility boundary.
std::vector<PropertyResult> run_property_suite(const VerifyOptions& opts);

}  // namespace g3m
