#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace p6c {

// Desk-scale budget knobs shared across the pipeline.
struct SolveConfig {
    int seed_cap = 12;            // |S| limit
    std::size_t member_cap = 1000000; // per-stage collection limit
    int jobs = 1;                 // branch worker pool size
    bool deep_checks = true;      // P6-slice and triple invariant assertions
    bool trace = false;
};

// Instance exceeds the configured desk-scale budget. Completeness is required
// for correctness, so stages abort explicitly instead of truncating.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An invariant the underlying theory guarantees was observed broken; never a
// wrong answer, always a loud stop.
struct InternalInvariantViolation : std::logic_error {
    explicit InternalInvariantViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace p6c
