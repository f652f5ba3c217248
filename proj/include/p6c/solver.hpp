#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "p6c/config.hpp"
#include "p6c/precoloring.hpp"

namespace p6c {

struct SolveOutcome {
    std::optional<Coloring> coloring; // verified extension when present
    // provenance of the successful branch, for goldens and debugging
    long branch = -1;
    long list_index = -1;
    size_t branches_total = 0;
};

struct SolveSinks {
    std::ostream* trace = nullptr;          // JSON lines, one per stage
    std::ostream* companion_dump = nullptr; // triple JSON per branch
    std::ostream* cnf_dump = nullptr;       // far-side encodings
};

// Full pipeline: orthogonal collection, companion triple per branch,
// insulated list families, far-side solves plus one Edwards solve, three
// merges, lift, verification. Absent result means no extension exists.
// Throws BudgetExceeded when a stage overruns cfg, std::invalid_argument on
// invalid instances.
SolveOutcome solve_excellent(const StarredPrecoloring& p, const SolveConfig& cfg,
                             const SolveSinks& sinks = {});

// The general 4-precoloring entry point is out of scope for this library:
// it needs the reduction of arbitrary precolorings to excellent starred
// ones, which this codebase does not contain. Always reports unavailable.
struct FullSolveStatus {
    bool available = false;
    std::string reason;
};
FullSolveStatus solve_full_stub(const Graph& g, const Bits& x0, const std::vector<uint8_t>& f);

} // namespace p6c
