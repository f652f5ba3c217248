#pragma once

#include <optional>
#include <random>

#include "p6c/precoloring.hpp"

namespace p6c {

// Exact answer by plain backtracking over proper 4-colorings that agree with
// f and avoid seed-neighbor colors. Deliberately avoids the library's list
// machinery and search order so it can serve as an independent cross-check.
// Refuses instances above the vertex limit.
std::optional<Coloring> brute_force_extension(const StarredPrecoloring& p, int limit = 24);

struct GenParams {
    int n = 12;
    int seed_min = 3, seed_max = 5;
    int x0_count = 1;
    int x_count = 3;
    int y_components = 2;
    int y_comp_max = 3;
    double edge_prob = 0.35;    // seed extra edges, x-x edges
    double attach_prob = 0.5;   // x to y-component completeness
    double sx0_edge_prob = 0.25; // seed/x0 edges to x and y vertices
    int tries = 600;
};

// P6-free random graph by rejection sampling; falls back to a complete
// multipartite graph (P4-free, hence P6-free) when the budget runs out.
Graph gen_p6free(int n, double edge_prob, uint64_t rng_seed, int tries = 200);

// Random excellent starred precoloring; validates and is P6-free. Throws
// std::runtime_error naming the failing constraint when the budget runs out.
StarredPrecoloring gen_excellent(const GenParams& params, uint64_t rng_seed);

// Structured family for scaling runs: threshold-style attachments, P6-free by
// construction, |S| = 4.
StarredPrecoloring gen_structured(int n, uint64_t rng_seed);

} // namespace p6c
