#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p6c/config.hpp"
#include "p6c/precoloring.hpp"

namespace p6c {

// Which stage produced a member and from which branch descriptor.
struct Provenance {
    std::string stage;
    int k = 0, l = 0;
    std::vector<int> descriptor; // flattened slot choices
};

struct Member {
    StarredPrecoloring p;
    Provenance prov;
};

using EquivalentCollection = std::vector<Member>;

// Section-2 stages. Inputs are normalized internally; members are normalized,
// validated, and satisfy the stage predicate. Each step preserves previously
// achieved (k', l') predicates of the same or earlier stages.
EquivalentCollection make_clean_step(const StarredPrecoloring& p, int k, int l,
                                     const SolveConfig& cfg);
EquivalentCollection make_clean(const StarredPrecoloring& p, const SolveConfig& cfg);

EquivalentCollection make_tidy_step(const StarredPrecoloring& p, int k, int l,
                                    const SolveConfig& cfg);
EquivalentCollection make_tidy(const StarredPrecoloring& p, const SolveConfig& cfg);

EquivalentCollection make_orderly_step(const StarredPrecoloring& p, int k, int l,
                                       const SolveConfig& cfg);
EquivalentCollection make_orderly(const StarredPrecoloring& p, const SolveConfig& cfg);

EquivalentCollection make_spotless_step(const StarredPrecoloring& p, int k, int l,
                                        const SolveConfig& cfg);
EquivalentCollection make_spotless(const StarredPrecoloring& p, const SolveConfig& cfg);

// Composition clean -> tidy -> orderly -> spotless; every member verified
// near-orthogonal.
EquivalentCollection make_near_orthogonal(const StarredPrecoloring& p, const SolveConfig& cfg);

// One-directional refinement containing p itself; if p is extendable, some
// member admits a good extension (and orthogonalize then succeeds on it).
EquivalentCollection make_smooth_candidates(const StarredPrecoloring& p, const SolveConfig& cfg);

// Removal map for vertices dropped during orthogonalization: each one can be
// colored with its free color after the rest of the graph is colored.
struct OrthResult {
    StarredPrecoloring p;                        // over g with removed vertices cut off
    std::vector<std::pair<int, int>> free_colors; // (parent vertex, color)
    Bits removed;                                // = Z, in parent ids
    std::vector<int> old_of_new;                 // branch vertex -> parent vertex
};

// Orthogonalizing reduction; nullopt when forced move colors conflict,
// which certifies the input is not smooth (branch infeasible).
std::optional<OrthResult> orthogonalize(const StarredPrecoloring& p, const SolveConfig& cfg);

struct OrthBranch {
    StarredPrecoloring p;
    std::vector<std::pair<int, int>> free_colors; // in parent ids
    std::vector<int> old_of_new;                  // branch vertex -> parent vertex
    int n_parent = 0;
    Provenance prov;
};

// near -> smooth candidates -> orthogonalize. p extendable iff some branch
// extendable; a branch extension plus its free colors extends p.
std::vector<OrthBranch> to_orthogonal_collection(const StarredPrecoloring& p,
                                                 const SolveConfig& cfg);

// Lift a branch extension back to the input of to_orthogonal_collection.
Coloring lift_orth_branch(const OrthBranch& b, const Coloring& c);

} // namespace p6c
