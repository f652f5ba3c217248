#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p6c/insulation.hpp"

namespace p6c {

// 2-SAT encoding of the far-side coloring problem. Variable true means the
// stand-in takes a color of the cutset's first pair.
struct FarSideEncoding {
    std::vector<int> var_of;   // h vertex -> variable id, -1 outside Z^{1i}
    std::vector<int> z_of_var; // variable id -> h vertex
    TwoSatInstance inst;
    struct Tag {
        int type; // clause families 1..8
        int z1, z2;
    };
    std::vector<Tag> tags; // parallel to inst.clauses()
    ListAssignment processed;
};

// Exhaustive updating followed by the both-sides strips for the two classes
// of the pair (applied to every vertex, including stand-ins). No re-update
// afterwards.
ListAssignment preprocess_lists(const CompanionTriple& t, const ListAssignment& L, ColorMask pa);

// Exactly the clauses whose trigger predicates hold, deterministic order.
FarSideEncoding build_encoding(const CompanionTriple& t, const ListAssignment& processed,
                               const ChromaticCutset& cut);

// Full far-side procedure: Edwards pre-gates on the two cutset halves,
// preprocessing, encoding, 2-SAT, side split and the two auxiliary-graph
// bipartition colorings. Returns a proper coloring of h|(A cup D) respecting
// the input lists, or nullopt iff that subproblem is uncolorable.
std::optional<Coloring> solve_far_side(const CompanionTriple& t, const ListAssignment& L,
                                       const ChromaticCutset& cut);

// DIMACS text with one provenance comment per clause.
std::string encoding_to_dimacs(const FarSideEncoding& enc);

} // namespace p6c
