#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p6c/config.hpp"
#include "p6c/precoloring.hpp"

namespace p6c {

// One neighbor-contraction event: a class of attachments replaced by its image.
struct Contraction {
    int comp;               // component index
    ColorMask pair;         // class list {i,j}
    std::vector<int> members;
    int image;              // smallest member keeps its id
};

// An orthogonal precoloring after a sequence of neighbor contractions. The
// vertex universe is unchanged; contracted members simply leave the live set
// and the image's adjacency is the union of theirs.
struct ContractedPrecoloring {
    StarredPrecoloring base; // normalized input
    Graph gt;                // contracted adjacency over the same universe
    Bits live;               // vertices still present
    Bits xt;                 // current X set
    ListAssignment M;        // M_P updated from x0 on ystar; images keep class lists
    std::vector<Contraction> log;
    std::vector<int> image_of; // vertex -> image id (identity when untouched)
};

struct BadSetProfile {
    BadSetTable table;
    std::vector<ColorMask> friendly; // maximal bad 2-sets with seed/x0 witnesses
};

// Companion triple (H, L, h). H lives over the contracted universe extended
// by fresh ids for the component stand-ins.
struct CompanionTriple {
    ContractedPrecoloring cp;
    Graph h;          // over n_base + fresh vertices
    Bits hverts;      // live vertex set of H = xt cup z
    Bits zset;
    ListAssignment L; // on hverts
    std::vector<int> z_comp;      // z vertex -> component index (sized like h)
    std::vector<Bits> comps;      // components of base g | ystar, base ids
    std::vector<BadSetProfile> profiles;
    std::vector<ColorMask> orient_pair; // canonical first class per component

    int n_base() const { return cp.base.g.n(); }
};

// Contract the `pair`-listed attachments of component `comp`. Rejects an
// empty class.
ContractedPrecoloring contract_neighbors(const ContractedPrecoloring& cp, int comp,
                                         ColorMask pair);

// Verifies the contracted slices gt|(xt_{ij} cup ystar cup {t}) are P6-free
// for all pairs and all t in seed cup x0. A witness path means an upstream bug.
std::optional<std::vector<int>> check_p6free_slices(const ContractedPrecoloring& cp);

// Companion-triple construction. p must be orthogonal and normalized.
// Empty lists inside H are legal and mean local infeasibility. nullopt is a
// certified no-extension answer: a class scheduled for contraction carries an
// internal edge, yet every extension must color it monochromatically.
std::optional<CompanionTriple> build_companion(const StarredPrecoloring& p,
                                               const SolveConfig& cfg);

// Convert a proper L-respecting coloring of H into an extension of the
// normalized base precoloring. Throws InternalInvariantViolation if a
// component cannot be finished (the theory rules this out).
Coloring lift_coloring(const CompanionTriple& t, const Coloring& c);

BadSetProfile bad_profile(const ContractedPrecoloring& cp, const Bits& comp);

// Z^{1i} for i in {2,3,4}: stand-ins whose X-neighbors fit the {1,i} class
// pair. A z with no X-neighbors belongs to all three.
Bits z_far_side(const CompanionTriple& t, int i);

// X-class of the triple by carried lists: {x in xt : M(x) == pair}.
Bits xt_class(const CompanionTriple& t, ColorMask pair);

std::string companion_to_json(const CompanionTriple& t);

} // namespace p6c
