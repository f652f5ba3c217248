#pragma once

#include <array>
#include <optional>
#include <vector>

#include "p6c/companion.hpp"
#include "p6c/config.hpp"

namespace p6c {

// (D, A, B) partition of the live H vertices for the class pair `pa` (the
// complementary pair is implied). A is the far side.
struct ChromaticCutset {
    ColorMask pa = 0;
    Bits D, A, B;
};

struct InsulationViolation {
    int bullet; // 0 partition/chromatic, 1 bipartite, 2 uniform, 3 witness, 4 cross lists
    std::vector<int> witness;
};

// Full mechanical check of the insulating-cutset definition over the graph
// h restricted to `verts`. nullopt means the cutset is valid.
std::optional<InsulationViolation> is_insulating(const Graph& h, const Bits& verts,
                                                 const ListAssignment& L,
                                                 const ChromaticCutset& cut);

struct MergeResult {
    Coloring c;
    int iterations = 0;
};

// Conflict-repair merge: c1 proper L-respecting on B cup D'' (the
// non-complex part), c2 on verts minus B. Flips one complex component per
// iteration; conflict count strictly decreases. Throws on invariant breakage.
MergeResult merge_colorings(const Graph& h, const Bits& verts, const ListAssignment& L,
                            const ChromaticCutset& cut, const Coloring& c1, const Coloring& c2);

// One insulating stage for the pair {1, i}. Returns the refined list
// assignments; empty result means this line is infeasible. When the far side
// Z^{1i} is empty the input list is returned unchanged.
std::vector<ListAssignment> insulate_pair(const CompanionTriple& t, const ListAssignment& L,
                                          int i, const SolveConfig& cfg);

// Cutset for pair {1, i} extracted from the current lists: the class
// components with a far-side neighbor sharing a color. nullopt when Z^{1i}
// is empty.
std::optional<ChromaticCutset> extract_cutset(const CompanionTriple& t,
                                              const ListAssignment& L, int i);

struct InsulatedLists {
    ListAssignment L;
    std::array<std::optional<ChromaticCutset>, 3> cut; // index i-2 for pair {1,i}
};

// Sequential composition over pairs 12, 13, 14 with final cutset extraction
// and re-validation. Empty result = infeasible under every branch.
std::vector<InsulatedLists> insulate_all(const CompanionTriple& t, const ListAssignment& L,
                                         const SolveConfig& cfg);

} // namespace p6c
