#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p6c/graph.hpp"
#include "p6c/lists.hpp"

namespace p6c {

// The six-tuple (G, S, X0, X, Y*, f). f[v] in 1..4 on seed and x0, 0 elsewhere.
struct StarredPrecoloring {
    Graph g;
    Bits seed, x0, x, ystar;
    std::vector<uint8_t> f;

    Bits precolored() const { return seed | x0; }
};

// Axiom identifiers (A)-(F) plus structural sanity of the tuple itself.
enum class Axiom { Shape, A, B, C, D, E, F };

struct ValidationReport {
    bool ok = true;
    Axiom violated = Axiom::Shape;
    std::string detail;
    std::vector<int> witness;
};

// First violated axiom with a witness; never throws on bad instances.
ValidationReport validate(const StarredPrecoloring& p);

// L_P: {f(v)} on seed and x0; {1..4} \ f(N(v) cap seed) elsewhere.
ListAssignment lp(const StarredPrecoloring& p);

// M_P: exhaustive update of L_P restricted to x cup x0 inside g|(x cup x0),
// spliced with L_P outside.
ListAssignment mp(const StarredPrecoloring& p);

// Move singleton-list vertices outside seed cup x0 into x0 with their forced
// colors, iterating to a fixpoint. nullopt means the instance provably has no
// extension (an empty list or a forced conflict).
std::optional<StarredPrecoloring> normalize(const StarredPrecoloring& p);

bool is_normalized(const StarredPrecoloring& p);

// X_{ij} = members of x whose M_P list is exactly {i,j}.
Bits xij(const StarredPrecoloring& p, const ListAssignment& M, int i, int j);
Bits class_of_mask(const StarredPrecoloring& p, const ListAssignment& M, ColorMask pair);

// One accumulated batch of moves for move_to_seed.
struct MoveSet {
    // (vertex, color); seed moves must come from x, x0 moves from x cup ystar
    std::vector<std::pair<int, int>> to_seed;
    std::vector<std::pair<int, int>> to_x0;
};

// Batched move of chosen x-vertices into the seed and of x/ystar vertices
// into x0, with the induced absorption of x-vertices that see a seed move
// of a color in their M_P list.
// nullopt when the resulting precoloring is improper (branch pruned) or a
// forced list empties.
std::optional<StarredPrecoloring> move_to_seed(const StarredPrecoloring& p,
                                               const ListAssignment& M, const MoveSet& moves);

// True iff c is total, proper on g, and agrees with f on seed cup x0.
bool check_extension(const StarredPrecoloring& p, const Coloring& c);

enum class StagePred { Orthogonal, Clean, Tidy, Orderly, Spotless, NearOrthogonal };

struct PredicateResult {
    bool holds = true;
    std::vector<int> witness; // violating tuple; for Tidy includes the path
};

// Stage predicates of the reduction hierarchy. k, l are the ordered color
// pair for Clean/Tidy/Orderly/Spotless and ignored otherwise. p must be
// valid and normalized; M is mp(p).
PredicateResult stage_predicate(const StarredPrecoloring& p, const ListAssignment& M,
                                StagePred which, int k = 1, int l = 4);

// A set of X-lists is orthogonal when some complementary pair {a,b} /
// {1..4}\{a,b} covers all of them.
bool orthogonal_masks(const std::vector<ColorMask>& masks);

// Types: the distinct values of N(v) cap seed over members, with their members.
struct TypeClass {
    Bits t;        // subset of seed
    Bits members;  // vertices of that type
    ColorMask residual; // L_P(T) = {1..4} \ f(T)
};
std::vector<TypeClass> x_types(const StarredPrecoloring& p);

} // namespace p6c
