#pragma once

#include <array>
#include <optional>
#include <vector>

#include "p6c/graph.hpp"
#include "p6c/twosat.hpp"

namespace p6c {

// Colors are 1..4, stored as 4-bit masks (bit c-1 set means color c allowed).
using ColorMask = uint8_t;
constexpr ColorMask kAllColors = 0xF;

inline ColorMask color_bit(int c) { return ColorMask(1u << (c - 1)); }
inline bool has_color(ColorMask m, int c) { return m & color_bit(c); }
inline int mask_size(ColorMask m) { return __builtin_popcount(m); }
inline int first_color(ColorMask m) { return __builtin_ctz(m) + 1; }
inline int only_color(ColorMask m) { return first_color(m); } // |m| == 1

// Colors of a mask in ascending order.
std::vector<int> mask_colors(ColorMask m);

// Per-vertex subset of {1,2,3,4} over a fixed graph's vertex ids.
struct ListAssignment {
    std::vector<ColorMask> m;

    ListAssignment() = default;
    explicit ListAssignment(int n, ColorMask init = 0) : m(n, init) {}
    ColorMask operator[](int v) const { return m[v]; }
    ColorMask& operator[](int v) { return m[v]; }
    int size() const { return int(m.size()); }

    // Singleton-list vertices within `domain`.
    Bits x0(const Bits& domain) const;

    bool operator==(const ListAssignment& o) const { return m == o.m; }
};

// Per-vertex color in 1..4; 0 means unassigned / outside domain.
struct Coloring {
    std::vector<int8_t> c;

    Coloring() = default;
    explicit Coloring(int n) : c(n, 0) {}
    int operator[](int v) const { return c[v]; }
    void set(int v, int col) { c[v] = int8_t(col); }
    int size() const { return int(c.size()); }
};

// Proper on g|domain.
bool proper_on(const Graph& g, const Coloring& c, const Bits& domain);
// c(v) in L(v) for all v in domain.
bool respects_lists(const ListAssignment& L, const Coloring& c, const Bits& domain);

// M(v) = L(v) for v not in Y; M(v) = L(v) minus the colors of singleton-list
// neighbors in X, for v in Y. Every x in X must have a singleton list.
// Neighborhoods are taken within `within` when given.
ListAssignment update_from(const Graph& g, const ListAssignment& L, const Bits& X, const Bits& Y);
ListAssignment update_from_within(const Graph& g, const ListAssignment& L, const Bits& X,
                                  const Bits& Y, const Bits& within);

// Fixed point of updating from the singleton set, restricted to `domain`
// (both the updated vertices and the neighborhoods). Iteration count is
// bounded by 4 * |domain| and asserted.
ListAssignment update_exhaustively(const Graph& g, const ListAssignment& L, const Bits& domain);

// Proper L-respecting coloring of g|domain where all lists have size <= 2,
// via one boolean variable per 2-list vertex and a 2-SAT solve.
// Rejects lists of size > 2; an empty list yields nullopt.
std::optional<Coloring> edwards_two_list_color(const Graph& g, const ListAssignment& L,
                                               const Bits& domain);

// Complete branching search: min-list vertex first, colors ascending, with
// singleton propagation. Exact.
std::optional<Coloring> exact_list_color(const Graph& g, const ListAssignment& L,
                                         const Bits& domain);

// Goodness of color sets for one component C under lists M.
// Q (as a mask) is good iff C has a proper coloring with lists M(v) & Q.
// Only |Q| <= 3 is tabulated.
struct BadSetTable {
    std::array<bool, 16> good{};       // indexed by mask; only |Q| <= 3 meaningful
    std::vector<ColorMask> maximal_bad; // inclusion-maximal bad sets among |Q| <= 3

    bool is_good(ColorMask q) const { return good[q]; }
    bool is_bad(ColorMask q) const { return !good[q]; }
};

BadSetTable bad_set_table(const Graph& g, const Bits& C, const ListAssignment& M);

} // namespace p6c
