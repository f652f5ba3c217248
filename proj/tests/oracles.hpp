#pragma once

// Test-only reference implementations, written independently of the library
// paths they cross-check.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "p6c/lists.hpp"
#include "p6c/precoloring.hpp"

namespace test_oracle {

using p6c::Bits;
using p6c::Graph;

// Every ordered vertex tuple, checked directly against the adjacency matrix.
inline bool has_induced_path_tuples(const Graph& g, int t, const Bits& within) {
    std::vector<int> verts = within.to_vector();
    std::vector<int> tup;
    std::vector<bool> used(verts.size(), false);
    std::function<bool()> rec = [&]() -> bool {
        if (int(tup.size()) == t) return true;
        for (size_t i = 0; i < verts.size(); ++i) {
            if (used[i]) continue;
            bool ok = true;
            for (size_t j = 0; j < tup.size() && ok; ++j) {
                bool adj = g.adjacent(verts[i], tup[j]);
                bool want = (j + 1 == tup.size());
                if (adj != want) ok = false;
            }
            if (!ok) continue;
            used[i] = true;
            tup.push_back(verts[i]);
            if (rec()) return true;
            tup.pop_back();
            used[i] = false;
        }
        return false;
    };
    return rec();
}

// Plain recursive list coloring over explicit color vectors.
inline bool list_colorable(const Graph& g, const std::vector<uint8_t>& lists, const Bits& domain) {
    std::vector<int> verts = domain.to_vector();
    std::vector<int> col(g.n(), 0);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == verts.size()) return true;
        int v = verts[i];
        for (int c = 1; c <= 4; ++c) {
            if (!(lists[size_t(v)] & (1u << (c - 1)))) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                if (g.adjacent(v, verts[j]) && col[verts[j]] == c) ok = false;
            if (!ok) continue;
            col[v] = c;
            if (rec(i + 1)) return true;
            col[v] = 0;
        }
        return false;
    };
    return rec(0);
}

inline bool list_colorable(const Graph& g, const p6c::ListAssignment& L, const Bits& domain) {
    return list_colorable(g, L.m, domain);
}

// Existence of a precoloring extension by direct enumeration over all proper
// total colorings agreeing with f.
inline bool extension_exists(const p6c::StarredPrecoloring& p) {
    std::vector<uint8_t> lists(size_t(p.g.n()), 0xF);
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v))
        lists[size_t(v)] = uint8_t(1u << (p.f[v] - 1));
    return list_colorable(p.g, lists, p.g.full_set());
}

inline Graph random_graph(int n, double prob, std::mt19937_64& rng) {
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < prob) g.add_edge(u, v);
    return g;
}

// Backtracking list coloring with a randomized color preference per vertex;
// used to produce adversarial partial colorings for merge scenarios.
inline std::optional<p6c::Coloring> randomized_list_color(const Graph& g,
                                                          const p6c::ListAssignment& L,
                                                          const Bits& domain,
                                                          std::mt19937_64& rng) {
    std::vector<int> verts = domain.to_vector();
    std::vector<std::array<int, 4>> order(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        order[i] = {1, 2, 3, 4};
        std::shuffle(order[i].begin(), order[i].end(), rng);
    }
    p6c::Coloring col(g.n());
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == verts.size()) return true;
        int v = verts[i];
        for (int c : order[i]) {
            if (!p6c::has_color(L[size_t(v)], c)) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                if (g.adjacent(v, verts[j]) && col[verts[j]] == c) ok = false;
            if (!ok) continue;
            col.set(v, c);
            if (rec(i + 1)) return true;
            col.set(v, 0);
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return col;
}

} // namespace test_oracle
