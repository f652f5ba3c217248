#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "p6c/bits.hpp"

namespace p6c {

// Simple undirected graph over dense vertex ids 0..n-1.
// Immutable after construction apart from add_edge during build.
class Graph {
public:
    Graph() : n_(0) {}
    explicit Graph(int n) : n_(n), adj_(n, Bits(n)) {}

    int n() const { return n_; }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("self loop");
        adj_[u].set(v);
        adj_[v].set(u);
    }
    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const Bits& neighbors(int v) const { return adj_[v]; }

    int edge_count() const {
        int m = 0;
        for (int v = 0; v < n_; ++v) m += adj_[v].count();
        return m / 2;
    }

    Bits full_set() const {
        Bits b(n_);
        for (int v = 0; v < n_; ++v) b.set(v);
        return b;
    }

private:
    int n_;
    std::vector<Bits> adj_;
};

enum class Relation { Complete, Anticomplete, Mixed };

// Induced path on t vertices inside `within`, lexicographically smallest in
// DFS order, or nullopt. Path: v_i ~ v_j iff |i-j| = 1.
std::optional<std::vector<int>> find_induced_path(const Graph& g, int t, const Bits& within);

bool is_pt_free(const Graph& g, int t);

// Connected components of g|within, ordered by smallest member.
std::vector<Bits> components(const Graph& g, const Bits& within);

// Per component of g|within, the two color classes (smallest vertex in the
// first); nullopt if some component has an odd cycle.
std::optional<std::vector<std::pair<Bits, Bits>>> bipartition(const Graph& g, const Bits& within);

// Relation of vertex a to set B. Empty B reports Complete. Rejects a in B.
Relation relation_of(const Graph& g, int a, const Bits& B);

// B(A): members of B complete to A. Rejects overlapping A, B. Empty A gives B.
Bits attachments(const Graph& g, const Bits& A, const Bits& B);

// Edge-list text format: "p <n> <m>" then m lines "e <u> <v>", 0-indexed.
// Duplicate and self edges rejected.
Graph parse_graph_text(const std::string& text);
std::string graph_to_text(const Graph& g);

} // namespace p6c
