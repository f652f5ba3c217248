#include "p6c/graph.hpp"

#include <sstream>

namespace p6c {

namespace {

// DFS over partial induced paths, extending by ascending vertex id. The first
// complete path found is lexicographically smallest for this search order.
bool extend_path(const Graph& g, int t, const Bits& within, std::vector<int>& path,
                 Bits& used, Bits& forbidden) {
    if ((int)path.size() == t) return true;
    int last = path.back();
    Bits cand = g.neighbors(last) & within;
    cand -= used;
    cand -= forbidden;
    for (int v = cand.first(); v >= 0; v = cand.next(v)) {
        // v must be non-adjacent to all path vertices except `last`.
        bool ok = true;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            if (g.adjacent(v, path[i])) { ok = false; break; }
        if (!ok) continue;
        path.push_back(v);
        used.set(v);
        if (extend_path(g, t, within, path, used, forbidden)) return true;
        used.reset(v);
        path.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> find_induced_path(const Graph& g, int t, const Bits& within) {
    if (t < 1) throw std::invalid_argument("t < 1");
    if (t == 1) {
        int v = within.first();
        if (v < 0) return std::nullopt;
        return std::vector<int>{v};
    }
    Bits forbidden(g.n());
    for (int s = within.first(); s >= 0; s = within.next(s)) {
        std::vector<int> path{s};
        Bits used(g.n());
        used.set(s);
        if (extend_path(g, t, within, path, used, forbidden)) return path;
        // A path starting at s was not found; paths through s in other start
        // positions are still possible, so s stays available.
    }
    return std::nullopt;
}

bool is_pt_free(const Graph& g, int t) {
    return !find_induced_path(g, t, g.full_set()).has_value();
}

std::vector<Bits> components(const Graph& g, const Bits& within) {
    std::vector<Bits> out;
    Bits seen(g.n());
    for (int s = within.first(); s >= 0; s = within.next(s)) {
        if (seen.test(s)) continue;
        Bits comp(g.n());
        std::vector<int> stack{s};
        comp.set(s);
        seen.set(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bits nb = g.neighbors(v) & within;
            nb -= comp;
            for (int u = nb.first(); u >= 0; u = nb.next(u)) {
                comp.set(u);
                seen.set(u);
                stack.push_back(u);
            }
        }
        out.push_back(comp);
    }
    return out;
}

std::optional<std::vector<std::pair<Bits, Bits>>> bipartition(const Graph& g, const Bits& within) {
    std::vector<std::pair<Bits, Bits>> out;
    std::vector<int8_t> side(g.n(), -1);
    for (const Bits& comp : components(g, within)) {
        Bits a(g.n()), b(g.n());
        int s = comp.first();
        side[s] = 0;
        a.set(s);
        std::vector<int> queue{s};
        size_t qi = 0;
        while (qi < queue.size()) {
            int v = queue[qi++];
            Bits nb = g.neighbors(v) & comp;
            for (int u = nb.first(); u >= 0; u = nb.next(u)) {
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    (side[u] == 0 ? a : b).set(u);
                    queue.push_back(u);
                } else if (side[u] == side[v]) {
                    return std::nullopt;
                }
            }
        }
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

Relation relation_of(const Graph& g, int a, const Bits& B) {
    if (B.test(a)) throw std::invalid_argument("relation_of: a in B");
    Bits hits = g.neighbors(a) & B;
    if (hits == B) return Relation::Complete; // empty B reports Complete
    if (hits.empty()) return Relation::Anticomplete;
    return Relation::Mixed;
}

Bits attachments(const Graph& g, const Bits& A, const Bits& B) {
    if (A.intersects(B)) throw std::invalid_argument("attachments: A and B overlap");
    Bits out(g.n());
    for (int b = B.first(); b >= 0; b = B.next(b))
        if (A.subset_of(g.neighbors(b))) out.set(b);
    return out;
}

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int n = -1, m = -1;
    if (!(in >> tag >> n >> m) || tag != "p" || n < 0 || m < 0)
        throw std::runtime_error("bad graph header, expected 'p <n> <m>'");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> tag >> u >> v) || tag != "e")
            throw std::runtime_error("bad edge line, expected 'e <u> <v>'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::runtime_error("edge endpoint out of range");
        if (u == v) throw std::runtime_error("self edge rejected");
        if (g.adjacent(u, v)) throw std::runtime_error("duplicate edge rejected");
        g.add_edge(u, v);
    }
    return g;
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.n() << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.n(); ++u)
        for (int v = g.neighbors(u).next(u); v >= 0; v = g.neighbors(u).next(v))
            out << "e " << u << ' ' << v << '\n';
    return out.str();
}

} // namespace p6c
