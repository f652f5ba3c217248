#include "p6c/lists.hpp"

#include <cassert>
#include <stdexcept>

namespace p6c {

std::vector<int> mask_colors(ColorMask m) {
    std::vector<int> out;
    for (int c = 1; c <= 4; ++c)
        if (has_color(m, c)) out.push_back(c);
    return out;
}

Bits ListAssignment::x0(const Bits& domain) const {
    Bits out(domain.universe());
    for (int v = domain.first(); v >= 0; v = domain.next(v))
        if (mask_size(m[v]) == 1) out.set(v);
    return out;
}

bool proper_on(const Graph& g, const Coloring& c, const Bits& domain) {
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        if (c[v] < 1 || c[v] > 4) return false;
        Bits nb = g.neighbors(v) & domain;
        for (int u = nb.next(v); u >= 0; u = nb.next(u))
            if (c[u] == c[v]) return false;
    }
    return true;
}

bool respects_lists(const ListAssignment& L, const Coloring& c, const Bits& domain) {
    for (int v = domain.first(); v >= 0; v = domain.next(v))
        if (c[v] < 1 || c[v] > 4 || !has_color(L[v], c[v])) return false;
    return true;
}

ListAssignment update_from_within(const Graph& g, const ListAssignment& L, const Bits& X,
                                  const Bits& Y, const Bits& within) {
    for (int x = X.first(); x >= 0; x = X.next(x))
        if (mask_size(L[x]) != 1) throw std::invalid_argument("update_from: non-singleton in X");
    ListAssignment M = L;
    for (int v = Y.first(); v >= 0; v = Y.next(v)) {
        Bits nb = g.neighbors(v) & X;
        nb &= within;
        ColorMask removed = 0;
        for (int x = nb.first(); x >= 0; x = nb.next(x)) removed |= L[x];
        M[v] = ColorMask(L[v] & ~removed);
    }
    return M;
}

ListAssignment update_from(const Graph& g, const ListAssignment& L, const Bits& X, const Bits& Y) {
    return update_from_within(g, L, X, Y, g.full_set());
}

ListAssignment update_exhaustively(const Graph& g, const ListAssignment& L, const Bits& domain) {
    ListAssignment cur = L;
    const int bound = 4 * domain.count() + 1;
    int iters = 0;
    while (true) {
        Bits singles = cur.x0(domain);
        ListAssignment nxt = update_from_within(g, cur, singles, domain, domain);
        if (nxt == cur) return cur;
        cur = nxt;
        if (++iters > bound)
            throw std::logic_error("update_exhaustively exceeded its iteration bound");
    }
}

std::optional<Coloring> edwards_two_list_color(const Graph& g, const ListAssignment& L,
                                               const Bits& domain) {
    // var per 2-list vertex; true = first (smaller) color of its list
    std::vector<int> var(g.n(), -1);
    TwoSatInstance inst;
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        int sz = mask_size(L[v]);
        if (sz > 2) throw std::invalid_argument("edwards: list larger than 2");
        if (sz == 0) return std::nullopt;
        if (sz == 2) var[v] = inst.new_var();
    }
    // Literal meaning "v gets color c", or -2 constant-false, -1 constant-true.
    auto lit_for = [&](int v, int c, Lit& out) -> int {
        if (!has_color(L[v], c)) return -2;
        if (var[v] < 0) return -1; // singleton list: forced to c
        auto cols = mask_colors(L[v]);
        out = (c == cols[0]) ? pos(var[v]) : neg(var[v]);
        return 0;
    };
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        Bits nb = g.neighbors(v) & domain;
        for (int u = nb.next(v); u >= 0; u = nb.next(u)) {
            for (int c = 1; c <= 4; ++c) {
                Lit lv{}, lu{};
                int rv = lit_for(v, c, lv);
                int ru = lit_for(u, c, lu);
                if (rv == -2 || ru == -2) continue; // one side can never take c
                if (rv == -1 && ru == -1) return std::nullopt; // both forced to c
                if (rv == -1) inst.add_unit({lu.var, !lu.neg});
                else if (ru == -1) inst.add_unit({lv.var, !lv.neg});
                else inst.add_clause({lv.var, !lv.neg}, {lu.var, !lu.neg});
            }
        }
    }
    auto asg = solve(inst);
    if (!asg) return std::nullopt;
    Coloring c(g.n());
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        auto cols = mask_colors(L[v]);
        c.set(v, var[v] < 0 ? cols[0] : ((*asg)[var[v]] ? cols[0] : cols[1]));
    }
    assert(proper_on(g, c, domain) && respects_lists(L, c, domain));
    return c;
}

namespace {

// Branching core for exact_list_color; lists already restricted to domain.
bool color_search(const Graph& g, std::vector<ColorMask>& lists, const Bits& domain,
                  Coloring& out) {
    // propagate singletons to fixpoint
    std::vector<int> todo;
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        if (lists[v] == 0) return false;
        if (mask_size(lists[v]) == 1 && out[v] == 0) {
            out.set(v, only_color(lists[v]));
            todo.push_back(v);
        }
    }
    std::vector<std::pair<int, ColorMask>> undo;
    auto restore = [&]() {
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) lists[it->first] = it->second;
        for (int v : todo) out.set(v, 0);
    };
    size_t qi = 0;
    while (qi < todo.size()) {
        int v = todo[qi++];
        ColorMask bit = lists[v];
        Bits nb = g.neighbors(v) & domain;
        for (int u = nb.first(); u >= 0; u = nb.next(u)) {
            if (out[u] != 0) {
                if (out[u] == only_color(bit)) { restore(); return false; }
                continue;
            }
            if (lists[u] & bit) {
                undo.push_back({u, lists[u]});
                lists[u] = ColorMask(lists[u] & ~bit);
                if (lists[u] == 0) { restore(); return false; }
                if (mask_size(lists[u]) == 1) {
                    out.set(u, only_color(lists[u]));
                    todo.push_back(u);
                }
            }
        }
    }
    // pick min-list uncolored vertex
    int best = -1, best_sz = 5;
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        if (out[v] != 0) continue;
        int sz = mask_size(lists[v]);
        if (sz < best_sz) { best = v; best_sz = sz; }
    }
    if (best < 0) return true; // everything colored
    ColorMask save = lists[best];
    for (int c : mask_colors(save)) {
        lists[best] = color_bit(c);
        if (color_search(g, lists, domain, out)) return true;
        lists[best] = save;
    }
    restore();
    return false;
}

} // namespace

std::optional<Coloring> exact_list_color(const Graph& g, const ListAssignment& L,
                                         const Bits& domain) {
    std::vector<ColorMask> lists = L.m;
    Coloring out(g.n());
    if (!color_search(g, lists, domain, out)) return std::nullopt;
    assert(proper_on(g, out, domain) && respects_lists(L, out, domain));
    return out;
}

BadSetTable bad_set_table(const Graph& g, const Bits& C, const ListAssignment& M) {
    BadSetTable t;
    for (ColorMask q = 0; q < 16; ++q) {
        if (mask_size(q) > 3) continue;
        ListAssignment restricted(M.size());
        for (int v = C.first(); v >= 0; v = C.next(v))
            restricted[v] = ColorMask(M[v] & q);
        t.good[q] = exact_list_color(g, restricted, C).has_value();
    }
    for (ColorMask q = 0; q < 16; ++q) {
        if (mask_size(q) > 3 || t.good[q]) continue;
        bool maximal = true;
        for (int c = 1; c <= 4 && maximal; ++c) {
            ColorMask sup = ColorMask(q | color_bit(c));
            if (sup != q && mask_size(sup) <= 3 && !t.good[sup]) maximal = false;
        }
        if (maximal) t.maximal_bad.push_back(q);
    }
    return t;
}

} // namespace p6c
