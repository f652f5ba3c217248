#include "p6c/precoloring.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace p6c {

namespace {

ColorMask colors_of(const StarredPrecoloring& p, const Bits& verts) {
    ColorMask m = 0;
    for (int v = verts.first(); v >= 0; v = verts.next(v)) m |= color_bit(p.f[v]);
    return m;
}

} // namespace

ValidationReport validate(const StarredPrecoloring& p) {
    ValidationReport r;
    auto fail = [&](Axiom a, std::string d, std::vector<int> w = {}) {
        r.ok = false;
        r.violated = a;
        r.detail = std::move(d);
        r.witness = std::move(w);
        return r;
    };
    const int n = p.g.n();
    if (p.seed.universe() != n || p.x0.universe() != n || p.x.universe() != n ||
        p.ystar.universe() != n || int(p.f.size()) != n)
        return fail(Axiom::Shape, "set universes or f size do not match the graph");
    // (B) partition
    Bits all = p.seed | p.x0 | p.x | p.ystar;
    if (all != p.g.full_set())
        return fail(Axiom::B, "sets do not cover V(G)");
    int total = p.seed.count() + p.x0.count() + p.x.count() + p.ystar.count();
    if (total != n) return fail(Axiom::B, "sets overlap");
    // f defined exactly on seed cup x0
    for (int v = 0; v < n; ++v) {
        bool pre = p.seed.test(v) || p.x0.test(v);
        if (pre && (p.f[v] < 1 || p.f[v] > 4))
            return fail(Axiom::Shape, "f missing on a precolored vertex", {v});
        if (!pre && p.f[v] != 0)
            return fail(Axiom::Shape, "f assigned outside seed and x0", {v});
    }
    // (A) proper on g|(seed cup x0)
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v)) {
        Bits nb = p.g.neighbors(v) & pre;
        for (int u = nb.next(v); u >= 0; u = nb.next(u))
            if (p.f[u] == p.f[v]) return fail(Axiom::A, "equal colors on an edge", {v, u});
    }
    // (C) seed connected, nobody outside complete to it
    if (p.seed.any()) {
        auto comps = components(p.g, p.seed);
        if (comps.size() != 1) return fail(Axiom::C, "seed is disconnected", {comps[1].first()});
        Bits rest = p.g.full_set() - p.seed;
        for (int v = rest.first(); v >= 0; v = rest.next(v))
            if (p.seed.subset_of(p.g.neighbors(v)))
                return fail(Axiom::C, "vertex complete to the seed", {v});
    }
    // (D) every x sees >= 2 colors in the seed
    for (int v = p.x.first(); v >= 0; v = p.x.next(v)) {
        ColorMask seen = colors_of(p, p.g.neighbors(v) & p.seed);
        if (mask_size(seen) < 2)
            return fail(Axiom::D, "x-vertex sees fewer than two seed colors", {v});
    }
    // (E) no x mixed on a ystar component
    auto comps = components(p.g, p.ystar);
    for (int v = p.x.first(); v >= 0; v = p.x.next(v))
        for (const Bits& c : comps)
            if (relation_of(p.g, v, c) == Relation::Mixed)
                return fail(Axiom::E, "x-vertex mixed on a component", {v, c.first()});
    // (F) each component has a complete attachment in seed cup x0 cup x
    Bits sxx = p.seed | p.x0 | p.x;
    for (const Bits& c : comps) {
        if (attachments(p.g, c, sxx).empty())
            return fail(Axiom::F, "component without a complete attachment", {c.first()});
    }
    return r;
}

ListAssignment lp(const StarredPrecoloring& p) {
    ListAssignment L(p.g.n());
    Bits pre = p.precolored();
    for (int v = 0; v < p.g.n(); ++v) {
        if (pre.test(v)) {
            L[v] = color_bit(p.f[v]);
        } else {
            ColorMask seen = colors_of(p, p.g.neighbors(v) & p.seed);
            L[v] = ColorMask(kAllColors & ~seen);
        }
    }
    return L;
}

ListAssignment mp(const StarredPrecoloring& p) {
    ListAssignment L = lp(p);
    Bits xx0 = p.x | p.x0;
    ListAssignment M1 = update_exhaustively(p.g, L, xx0);
    ListAssignment M = L;
    for (int v = xx0.first(); v >= 0; v = xx0.next(v)) M[v] = M1[v];
    return M;
}

std::optional<StarredPrecoloring> normalize(const StarredPrecoloring& p) {
    StarredPrecoloring cur = p;
    while (true) {
        ListAssignment M = mp(cur);
        Bits outside = cur.x | cur.ystar;
        Bits forced(cur.g.n());
        for (int v = outside.first(); v >= 0; v = outside.next(v)) {
            if (M[v] == 0) return std::nullopt;
            if (mask_size(M[v]) == 1) forced.set(v);
        }
        if (forced.empty()) return cur;
        for (int v = forced.first(); v >= 0; v = forced.next(v)) {
            cur.f[v] = uint8_t(only_color(M[v]));
            cur.x0.set(v);
            cur.x.reset(v);
            cur.ystar.reset(v);
        }
        // forced colors may conflict; that is a definitive no-extension answer
        Bits pre = cur.precolored();
        for (int v = forced.first(); v >= 0; v = forced.next(v)) {
            Bits nb = cur.g.neighbors(v) & pre;
            for (int u = nb.first(); u >= 0; u = nb.next(u))
                if (u != v && cur.f[u] == cur.f[v]) return std::nullopt;
        }
    }
}

bool is_normalized(const StarredPrecoloring& p) {
    ListAssignment M = mp(p);
    Bits outside = p.x | p.ystar;
    for (int v = outside.first(); v >= 0; v = outside.next(v))
        if (mask_size(M[v]) <= 1) return false;
    return true;
}

Bits class_of_mask(const StarredPrecoloring& p, const ListAssignment& M, ColorMask pair) {
    Bits out(p.g.n());
    for (int v = p.x.first(); v >= 0; v = p.x.next(v))
        if (M[v] == pair) out.set(v);
    return out;
}

Bits xij(const StarredPrecoloring& p, const ListAssignment& M, int i, int j) {
    return class_of_mask(p, M, ColorMask(color_bit(i) | color_bit(j)));
}

std::optional<StarredPrecoloring> move_to_seed(const StarredPrecoloring& p,
                                               const ListAssignment& M, const MoveSet& moves) {
    StarredPrecoloring q = p;
    Bits sdd(p.g.n()), x0dd(p.g.n());
    auto assign = [&](int v, int c) -> bool {
        if (q.f[v] != 0 && q.f[v] != c) return false; // conflicting move colors
        q.f[v] = uint8_t(c);
        return true;
    };
    for (auto [v, c] : moves.to_seed) {
        assert(p.x.test(v));
        if (!assign(v, c)) return std::nullopt;
        sdd.set(v);
    }
    for (auto [v, c] : moves.to_x0) {
        assert(p.x.test(v) || p.ystar.test(v));
        if (sdd.test(v)) return std::nullopt;
        if (!assign(v, c)) return std::nullopt;
        x0dd.set(v);
    }
    // X'': x-vertices absorbing a forced color from a seed-move neighbor
    Bits xdd(p.g.n());
    Bits xrest = p.x - sdd;
    xrest -= x0dd;
    for (int v = xrest.first(); v >= 0; v = xrest.next(v)) {
        Bits nb = p.g.neighbors(v) & sdd;
        ColorMask removed = 0;
        for (int z = nb.first(); z >= 0; z = nb.next(z))
            if (has_color(M[v], q.f[z])) removed |= color_bit(q.f[z]);
        if (removed == 0) continue;
        ColorMask rem = ColorMask(M[v] & ~removed);
        if (rem == 0) return std::nullopt;
        assert(mask_size(rem) == 1);
        q.f[v] = uint8_t(only_color(rem));
        xdd.set(v);
    }
    q.seed |= sdd;
    q.x0 |= x0dd;
    q.x0 |= xdd;
    q.x -= sdd;
    q.x -= x0dd;
    q.x -= xdd;
    q.ystar -= x0dd;
    // propriety of the enlarged precoloring
    Bits pre = q.precolored();
    Bits changed = sdd | x0dd | xdd;
    for (int v = changed.first(); v >= 0; v = changed.next(v)) {
        Bits nb = q.g.neighbors(v) & pre;
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (u != v && q.f[u] == q.f[v]) return std::nullopt;
    }
    return q;
}

bool check_extension(const StarredPrecoloring& p, const Coloring& c) {
    if (c.size() != p.g.n()) return false;
    Bits all = p.g.full_set();
    if (!proper_on(p.g, c, all)) return false;
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v))
        if (c[v] != p.f[v]) return false;
    return true;
}

bool orthogonal_masks(const std::vector<ColorMask>& masks) {
    static const ColorMask pairs[3] = {0b0011, 0b0101, 0b0110}; // {1,2}, {1,3}, {2,3}
    for (ColorMask a : pairs) {
        ColorMask b = ColorMask(kAllColors & ~a);
        bool ok = true;
        for (ColorMask m : masks)
            if (m != a && m != b) { ok = false; break; }
        if (ok) return true;
    }
    return masks.empty();
}

std::vector<TypeClass> x_types(const StarredPrecoloring& p) {
    std::map<std::vector<int>, TypeClass> by_type;
    for (int v = p.x.first(); v >= 0; v = p.x.next(v)) {
        Bits t = p.g.neighbors(v) & p.seed;
        auto key = t.to_vector();
        auto it = by_type.find(key);
        if (it == by_type.end()) {
            TypeClass tc{t, Bits(p.g.n()), ColorMask(kAllColors & ~colors_of(p, t))};
            it = by_type.emplace(key, std::move(tc)).first;
        }
        it->second.members.set(v);
    }
    std::vector<TypeClass> out;
    for (auto& [k, tc] : by_type) out.push_back(std::move(tc));
    return out;
}

namespace {

// Shared component context for the stage predicates.
struct CompCtx {
    std::vector<Bits> comps;
    std::vector<int> comp_of; // -1 outside ystar

    CompCtx(const StarredPrecoloring& p) : comp_of(p.g.n(), -1) {
        comps = components(p.g, p.ystar);
        for (size_t i = 0; i < comps.size(); ++i)
            for (int v = comps[i].first(); v >= 0; v = comps[i].next(v))
                comp_of[v] = int(i);
    }
};

ColorMask union_masks(const ListAssignment& M, const Bits& verts) {
    ColorMask m = 0;
    for (int v = verts.first(); v >= 0; v = verts.next(v)) m |= M[v];
    return m;
}

// Complement pair {i, j} of ordered (k, l), with i < j.
void complement_pair(int k, int l, int& i, int& j) {
    ColorMask rest = ColorMask(kAllColors & ~(color_bit(k) | color_bit(l)));
    auto cols = mask_colors(rest);
    i = cols[0];
    j = cols[1];
}

PredicateResult check_clean(const StarredPrecoloring& p, const ListAssignment& M, int k, int l) {
    int i, j;
    complement_pair(k, l, i, j);
    Bits xki = xij(p, M, k, i), xkj = xij(p, M, k, j);
    CompCtx ctx(p);
    for (int y = p.ystar.first(); y >= 0; y = p.ystar.next(y)) {
        if (!has_color(M[y], i) || !has_color(M[y], j)) continue;
        const Bits& c = ctx.comps[ctx.comp_of[y]];
        if (!has_color(union_masks(M, c), k)) continue;
        if ((p.g.neighbors(y) & xki).any() && (p.g.neighbors(y) & xkj).any()) {
            PredicateResult r;
            r.holds = false;
            r.witness = {y, (p.g.neighbors(y) & xki).first(), (p.g.neighbors(y) & xkj).first()};
            return r;
        }
    }
    return {};
}

// BFS path between endpoints staying inside `allowed`; both endpoints must
// be in `allowed`.
std::optional<std::vector<int>> restricted_path(const Graph& g, int from, int to,
                                                const Bits& allowed) {
    if (!allowed.test(from) || !allowed.test(to)) return std::nullopt;
    std::vector<int> parent(g.n(), -2);
    parent[from] = -1;
    std::vector<int> queue{from};
    size_t qi = 0;
    while (qi < queue.size()) {
        int v = queue[qi++];
        if (v == to) break;
        Bits nb = g.neighbors(v) & allowed;
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (parent[u] == -2) {
                parent[u] = v;
                queue.push_back(u);
            }
    }
    if (parent[to] == -2) return std::nullopt;
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

PredicateResult check_tidy(const StarredPrecoloring& p, const ListAssignment& M, int k, int l) {
    int i, j;
    complement_pair(k, l, i, j);
    Bits xki = xij(p, M, k, i), xkj = xij(p, M, k, j);
    CompCtx ctx(p);
    for (const Bits& c : ctx.comps) {
        if (!has_color(union_masks(M, c), k)) continue;
        if (attachments(p.g, c, xki).empty() || attachments(p.g, c, xkj).empty()) continue;
        // path from an i-carrier to a j-carrier through l-carriers
        Bits lset(p.g.n());
        for (int v = c.first(); v >= 0; v = c.next(v))
            if (has_color(M[v], l)) lset.set(v);
        for (int yi = lset.first(); yi >= 0; yi = lset.next(yi)) {
            if (!has_color(M[yi], i)) continue;
            for (int yj = lset.first(); yj >= 0; yj = lset.next(yj)) {
                if (!has_color(M[yj], j)) continue;
                auto path = restricted_path(p.g, yi, yj, lset);
                if (path) {
                    PredicateResult r;
                    r.holds = false;
                    r.witness = {yi, yj};
                    r.witness.insert(r.witness.end(), path->begin(), path->end());
                    return r;
                }
            }
        }
    }
    return {};
}

PredicateResult check_orderly(const StarredPrecoloring& p, const ListAssignment& M, int k, int l) {
    int i, j;
    complement_pair(k, l, i, j);
    Bits xki = xij(p, M, k, i), xkj = xij(p, M, k, j);
    ColorMask need = ColorMask(color_bit(i) | color_bit(j));
    for (int y = p.ystar.first(); y >= 0; y = p.ystar.next(y)) {
        if ((M[y] & need) != need) continue;
        Bits a = p.g.neighbors(y) & xki;
        Bits b = p.g.neighbors(y) & xkj;
        for (int u = a.first(); u >= 0; u = a.next(u))
            for (int v = b.first(); v >= 0; v = b.next(v))
                if (!p.g.adjacent(u, v)) {
                    PredicateResult r;
                    r.holds = false;
                    r.witness = {y, u, v};
                    return r;
                }
    }
    return {};
}

PredicateResult check_spotless(const StarredPrecoloring& p, const ListAssignment& M, int k, int l) {
    int i, j;
    complement_pair(k, l, i, j);
    Bits xki = xij(p, M, k, i), xkj = xij(p, M, k, j);
    ColorMask need = ColorMask(color_bit(i) | color_bit(j));
    for (int y = p.ystar.first(); y >= 0; y = p.ystar.next(y)) {
        if ((M[y] & need) != need) continue;
        if ((p.g.neighbors(y) & xki).any() && (p.g.neighbors(y) & xkj).any()) {
            PredicateResult r;
            r.holds = false;
            r.witness = {y, (p.g.neighbors(y) & xki).first(), (p.g.neighbors(y) & xkj).first()};
            return r;
        }
    }
    return {};
}

PredicateResult check_orthogonal(const StarredPrecoloring& p, const ListAssignment& M) {
    for (int y = p.ystar.first(); y >= 0; y = p.ystar.next(y)) {
        Bits nb = p.g.neighbors(y) & p.x;
        std::vector<ColorMask> masks;
        for (int v = nb.first(); v >= 0; v = nb.next(v)) masks.push_back(M[v]);
        if (!orthogonal_masks(masks)) {
            PredicateResult r;
            r.holds = false;
            r.witness = {y};
            return r;
        }
    }
    return {};
}

PredicateResult check_near_orthogonal(const StarredPrecoloring& p, const ListAssignment& M) {
    CompCtx ctx(p);
    for (int y = p.ystar.first(); y >= 0; y = p.ystar.next(y)) {
        if (mask_size(M[y]) < 3) continue; // only wholesome vertices constrained
        Bits nb = p.g.neighbors(y) & p.x;
        std::vector<ColorMask> masks;
        for (int v = nb.first(); v >= 0; v = nb.next(v)) masks.push_back(M[v]);
        if (orthogonal_masks(masks)) continue;
        const Bits& c = ctx.comps[ctx.comp_of[y]];
        bool some = false;
        for (int k = 1; k <= 4 && !some; ++k) {
            for (int l = 1; l <= 4 && !some; ++l) {
                if (l == k) continue;
                int i, j;
                complement_pair(k, l, i, j);
                Bits xki = xij(p, M, k, i), xkj = xij(p, M, k, j);
                if (!nb.subset_of(xki | xkj)) continue;
                ColorMask ijmask = ColorMask(color_bit(i) | color_bit(j));
                bool ok = true;
                for (int u = c.first(); u >= 0 && ok; u = c.next(u))
                    if (mask_size(ColorMask(M[u] & ijmask)) > 1) ok = false;
                if (!ok) continue;
                bool has_i = false, has_j = false, miss_l = false;
                for (int u = c.first(); u >= 0; u = c.next(u)) {
                    if (has_color(M[u], i)) has_i = true;
                    if (has_color(M[u], j)) has_j = true;
                    if (!has_color(M[u], l)) miss_l = true;
                }
                if (has_i && has_j && !miss_l) continue;
                some = true;
            }
        }
        if (!some) {
            PredicateResult r;
            r.holds = false;
            r.witness = {y};
            return r;
        }
    }
    return {};
}

} // namespace

PredicateResult stage_predicate(const StarredPrecoloring& p, const ListAssignment& M,
                                StagePred which, int k, int l) {
    switch (which) {
        case StagePred::Clean: return check_clean(p, M, k, l);
        case StagePred::Tidy: return check_tidy(p, M, k, l);
        case StagePred::Orderly: return check_orderly(p, M, k, l);
        case StagePred::Spotless: return check_spotless(p, M, k, l);
        case StagePred::Orthogonal: return check_orthogonal(p, M);
        case StagePred::NearOrthogonal: return check_near_orthogonal(p, M);
    }
    return {};
}

} // namespace p6c
