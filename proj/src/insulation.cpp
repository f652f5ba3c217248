#include "p6c/insulation.hpp"

#include <algorithm>
#include <cassert>

namespace p6c {

namespace {

ColorMask complement(ColorMask m) { return ColorMask(kAllColors & ~m); }

} // namespace

std::optional<InsulationViolation> is_insulating(const Graph& h, const Bits& verts,
                                                 const ListAssignment& L,
                                                 const ChromaticCutset& cut) {
    auto bad = [](int bullet, std::vector<int> w) {
        return InsulationViolation{bullet, std::move(w)};
    };
    // partition and the chromatic condition
    if ((cut.A | cut.B | cut.D) != verts ||
        cut.A.count() + cut.B.count() + cut.D.count() != verts.count())
        return bad(0, {});
    if (cut.A.empty()) return bad(0, {});
    for (int a = cut.A.first(); a >= 0; a = cut.A.next(a)) {
        Bits nb = h.neighbors(a) & cut.B;
        for (int b = nb.first(); b >= 0; b = nb.next(b))
            if (L[a] & L[b]) return bad(0, {a, b});
    }
    ColorMask pa = cut.pa, pb = complement(cut.pa);
    // D = D_pa cup D_pb
    Bits dpa(h.n()), dpb(h.n());
    for (int d = cut.D.first(); d >= 0; d = cut.D.next(d)) {
        if ((L[d] & ~pa) == 0) dpa.set(d);
        else if ((L[d] & ~pb) == 0) dpb.set(d);
        else return bad(0, {d});
    }
    for (int side = 0; side < 2; ++side) {
        const Bits& dp = side == 0 ? dpa : dpb;
        ColorMask pm = side == 0 ? pa : pb;
        auto parts = bipartition(h, dp);
        if (!parts) return bad(1, {});
        for (auto& [d1, d2] : *parts) {
            Bits comp = d1 | d2;
            int sz = mask_size(L[comp.first()]);
            for (int d = comp.first(); d >= 0; d = comp.next(d))
                if (mask_size(L[d]) != sz) return bad(2, {comp.first(), d});
            bool witness = false;
            for (int a = cut.A.first(); a >= 0 && !witness; a = cut.A.next(a))
                if ((h.neighbors(a) & comp).any() && (L[a] & pm)) witness = true;
            if (!witness) return bad(3, {comp.first()});
            if (sz != 2) continue;
            // complex component: cross-list exclusions
            for (int si = 0; si < 2; ++si) {
                const Bits& ds = si == 0 ? d1 : d2;
                const Bits& dt = si == 0 ? d2 : d1;
                for (int i : mask_colors(pm)) {
                    int j = only_color(ColorMask(pm & ~color_bit(i)));
                    bool has_a = false;
                    for (int a = cut.A.first(); a >= 0 && !has_a; a = cut.A.next(a))
                        if ((h.neighbors(a) & ds).any() && has_color(L[a], i)) has_a = true;
                    if (!has_a) continue;
                    for (int b = cut.B.first(); b >= 0; b = cut.B.next(b)) {
                        if (!(h.neighbors(b) & comp).any()) continue;
                        if ((h.neighbors(b) & ds).any() && has_color(L[b], j))
                            return bad(4, {b, ds.first(), i});
                        if ((h.neighbors(b) & dt).any() && has_color(L[b], i))
                            return bad(4, {b, dt.first(), i});
                    }
                }
            }
        }
    }
    return std::nullopt;
}

MergeResult merge_colorings(const Graph& h, const Bits& verts, const ListAssignment& L,
                            const ChromaticCutset& cut, const Coloring& c1, const Coloring& c2) {
    if (auto v = is_insulating(h, verts, L, cut))
        throw InternalInvariantViolation("merge_colorings: cutset is not insulating");
    Bits dprime(h.n()); // union of complex components
    ColorMask pa = cut.pa, pb = complement(cut.pa);
    std::vector<Bits> complex_comps;
    for (ColorMask pm : {pa, pb}) {
        Bits dp(h.n());
        for (int d = cut.D.first(); d >= 0; d = cut.D.next(d))
            if ((L[d] & ~pm) == 0 && mask_size(L[d]) == 2) dp.set(d);
        for (Bits& comp : components(h, dp)) {
            // only whole components of H|D_pm count; a 2-listed vertex next to
            // a singleton cannot survive exhaustive updating, so dp is closed
            dprime |= comp;
            complex_comps.push_back(comp);
        }
    }
    Bits not_b = verts - cut.B;
    Bits c1dom = cut.B | (cut.D - dprime);
    assert(proper_on(h, c1, c1dom) && respects_lists(L, c1, c1dom));
    assert(proper_on(h, c2, not_b) && respects_lists(L, c2, not_b));

    Coloring cur = c2;
    auto find_conflict = [&]() -> std::optional<std::pair<int, int>> {
        for (int u = dprime.first(); u >= 0; u = dprime.next(u)) {
            Bits nb = h.neighbors(u) & cut.B;
            for (int v = nb.first(); v >= 0; v = nb.next(v))
                if (cur[u] == c1[v]) return std::make_pair(u, v);
        }
        return std::nullopt;
    };
    auto count_conflicts = [&]() {
        int c = 0;
        for (int u = dprime.first(); u >= 0; u = dprime.next(u)) {
            Bits nb = h.neighbors(u) & cut.B;
            for (int v = nb.first(); v >= 0; v = nb.next(v))
                if (cur[u] == c1[v]) ++c;
        }
        return c;
    };
    MergeResult res;
    int limit = verts.count() * verts.count() + 1;
    int conflicts = count_conflicts();
    while (auto conf = find_conflict()) {
        if (res.iterations++ > limit)
            throw InternalInvariantViolation("merge repair exceeded its iteration bound");
        int u = conf->first;
        const Bits* comp = nullptr;
        for (const Bits& c : complex_comps)
            if (c.test(u)) { comp = &c; break; }
        assert(comp);
        for (int d = comp->first(); d >= 0; d = comp->next(d)) {
            ColorMask other = ColorMask(L[d] & ~color_bit(cur[d]));
            cur.set(d, only_color(other));
        }
        if (!proper_on(h, cur, not_b))
            throw InternalInvariantViolation("merge flip broke properness off the B side");
        int now = count_conflicts();
        if (now >= conflicts)
            throw InternalInvariantViolation("merge flip did not reduce the conflict count");
        conflicts = now;
    }
    res.c = Coloring(h.n());
    for (int v = cut.B.first(); v >= 0; v = cut.B.next(v)) res.c.set(v, c1[v]);
    for (int v = not_b.first(); v >= 0; v = not_b.next(v)) res.c.set(v, cur[v]);
    assert(proper_on(h, res.c, verts) && respects_lists(L, res.c, verts));
    return res;
}

namespace {

// Branch-relevant types of the contracted X set for pair pa: the residual
// seed list is a 2-set split one-one across pa and its complement.
struct StageType {
    Bits members; // over n_h
    ColorMask residual;
};

std::vector<StageType> stage_types(const CompanionTriple& t, ColorMask pa) {
    std::vector<std::pair<std::vector<int>, StageType>> acc;
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) {
        Bits ty = t.cp.gt.neighbors(v) & t.cp.base.seed;
        ColorMask seen = 0;
        for (int u = ty.first(); u >= 0; u = ty.next(u)) seen |= color_bit(t.cp.base.f[u]);
        ColorMask residual = ColorMask(kAllColors & ~seen);
        if (mask_size(residual) != 2 || mask_size(ColorMask(residual & pa)) != 1) continue;
        auto key = ty.to_vector();
        bool found = false;
        for (auto& [k, st] : acc)
            if (k == key) {
                st.members.set(v);
                found = true;
            }
        if (!found) {
            StageType st{Bits(t.h.n()), residual};
            st.members.set(v);
            acc.push_back({key, st});
        }
    }
    std::vector<StageType> out;
    for (auto& [k, st] : acc) out.push_back(st);
    return out;
}

// z in far side is a grandchild of x through the class components: some
// component of h|cls holds neighbors of both.
std::vector<Bits> grandchildren(const CompanionTriple& t, const Bits& far, const Bits& cls,
                                const Bits& outside) {
    std::vector<Bits> g(size_t(t.h.n()), Bits(t.h.n()));
    for (const Bits& comp : components(t.h, cls)) {
        Bits touching_far(t.h.n());
        for (int z = far.first(); z >= 0; z = far.next(z))
            if ((t.h.neighbors(z) & comp).any()) touching_far.set(z);
        if (touching_far.empty()) continue;
        for (int x = outside.first(); x >= 0; x = outside.next(x))
            if ((t.h.neighbors(x) & comp).any()) g[size_t(x)] |= touching_far;
    }
    return g;
}

} // namespace

std::vector<ListAssignment> insulate_pair(const CompanionTriple& t, const ListAssignment& L,
                                          int i, const SolveConfig& cfg) {
    ColorMask pa = ColorMask(color_bit(1) | color_bit(i));
    ColorMask pb = complement(pa);
    Bits far = z_far_side(t, i);
    if (far.empty()) return {L};
    Bits cls_a = xt_class(t, pa), cls_b = xt_class(t, pb);
    auto parts_a = bipartition(t.h, cls_a);
    auto parts_b = bipartition(t.h, cls_b);
    if (!parts_a || !parts_b) return {}; // two colors cannot cover an odd cycle

    auto types = stage_types(t, pa);
    const int m = int(types.size());
    Bits outside = Bits(t.h.n());
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v))
        if (!cls_a.test(v) && !cls_b.test(v)) outside.set(v);
    auto ga = grandchildren(t, far, cls_a, outside);
    auto gb = grandchildren(t, far, cls_b, outside);

    // slot options: a vertex of the type with a usable list half, or empty
    std::vector<std::vector<int>> q_opts(m), p_opts(m);
    std::vector<size_t> counts;
    for (int r = 0; r < m; ++r) {
        for (int v = types[r].members.first(); v >= 0; v = types[r].members.next(v)) {
            if (L[v] & pa) q_opts[r].push_back(v);
            if (L[v] & pb) p_opts[r].push_back(v);
        }
        counts.push_back(q_opts[r].size() + 1);
        counts.push_back(p_opts[r].size() + 1);
    }
    size_t prod = 1;
    for (size_t c : counts) {
        if (c != 0 && prod > cfg.member_cap / c)
            throw BudgetExceeded("insulate: instance exceeds desk-scale budget");
        prod *= c;
    }

    // both-sides removals are tuple-independent
    auto both_sides = [&](int v, const std::vector<std::pair<Bits, Bits>>& parts,
                          const Bits& cls) {
        if (cls.test(v)) return false;
        for (auto& [s1, s2] : parts)
            if ((t.h.neighbors(v) & s1).any() && (t.h.neighbors(v) & s2).any()) return true;
        return false;
    };

    std::vector<ListAssignment> out;
    std::vector<int> idx(2 * m, -1); // even: Q slot, odd: P slot
    while (true) {
        ListAssignment lq = L;
        bool contradictory = false;
        for (int r = 0; r < m && !contradictory; ++r) {
            int qi = idx[2 * r], pi = idx[2 * r + 1];
            int qv = qi < 0 ? -1 : q_opts[r][qi];
            int pv = pi < 0 ? -1 : p_opts[r][pi];
            // one vertex cannot take a color from both halves
            if (qv >= 0 && qv == pv) { contradictory = true; break; }
            if (qv >= 0) lq[qv] = ColorMask(L[qv] & pa);
            if (pv >= 0) lq[pv] = ColorMask(L[pv] & pb);
            for (int v = types[r].members.first(); v >= 0; v = types[r].members.next(v)) {
                if (qv >= 0) {
                    if (v != qv && ga[size_t(qv)].subset_of(ga[size_t(v)]) &&
                        (ga[size_t(v)] - ga[size_t(qv)]).any())
                        lq[v] = ColorMask(lq[v] & ~pa);
                } else {
                    if (v != pv && ga[size_t(v)].any()) lq[v] = ColorMask(lq[v] & ~pa);
                }
                if (pv >= 0) {
                    if (v != pv && gb[size_t(pv)].subset_of(gb[size_t(v)]) &&
                        (gb[size_t(v)] - gb[size_t(pv)]).any())
                        lq[v] = ColorMask(lq[v] & ~pb);
                } else {
                    if (v != qv && gb[size_t(v)].any()) lq[v] = ColorMask(lq[v] & ~pb);
                }
            }
            if (qv >= 0) lq[qv] = ColorMask(L[qv] & pa); // slot assignments win
            if (pv >= 0) lq[pv] = ColorMask(L[pv] & pb);
        }
        if (!contradictory) {
            for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) {
                if (both_sides(v, *parts_a, cls_a)) lq[v] = ColorMask(lq[v] & ~pa);
                if (both_sides(v, *parts_b, cls_b)) lq[v] = ColorMask(lq[v] & ~pb);
            }
            ListAssignment fin = update_exhaustively(t.h, lq, t.hverts);
            bool empty = false;
            for (int v = t.hverts.first(); v >= 0 && !empty; v = t.hverts.next(v))
                if (fin[v] == 0) empty = true;
            if (!empty) out.push_back(std::move(fin));
        }

        int r = 0;
        while (r < 2 * m) {
            int lim = (r % 2 == 0) ? int(q_opts[r / 2].size()) : int(p_opts[r / 2].size());
            if (++idx[r] < lim) break;
            idx[r] = -1;
            ++r;
        }
        if (r == 2 * m) break;
    }
    return out;
}

std::optional<ChromaticCutset> extract_cutset(const CompanionTriple& t, const ListAssignment& L,
                                              int i) {
    ColorMask pa = ColorMask(color_bit(1) | color_bit(i));
    Bits far = z_far_side(t, i);
    if (far.empty()) return std::nullopt;
    ChromaticCutset cut;
    cut.pa = pa;
    cut.A = far;
    cut.D = Bits(t.h.n());
    for (ColorMask pm : {pa, complement(pa)}) {
        Bits cls = xt_class(t, pm);
        for (const Bits& comp : components(t.h, cls)) {
            bool hit = false;
            for (int x = comp.first(); x >= 0 && !hit; x = comp.next(x)) {
                Bits nz = t.h.neighbors(x) & far;
                for (int z = nz.first(); z >= 0 && !hit; z = nz.next(z))
                    if (L[x] & L[z]) hit = true;
            }
            if (hit) cut.D |= comp;
        }
    }
    cut.B = t.hverts - cut.A;
    cut.B -= cut.D;
    return cut;
}

std::vector<InsulatedLists> insulate_all(const CompanionTriple& t, const ListAssignment& L,
                                         const SolveConfig& cfg) {
    std::vector<ListAssignment> col{L};
    for (int i = 2; i <= 4; ++i) {
        std::vector<ListAssignment> next;
        for (const ListAssignment& cur : col) {
            auto part = insulate_pair(t, cur, i, cfg);
            for (auto& l : part) {
                if (next.size() >= cfg.member_cap)
                    throw BudgetExceeded("insulate_all: member cap exceeded");
                next.push_back(std::move(l));
            }
        }
        col = std::move(next);
        if (col.empty()) return {};
    }
    std::vector<InsulatedLists> out;
    for (ListAssignment& lq : col) {
        InsulatedLists il;
        il.L = std::move(lq);
        for (int i = 2; i <= 4; ++i) {
            auto cut = extract_cutset(t, il.L, i);
            if (cut && is_insulating(t.h, t.hverts, il.L, *cut))
                throw InternalInvariantViolation("extracted cutset failed its own check");
            il.cut[size_t(i - 2)] = std::move(cut);
        }
        out.push_back(std::move(il));
    }
    return out;
}

} // namespace p6c
