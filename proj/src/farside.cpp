#include "p6c/farside.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace p6c {

namespace {

ColorMask complement(ColorMask m) { return ColorMask(kAllColors & ~m); }

} // namespace

ListAssignment preprocess_lists(const CompanionTriple& t, const ListAssignment& L,
                                ColorMask pa) {
    ListAssignment upd = update_exhaustively(t.h, L, t.hverts);
    for (ColorMask pm : {pa, complement(pa)}) {
        Bits cls = xt_class(t, pm);
        if (cls.empty()) continue;
        auto parts = bipartition(t.h, cls);
        if (!parts) continue; // an odd class is uncolorable; later gates report it
        for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v)) {
            if (cls.test(v)) continue;
            for (auto& [s1, s2] : *parts)
                if ((t.h.neighbors(v) & s1).any() && (t.h.neighbors(v) & s2).any())
                    upd[v] = ColorMask(upd[v] & ~pm);
        }
    }
    return upd;
}

FarSideEncoding build_encoding(const CompanionTriple& t, const ListAssignment& processed,
                               const ChromaticCutset& cut) {
    FarSideEncoding enc;
    enc.processed = processed;
    enc.var_of.assign(t.h.n(), -1);
    for (int z = cut.A.first(); z >= 0; z = cut.A.next(z)) {
        enc.var_of[z] = enc.inst.new_var();
        enc.z_of_var.push_back(z);
    }
    ColorMask pa = cut.pa, pb = complement(cut.pa);
    int a1 = first_color(pa), a2 = only_color(ColorMask(pa & ~color_bit(a1)));
    int b1 = first_color(pb), b2 = only_color(ColorMask(pb & ~color_bit(b1)));

    auto add = [&](int type, int z1, int z2, Lit l1, Lit l2) {
        enc.inst.add_clause(l1, l2);
        enc.tags.push_back({type, z1, z2});
    };

    for (int side = 0; side < 2; ++side) {
        ColorMask pm = side == 0 ? pa : pb;
        int c1 = side == 0 ? a1 : b1, c2 = side == 0 ? a2 : b2;
        Bits half = cut.D & xt_class(t, pm);
        auto parts = bipartition(t.h, half);
        if (!parts)
            throw InternalInvariantViolation("cutset half is not bipartite in build_encoding");
        // per stand-in and component: which sides it touches
        struct Touch {
            bool s1 = false, s2 = false;
        };
        std::vector<std::vector<Touch>> touch(parts->size());
        for (size_t ci = 0; ci < parts->size(); ++ci) {
            touch[ci].resize(size_t(t.h.n()));
            for (int z = cut.A.first(); z >= 0; z = cut.A.next(z)) {
                touch[ci][size_t(z)].s1 = (t.h.neighbors(z) & (*parts)[ci].first).any();
                touch[ci][size_t(z)].s2 = (t.h.neighbors(z) & (*parts)[ci].second).any();
            }
        }
        auto same_side = [&](int z1, int z2) {
            for (size_t ci = 0; ci < parts->size(); ++ci) {
                const Touch& u = touch[ci][size_t(z1)];
                const Touch& v = touch[ci][size_t(z2)];
                if ((u.s1 && v.s1) || (u.s2 && v.s2)) return true;
            }
            return false;
        };
        auto opp_side = [&](int z1, int z2) {
            for (size_t ci = 0; ci < parts->size(); ++ci) {
                const Touch& u = touch[ci][size_t(z1)];
                const Touch& v = touch[ci][size_t(z2)];
                if ((u.s1 && v.s2) || (u.s2 && v.s1)) return true;
            }
            return false;
        };
        auto half_list = [&](int z) { return ColorMask(processed[z] & pm); };
        // families 1/4: distinct singleton halves with same-side neighbors
        // families 2/5: equal singleton halves with opposite-side neighbors
        // families 3/6: both patterns regardless of lists
        for (int z1 = cut.A.first(); z1 >= 0; z1 = cut.A.next(z1)) {
            for (int z2 = z1; z2 >= 0; z2 = cut.A.next(z2)) {
                auto lit = [&](int z) {
                    return side == 0 ? neg(enc.var_of[z]) : pos(enc.var_of[z]);
                };
                ColorMask h1 = half_list(z1), h2 = half_list(z2);
                bool same = same_side(z1, z2), opp = opp_side(z1, z2);
                if (z1 != z2 && same &&
                    ((h1 == color_bit(c1) && h2 == color_bit(c2)) ||
                     (h1 == color_bit(c2) && h2 == color_bit(c1))))
                    add(side == 0 ? 1 : 4, z1, z2, lit(z1), lit(z2));
                if (opp && h1 == h2 && (h1 == color_bit(c1) || h1 == color_bit(c2)))
                    add(side == 0 ? 2 : 5, z1, z2, lit(z1), lit(z2));
                if (same && opp) add(side == 0 ? 3 : 6, z1, z2, lit(z1), lit(z2));
            }
        }
    }
    for (int z = cut.A.first(); z >= 0; z = cut.A.next(z)) {
        if ((processed[z] & ~pa) == 0) add(7, z, z, pos(enc.var_of[z]), pos(enc.var_of[z]));
        if ((processed[z] & ~pb) == 0) add(8, z, z, neg(enc.var_of[z]), neg(enc.var_of[z]));
    }
    return enc;
}

namespace {

// Color one split side through the auxiliary bipartition graph: vertices with
// a forced color pin their neighbors' sides.
bool color_side(const Graph& h, const Bits& side_set, ColorMask pm,
                const ListAssignment& L, Coloring& out) {
    int c1 = first_color(pm);
    int c2 = only_color(ColorMask(pm & ~color_bit(c1)));
    Bits a1(h.n()), a2(h.n()), a3(h.n());
    for (int v = side_set.first(); v >= 0; v = side_set.next(v)) {
        ColorMask lv = ColorMask(L[v] & pm);
        if (lv == 0) return false;
        if (lv == color_bit(c1)) a1.set(v);
        else if (lv == color_bit(c2)) a2.set(v);
        else a3.set(v);
    }
    // F: a3 plus two anchors; bipartition with anchor i on side i
    int n = h.n();
    Graph f(n + 2);
    int anch1 = n, anch2 = n + 1;
    f.add_edge(anch1, anch2);
    for (int v = a3.first(); v >= 0; v = a3.next(v)) {
        Bits nb = h.neighbors(v);
        if ((nb & a1).any()) f.add_edge(v, anch1);
        if ((nb & a2).any()) f.add_edge(v, anch2);
        Bits nb3 = nb & a3;
        for (int u = nb3.next(v); u >= 0; u = nb3.next(u)) f.add_edge(v, u);
    }
    Bits fverts = a3;
    Bits fv2(n + 2);
    for (int v = fverts.first(); v >= 0; v = fverts.next(v)) fv2.set(v);
    fv2.set(anch1);
    fv2.set(anch2);
    auto parts = bipartition(f, fv2);
    if (!parts)
        throw InternalInvariantViolation("auxiliary side graph is not bipartite");
    for (auto& [f1, f2] : *parts) {
        bool flip = f2.test(anch1) || f1.test(anch2);
        const Bits& s1 = flip ? f2 : f1;
        for (int v = s1.first(); v >= 0; v = s1.next(v))
            if (v < n) out.set(v, c1);
        const Bits& s2 = flip ? f1 : f2;
        for (int v = s2.first(); v >= 0; v = s2.next(v))
            if (v < n) out.set(v, c2);
    }
    for (int v = a1.first(); v >= 0; v = a1.next(v)) out.set(v, c1);
    for (int v = a2.first(); v >= 0; v = a2.next(v)) out.set(v, c2);
    return true;
}

} // namespace

std::optional<Coloring> solve_far_side(const CompanionTriple& t, const ListAssignment& L,
                                       const ChromaticCutset& cut) {
    ColorMask pa = cut.pa, pb = complement(cut.pa);
    Bits da = cut.D & xt_class(t, pa);
    Bits db = cut.D & xt_class(t, pb);
    if (!edwards_two_list_color(t.h, L, da)) return std::nullopt;
    if (!edwards_two_list_color(t.h, L, db)) return std::nullopt;
    ListAssignment proc = preprocess_lists(t, L, cut.pa);
    FarSideEncoding enc = build_encoding(t, proc, cut);
    auto asg = solve(enc.inst);
    if (!asg) return std::nullopt;
    Bits aprime(t.h.n()), bprime(t.h.n());
    for (int z = cut.A.first(); z >= 0; z = cut.A.next(z))
        ((*asg)[size_t(enc.var_of[z])] ? aprime : bprime).set(z);
    Bits side_a = aprime | da;
    Bits side_b = bprime | db;
    Coloring out(t.h.n());
    if (!color_side(t.h, side_a, pa, L, out))
        throw InternalInvariantViolation("far side A split lost a list");
    if (!color_side(t.h, side_b, pb, L, out))
        throw InternalInvariantViolation("far side B split lost a list");
    Bits domain = cut.A | cut.D;
    if (!proper_on(t.h, out, domain) || !respects_lists(L, out, domain))
        throw InternalInvariantViolation("far side coloring failed verification");
    return out;
}

std::string encoding_to_dimacs(const FarSideEncoding& enc) {
    std::ostringstream out;
    out << "p cnf " << enc.inst.vars() << ' ' << enc.inst.clauses().size() << '\n';
    for (size_t i = 0; i < enc.inst.clauses().size(); ++i) {
        const auto& [l1, l2] = enc.inst.clauses()[i];
        const auto& tag = enc.tags[i];
        out << "c type " << tag.type << " z " << tag.z1 << ' ' << tag.z2 << '\n';
        auto lit = [](Lit l) { return (l.neg ? -1 : 1) * (l.var + 1); };
        out << lit(l1) << ' ' << lit(l2) << " 0\n";
    }
    return out.str();
}

} // namespace p6c
