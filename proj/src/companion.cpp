#include "p6c/companion.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>

namespace p6c {

namespace {

Bits grow(const Bits& b, int n) {
    Bits out(n);
    for (int v = b.first(); v >= 0; v = b.next(v)) out.set(v);
    return out;
}

ColorMask complement(ColorMask m) { return ColorMask(kAllColors & ~m); }

// Realized attachment class masks of a component, ascending.
std::vector<ColorMask> attachment_classes(const ContractedPrecoloring& cp, const Bits& comp) {
    Bits att = attachments(cp.gt, comp, cp.xt);
    std::vector<ColorMask> out;
    for (int v = att.first(); v >= 0; v = att.next(v))
        if (std::find(out.begin(), out.end(), cp.M[v]) == out.end()) out.push_back(cp.M[v]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ContractedPrecoloring contract_neighbors(const ContractedPrecoloring& cp, int comp,
                                         ColorMask pair) {
    const Graph& g = cp.gt;
    Bits comp_set(g.n());
    {
        // component sets are stored on the triple; here recompute from base
        auto comps = components(cp.base.g, cp.base.ystar);
        comp_set = comps.at(size_t(comp));
    }
    Bits att = attachments(g, comp_set, cp.xt);
    Bits members(g.n());
    for (int v = att.first(); v >= 0; v = att.next(v))
        if (cp.M[v] == pair) members.set(v);
    if (members.empty()) throw std::invalid_argument("contract_neighbors: empty class");

    int image = members.first();
    ContractedPrecoloring out = cp;
    out.gt = Graph(g.n());
    auto mapped = [&](int v) { return members.test(v) ? image : v; };
    for (int u = cp.live.first(); u >= 0; u = cp.live.next(u)) {
        Bits nb = g.neighbors(u) & cp.live;
        for (int v = nb.next(u); v >= 0; v = nb.next(v)) {
            int mu = mapped(u), mv = mapped(v);
            if (mu != mv && !out.gt.adjacent(mu, mv)) out.gt.add_edge(mu, mv);
        }
    }
    Bits gone = members;
    gone.reset(image);
    out.live -= gone;
    out.xt -= gone;
    for (int v = 0; v < g.n(); ++v)
        if (members.test(out.image_of[v])) out.image_of[v] = image;
    out.log.push_back({comp, pair, members.to_vector(), image});
    return out;
}

std::optional<std::vector<int>> check_p6free_slices(const ContractedPrecoloring& cp) {
    Bits sx0 = (cp.base.seed | cp.base.x0) & cp.live;
    static const ColorMask pairs[6] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    for (ColorMask pm : pairs) {
        Bits cls(cp.gt.n());
        for (int v = cp.xt.first(); v >= 0; v = cp.xt.next(v))
            if (cp.M[v] == pm) cls.set(v);
        Bits yst = cp.base.ystar & cp.live;
        for (int t = sx0.first(); t >= 0; t = sx0.next(t)) {
            Bits slice = cls | yst;
            slice.set(t);
            if (auto path = find_induced_path(cp.gt, 6, slice)) return path;
        }
    }
    return std::nullopt;
}

BadSetProfile bad_profile(const ContractedPrecoloring& cp, const Bits& comp) {
    BadSetProfile prof;
    prof.table = bad_set_table(cp.base.g, comp, cp.M);
    Bits sx0 = cp.base.seed | cp.base.x0;
    ColorMask with_nb = 0; // colors of seed/x0 vertices having a neighbor in comp
    for (int u = sx0.first(); u >= 0; u = sx0.next(u))
        if ((cp.base.g.neighbors(u) & comp).any()) with_nb |= color_bit(cp.base.f[u]);
    for (ColorMask q : prof.table.maximal_bad)
        if (mask_size(q) == 2 && (q & with_nb) == q) prof.friendly.push_back(q);
    return prof;
}

std::optional<CompanionTriple> build_companion(const StarredPrecoloring& p,
                                               const SolveConfig& cfg) {
    assert(is_normalized(p));
    CompanionTriple t;
    t.cp.base = p;
    t.cp.gt = p.g;
    t.cp.live = p.g.full_set();
    t.cp.xt = p.x;
    ListAssignment MP = mp(p);
    t.cp.M = update_from(p.g, MP, p.x0, p.ystar);
    t.cp.image_of.resize(p.g.n());
    for (int v = 0; v < p.g.n(); ++v) t.cp.image_of[v] = v;

    t.comps = components(p.g, p.ystar);
    for (const Bits& c : t.comps) t.profiles.push_back(bad_profile(t.cp, c));

    // orientation: first class of the complementary split covering X(C)
    for (size_t ci = 0; ci < t.comps.size(); ++ci) {
        auto classes = attachment_classes(t.cp, t.comps[ci]);
        if (classes.empty()) t.orient_pair.push_back(0b0011);
        else t.orient_pair.push_back(std::min(classes[0], complement(classes[0])));
        if (classes.size() > 2 ||
            (classes.size() == 2 && classes[1] != complement(classes[0])))
            throw InternalInvariantViolation("component attachments are not orthogonal");
    }

    // contraction schedule; a contracted class is monochromatic in every
    // extension, so an internal edge certifies that none exists
    auto cls_stable = [&](size_t ci, ColorMask cls) {
        Bits att = attachments(t.cp.gt, t.comps[ci], t.cp.xt);
        Bits members(t.cp.gt.n());
        for (int v = att.first(); v >= 0; v = att.next(v))
            if (t.cp.M[v] == cls) members.set(v);
        for (int v = members.first(); v >= 0; v = members.next(v))
            if ((t.cp.gt.neighbors(v) & members).any()) return false;
        return true;
    };
    for (size_t ci = 0; ci < t.comps.size(); ++ci) {
        if (t.comps[ci].count() <= 1) continue;
        auto classes = attachment_classes(t.cp, t.comps[ci]);
        if (classes.size() == 2) {
            if (!cls_stable(ci, classes[0]) || !cls_stable(ci, classes[1]))
                return std::nullopt;
            t.cp = contract_neighbors(t.cp, int(ci), classes[0]);
            t.cp = contract_neighbors(t.cp, int(ci), classes[1]);
        } else if (classes.size() == 1 && t.profiles[ci].table.is_bad(complement(classes[0]))) {
            if (!cls_stable(ci, classes[0])) return std::nullopt;
            t.cp = contract_neighbors(t.cp, int(ci), classes[0]);
        }
    }

    // list carving on the contracted X set
    ListAssignment Lx(p.g.n());
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) Lx[v] = t.cp.M[v];
    for (size_t ci = 0; ci < t.comps.size(); ++ci) {
        if (t.comps[ci].count() <= 1) continue;
        const BadSetTable& tab = t.profiles[ci].table;
        Bits att = attachments(t.cp.gt, t.comps[ci], t.cp.xt);
        ColorMask pa = t.orient_pair[ci], pb = complement(pa);
        // 3-set rule: a bad 3-set strips its missing color from that color's class
        for (int q = 1; q <= 4; ++q) {
            if (!tab.is_bad(ColorMask(kAllColors & ~color_bit(q)))) continue;
            ColorMask cls = has_color(pa, q) ? pa : pb;
            for (int x = att.first(); x >= 0; x = att.next(x))
                if (t.cp.M[x] == cls) Lx[x] = ColorMask(Lx[x] & ~color_bit(q));
        }
        // cross-pair rules need both sides realized; then both sides were
        // contracted, so each holds a single image vertex
        int img_a = -1, img_b = -1, cnt_a = 0, cnt_b = 0;
        for (int x = att.first(); x >= 0; x = att.next(x)) {
            if (t.cp.M[x] == pa) { img_a = x; ++cnt_a; }
            if (t.cp.M[x] == pb) { img_b = x; ++cnt_b; }
        }
        if (img_a < 0 || img_b < 0) continue;
        if (cnt_a != 1 || cnt_b != 1)
            throw InternalInvariantViolation("two-sided component with an uncontracted class");
        auto cross_good = [&](int a, int b) {
            return tab.is_good(ColorMask(color_bit(a) | color_bit(b)));
        };
        auto strip = [&](int img, int c) { Lx[img] = ColorMask(Lx[img] & ~color_bit(c)); };
        int a1 = first_color(pa), a2 = only_color(ColorMask(pa & ~color_bit(a1)));
        int b1 = first_color(pb), b2 = only_color(ColorMask(pb & ~color_bit(b1)));
        // one element's cross pairs both good, the other's both bad
        auto rule2 = [&](int e, int o, int img) {
            if (cross_good(e, b1) && cross_good(e, b2) && !cross_good(o, b1) && !cross_good(o, b2))
                strip(img, e);
        };
        rule2(a1, a2, img_a);
        rule2(a2, a1, img_a);
        auto rule2b = [&](int e, int o, int img) {
            if (cross_good(a1, e) && cross_good(a2, e) && !cross_good(a1, o) && !cross_good(a2, o))
                strip(img, e);
        };
        rule2b(b1, b2, img_b);
        rule2b(b2, b1, img_b);
        // exactly one good cross pair
        for (int a : {a1, a2})
            for (int b : {b1, b2}) {
                int oa = (a == a1) ? a2 : a1, ob = (b == b1) ? b2 : b1;
                if (cross_good(a, b) && !cross_good(a, ob) && !cross_good(oa, b) &&
                    !cross_good(oa, ob)) {
                    strip(img_a, a);
                    strip(img_b, b);
                }
            }
    }

    // component stand-ins
    struct ZSpec {
        int comp;
        ColorMask list;
        int reuse; // base vertex id for singleton components, else -1
    };
    std::vector<ZSpec> zs;
    for (size_t ci = 0; ci < t.comps.size(); ++ci) {
        const Bits& comp = t.comps[ci];
        const BadSetTable& tab = t.profiles[ci].table;
        if (comp.count() == 1) {
            int y = comp.first();
            zs.push_back({int(ci), t.cp.M[y], y});
            continue;
        }
        bool all3bad = true;
        for (int q = 1; q <= 4; ++q)
            if (tab.is_good(ColorMask(kAllColors & ~color_bit(q)))) all3bad = false;
        if (all3bad) {
            zs.push_back({int(ci), 0, -1});
            continue;
        }
        Bits att = attachments(t.cp.gt, comp, t.cp.xt);
        ColorMask pa = t.orient_pair[ci], pb = complement(pa);
        bool meets_a = false, meets_b = false;
        for (int x = att.first(); x >= 0; x = att.next(x)) {
            meets_a = meets_a || t.cp.M[x] == pa;
            meets_b = meets_b || t.cp.M[x] == pb;
        }
        if (!meets_a || !meets_b) continue; // one-sided component, no stand-in
        bool all_cross_bad = true;
        for (int a : mask_colors(pa))
            for (int b : mask_colors(pb))
                if (tab.is_good(ColorMask(color_bit(a) | color_bit(b)))) all_cross_bad = false;
        if (all_cross_bad) {
            zs.push_back({int(ci), 0, -1});
            continue;
        }
        for (ColorMask q : t.profiles[ci].friendly)
            zs.push_back({int(ci), complement(q), -1});
    }

    int n_h = p.g.n();
    for (const auto& z : zs)
        if (z.reuse < 0) ++n_h;
    t.h = Graph(n_h);
    t.L = ListAssignment(n_h);
    t.z_comp.assign(n_h, -1);
    t.zset = Bits(n_h);
    Bits xt_h = grow(t.cp.xt, n_h);
    t.hverts = xt_h;
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) t.L[v] = Lx[v];
    int fresh = p.g.n();
    for (const auto& z : zs) {
        int id = z.reuse >= 0 ? z.reuse : fresh++;
        t.zset.set(id);
        t.hverts.set(id);
        t.L[id] = z.list;
        t.z_comp[id] = z.comp;
    }
    // edges: contracted X internals plus stand-in / attachment edges
    for (int u = t.cp.xt.first(); u >= 0; u = t.cp.xt.next(u)) {
        Bits nb = t.cp.gt.neighbors(u) & t.cp.xt;
        for (int v = nb.next(u); v >= 0; v = nb.next(v)) t.h.add_edge(u, v);
    }
    for (int z = t.zset.first(); z >= 0; z = t.zset.next(z)) {
        Bits att = attachments(t.cp.gt, t.comps[size_t(t.z_comp[z])], t.cp.xt);
        for (int x = att.first(); x >= 0; x = att.next(x)) t.h.add_edge(z, x);
    }

    if (cfg.deep_checks) {
        // near-companion bullet assertions
        for (int z = t.zset.first(); z >= 0; z = t.zset.next(z)) {
            if ((t.h.neighbors(z) & t.zset).any())
                throw InternalInvariantViolation("stand-in set is not stable");
            if (t.L[z] == 0) continue;
            const Bits& comp = t.comps[size_t(t.z_comp[z])];
            Bits sx0 = t.cp.base.seed | t.cp.base.x0;
            Bits x0l(t.cp.gt.n());
            for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v))
                if (mask_size(t.L[v]) == 1) x0l.set(v);
            for (int q = 1; q <= 4; ++q) {
                if (has_color(t.L[z], q)) {
                    bool carrier = false;
                    for (int v = comp.first(); v >= 0; v = comp.next(v))
                        if (has_color(t.cp.M[v], q)) carrier = true;
                    if (!carrier)
                        throw InternalInvariantViolation("kept color without a carrier");
                    for (int u = sx0.first(); u >= 0; u = sx0.next(u))
                        if (t.cp.base.f[u] == q && comp.subset_of(t.cp.gt.neighbors(u)))
                            throw InternalInvariantViolation(
                                "kept color with a complete precolored witness");
                } else {
                    bool witness = false;
                    for (int v = comp.first(); v >= 0 && !witness; v = comp.next(v)) {
                        Bits nb = t.cp.gt.neighbors(v);
                        for (int u = nb.first(); u >= 0 && !witness; u = nb.next(u)) {
                            if (sx0.test(u) && t.cp.base.f[u] == q) witness = true;
                            if (x0l.test(u) && only_color(t.L[u]) == q) witness = true;
                        }
                    }
                    if (!witness)
                        throw InternalInvariantViolation("removed color without a witness");
                }
            }
        }
        if (auto path = check_p6free_slices(t.cp))
            throw InternalInvariantViolation("contracted slice contains an induced P6");
        // H slices
        static const ColorMask pairs[6] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
        for (ColorMask pm : pairs) {
            Bits slice = t.zset;
            for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v))
                if (t.cp.M[v] == pm) slice.set(v);
            if (find_induced_path(t.h, 6, slice))
                throw InternalInvariantViolation("H slice contains an induced P6");
        }
    }
    return t;
}

Coloring lift_coloring(const CompanionTriple& t, const Coloring& c) {
    const StarredPrecoloring& p = t.cp.base;
    Coloring out(p.g.n());
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v)) out.set(v, p.f[v]);
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) out.set(v, c[v]);
    for (size_t ci = 0; ci < t.comps.size(); ++ci) {
        const Bits& comp = t.comps[ci];
        if (comp.count() == 1) {
            int y = comp.first();
            if (t.zset.test(y)) {
                out.set(y, c[y]);
                continue;
            }
        }
        Bits att = attachments(t.cp.gt, comp, t.cp.xt);
        ColorMask used = 0;
        for (int x = att.first(); x >= 0; x = att.next(x)) used |= color_bit(c[x]);
        ColorMask tset = ColorMask(kAllColors & ~used);
        ListAssignment rl(p.g.n());
        for (int v = comp.first(); v >= 0; v = comp.next(v))
            rl[v] = ColorMask(t.cp.M[v] & tset);
        auto sub = exact_list_color(p.g, rl, comp);
        if (!sub)
            throw InternalInvariantViolation("component refused its residual color set");
        for (int v = comp.first(); v >= 0; v = comp.next(v)) out.set(v, (*sub)[v]);
    }
    // contracted members take their image's color
    for (int v = 0; v < p.g.n(); ++v)
        if (t.cp.image_of[v] != v) out.set(v, out[t.cp.image_of[v]]);
    if (!check_extension(p, out))
        throw InternalInvariantViolation("lifted coloring fails extension check");
    return out;
}

Bits z_far_side(const CompanionTriple& t, int i) {
    ColorMask pa = ColorMask(color_bit(1) | color_bit(i));
    ColorMask pb = complement(pa);
    Bits out(t.h.n());
    for (int z = t.zset.first(); z >= 0; z = t.zset.next(z)) {
        bool ok = true;
        Bits nb = t.h.neighbors(z);
        for (int x = nb.first(); x >= 0 && ok; x = nb.next(x))
            if (t.cp.M[x] != pa && t.cp.M[x] != pb) ok = false;
        if (ok) out.set(z);
    }
    return out;
}

Bits xt_class(const CompanionTriple& t, ColorMask pair) {
    Bits out(t.h.n());
    for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v))
        if (t.cp.M[v] == pair) out.set(v);
    return out;
}

std::string companion_to_json(const CompanionTriple& t) {
    nlohmann::json j;
    std::vector<std::pair<int, int>> edges;
    for (int u = t.hverts.first(); u >= 0; u = t.hverts.next(u)) {
        Bits nb = t.h.neighbors(u);
        for (int v = nb.next(u); v >= 0; v = nb.next(v)) edges.push_back({u, v});
    }
    j["h_edges"] = edges;
    nlohmann::json lists = nlohmann::json::object();
    for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v))
        lists[std::to_string(v)] = mask_colors(t.L[v]);
    j["lists"] = lists;
    nlohmann::json h = nlohmann::json::object();
    for (int z = t.zset.first(); z >= 0; z = t.zset.next(z))
        h[std::to_string(z)] = t.comps[size_t(t.z_comp[z])].to_vector();
    j["h"] = h;
    return j.dump(2);
}

} // namespace p6c
