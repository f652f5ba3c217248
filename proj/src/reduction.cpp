#include "p6c/reduction.hpp"

#include <algorithm>
#include <cassert>

namespace p6c {

namespace {

struct Comps {
    std::vector<Bits> comp;
    std::vector<int> of;           // vertex -> component index, -1 outside ystar
    std::vector<Bits> att_x;       // attachments of each component inside x
    std::vector<ColorMask> lists;  // union of member lists per component

    Comps(const StarredPrecoloring& p, const ListAssignment& M) : of(p.g.n(), -1) {
        comp = components(p.g, p.ystar);
        for (size_t i = 0; i < comp.size(); ++i) {
            for (int v = comp[i].first(); v >= 0; v = comp[i].next(v)) of[v] = int(i);
            att_x.push_back(attachments(p.g, comp[i], p.x));
            ColorMask m = 0;
            for (int v = comp[i].first(); v >= 0; v = comp[i].next(v)) m |= M[v];
            lists.push_back(m);
        }
    }
};

void complement_pair(int k, int l, int& i, int& j) {
    ColorMask rest = ColorMask(kAllColors & ~(color_bit(k) | color_bit(l)));
    auto cols = mask_colors(rest);
    i = cols[0];
    j = cols[1];
}

// Types whose residual list is {k,i} or {k,j}; deterministic order.
std::vector<TypeClass> slot_types(const StarredPrecoloring& p, int k, int i, int j) {
    ColorMask ki = ColorMask(color_bit(k) | color_bit(i));
    ColorMask kj = ColorMask(color_bit(k) | color_bit(j));
    std::vector<TypeClass> out;
    for (auto& t : x_types(p))
        if (t.residual == ki || t.residual == kj) out.push_back(t);
    return out;
}

size_t checked_product(const std::vector<size_t>& counts, const SolveConfig& cfg,
                       const char* stage) {
    size_t prod = 1;
    for (size_t c : counts) {
        if (c != 0 && prod > cfg.member_cap / c)
            throw BudgetExceeded(std::string(stage) + ": instance exceeds desk-scale budget");
        prod *= c;
    }
    return prod;
}

void push_member(EquivalentCollection& out, std::optional<StarredPrecoloring> q,
                 Provenance prov, const SolveConfig& cfg) {
    if (!q) return;
    auto qq = normalize(*q);
    if (!qq) return; // provably no extension on this branch
    if (out.size() >= cfg.member_cap)
        throw BudgetExceeded(prov.stage + ": member cap exceeded");
    out.push_back({std::move(*qq), std::move(prov)});
}

// Shared skeleton of the clean and tidy steps. `qualifies` marks the
// components usable as branch witnesses; attachments of qualifying
// components inside each slot type get moved off the branch color.
EquivalentCollection seed_move_step(const StarredPrecoloring& p0, const ListAssignment& M,
                                    int k, int l, const std::vector<bool>& qualifies,
                                    const Comps& cc, const char* stage,
                                    const SolveConfig& cfg) {
    int i, j;
    complement_pair(k, l, i, j);
    auto types = slot_types(p0, k, i, j);
    const int m = int(types.size());

    // options per slot: -1 = empty, otherwise index into pairs (x, comp)
    std::vector<std::vector<std::pair<int, int>>> options(m);
    std::vector<size_t> counts;
    for (int r = 0; r < m; ++r) {
        for (int x = types[r].members.first(); x >= 0; x = types[r].members.next(x))
            for (size_t ci = 0; ci < cc.comp.size(); ++ci)
                if (qualifies[ci] && cc.att_x[ci].test(x)) options[r].push_back({x, int(ci)});
        counts.push_back(options[r].size() + 1);
    }
    checked_product(counts, cfg, stage);

    EquivalentCollection out;
    std::vector<int> idx(m, -1); // -1 = empty slot, else option index
    while (true) {
        MoveSet moves;
        for (int r = 0; r < m; ++r) {
            int other = only_color(ColorMask(types[r].residual & ~color_bit(k)));
            if (idx[r] >= 0) {
                auto [xr, cr] = options[r][idx[r]];
                moves.to_seed.push_back({xr, k});
                Bits target = types[r].members & cc.att_x[cr];
                target.reset(xr);
                for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
                    if (!qualifies[ci]) continue;
                    Bits moved = types[r].members & cc.att_x[ci];
                    if (moved.empty() || !moved.subset_of(target)) continue;
                    for (int v = moved.first(); v >= 0; v = moved.next(v))
                        moves.to_x0.push_back({v, other});
                }
            } else {
                for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
                    if (!qualifies[ci]) continue;
                    Bits moved = types[r].members & cc.att_x[ci];
                    for (int v = moved.first(); v >= 0; v = moved.next(v))
                        moves.to_x0.push_back({v, other});
                }
            }
        }
        {
            Provenance prov{stage, k, l, {}};
            for (int r = 0; r < m; ++r) {
                if (idx[r] < 0) {
                    prov.descriptor.push_back(-1);
                    prov.descriptor.push_back(-1);
                } else {
                    prov.descriptor.push_back(options[r][idx[r]].first);
                    prov.descriptor.push_back(options[r][idx[r]].second);
                }
            }
            push_member(out, move_to_seed(p0, M, moves), std::move(prov), cfg);
        }
        // odometer
        int r = 0;
        while (r < m) {
            if (++idx[r] < int(options[r].size())) break;
            idx[r] = -1;
            ++r;
        }
        if (r == m) break;
    }
    return out;
}

} // namespace

EquivalentCollection make_clean_step(const StarredPrecoloring& p, int k, int l,
                                     const SolveConfig& cfg) {
    auto p0 = normalize(p);
    if (!p0) return {};
    ListAssignment M = mp(*p0);
    if (stage_predicate(*p0, M, StagePred::Clean, k, l).holds)
        return {{*p0, {"clean", k, l, {}}}};
    int i, j;
    complement_pair(k, l, i, j);
    Comps cc(*p0, M);
    // Y members: i,j in M(y) and some component mate carries k
    std::vector<bool> qualifies(cc.comp.size(), false);
    ColorMask need = ColorMask(color_bit(i) | color_bit(j));
    for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
        if (!has_color(cc.lists[ci], k)) continue;
        for (int y = cc.comp[ci].first(); y >= 0; y = cc.comp[ci].next(y))
            if ((M[y] & need) == need) { qualifies[ci] = true; break; }
    }
    return seed_move_step(*p0, M, k, l, qualifies, cc, "clean", cfg);
}

EquivalentCollection make_tidy_step(const StarredPrecoloring& p, int k, int l,
                                    const SolveConfig& cfg) {
    auto p0 = normalize(p);
    if (!p0) return {};
    ListAssignment M = mp(*p0);
    if (stage_predicate(*p0, M, StagePred::Tidy, k, l).holds)
        return {{*p0, {"tidy", k, l, {}}}};
    int i, j;
    complement_pair(k, l, i, j);
    Comps cc(*p0, M);
    // qualifying component: carries k somewhere, and inside the l-carrying
    // part some connected piece holds both an i-carrier and a j-carrier
    std::vector<bool> qualifies(cc.comp.size(), false);
    for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
        if (!has_color(cc.lists[ci], k)) continue;
        Bits lset(p0->g.n());
        for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
            if (has_color(M[v], l)) lset.set(v);
        for (const Bits& piece : components(p0->g, lset)) {
            bool hi = false, hj = false;
            for (int v = piece.first(); v >= 0; v = piece.next(v)) {
                hi = hi || has_color(M[v], i);
                hj = hj || has_color(M[v], j);
            }
            if (hi && hj) { qualifies[ci] = true; break; }
        }
    }
    return seed_move_step(*p0, M, k, l, qualifies, cc, "tidy", cfg);
}

namespace {

// Shared skeleton of the orderly and spotless steps: pairs of one type from
// each residual family, Y-vertex component witnesses, moves into x0 only.
EquivalentCollection x0_move_step(const StarredPrecoloring& p0, const ListAssignment& M,
                                  int k, int l, bool need_attachment, const char* stage,
                                  const SolveConfig& cfg) {
    int i, j;
    complement_pair(k, l, i, j);
    ColorMask ki = ColorMask(color_bit(k) | color_bit(i));
    ColorMask need = ColorMask(color_bit(i) | color_bit(j));
    auto types = slot_types(p0, k, i, j);
    std::vector<int> fam_i, fam_j; // indices into types
    for (size_t t = 0; t < types.size(); ++t)
        (types[t].residual == ki ? fam_i : fam_j).push_back(int(t));

    Comps cc(p0, M);
    Bits yset(p0.g.n());
    for (int y = p0.ystar.first(); y >= 0; y = p0.ystar.next(y))
        if ((M[y] & need) == need) yset.set(y);

    // slot options: components containing a Y-vertex (and, for the orderly
    // step, attached to the slot's type)
    auto slot_options = [&](int t) {
        std::vector<int> opts;
        for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
            if (!(cc.comp[ci] & yset).any()) continue;
            if (need_attachment && !(types[t].members & cc.att_x[ci]).any()) continue;
            opts.push_back(int(ci));
        }
        return opts;
    };
    const int ns = int(fam_i.size()), nq = int(fam_j.size());
    std::vector<std::vector<int>> s_opts(ns), q_opts(nq);
    std::vector<size_t> counts;
    for (int a = 0; a < ns; ++a) { s_opts[a] = slot_options(fam_i[a]); counts.push_back(s_opts[a].size() + 1); }
    for (int b = 0; b < nq; ++b) { q_opts[b] = slot_options(fam_j[b]); counts.push_back(q_opts[b].size() + 1); }
    checked_product(counts, cfg, stage);

    EquivalentCollection out;
    std::vector<int> idx(ns + nq, -1);
    while (true) {
        MoveSet moves;
        bool drop = false;
        for (int a = 0; a < ns && !drop; ++a) {
            const Bits& xti = types[fam_i[a]].members;
            Bits ti(p0.g.n());
            if (idx[a] >= 0) ti = xti & cc.att_x[s_opts[a][idx[a]]];
            for (int b = 0; b < nq && !drop; ++b) {
                const Bits& xtj = types[fam_j[b]].members;
                Bits tj(p0.g.n());
                if (idx[ns + b] >= 0) tj = xtj & cc.att_x[q_opts[b][idx[ns + b]]];
                bool ca = idx[a] >= 0, cb = idx[ns + b] >= 0;
                if (ca && cb) {
                    for (int u = ti.first(); u >= 0 && !drop; u = ti.next(u))
                        if ((p0.g.neighbors(u) & tj).any()) drop = true;
                    if (drop) break;
                }
                if (ca) for (int v = ti.first(); v >= 0; v = ti.next(v)) moves.to_x0.push_back({v, k});
                if (cb) for (int v = tj.first(); v >= 0; v = tj.next(v)) moves.to_x0.push_back({v, k});
                Bits t = ti | tj;
                for (int y = yset.first(); y >= 0 && !drop; y = yset.next(y)) {
                    const Bits& att = cc.att_x[cc.of[y]];
                    if (!t.subset_of(att)) continue;
                    Bits resi = xti & att;
                    resi -= ti;
                    Bits resj = xtj & att;
                    resj -= tj;
                    if (resi.empty() || resj.empty()) continue;
                    if (!has_color(M[y], l)) { drop = true; break; }
                    moves.to_x0.push_back({y, l});
                }
            }
        }
        if (!drop) {
            Provenance prov{stage, k, l, {}};
            for (int a = 0; a < ns; ++a)
                prov.descriptor.push_back(idx[a] < 0 ? -1 : s_opts[a][idx[a]]);
            for (int b = 0; b < nq; ++b)
                prov.descriptor.push_back(idx[ns + b] < 0 ? -1 : q_opts[b][idx[ns + b]]);
            push_member(out, move_to_seed(p0, M, moves), std::move(prov), cfg);
        }
        int r = 0;
        while (r < ns + nq) {
            int lim = r < ns ? int(s_opts[r].size()) : int(q_opts[r - ns].size());
            if (++idx[r] < lim) break;
            idx[r] = -1;
            ++r;
        }
        if (r == ns + nq) break;
    }
    return out;
}

} // namespace

EquivalentCollection make_orderly_step(const StarredPrecoloring& p, int k, int l,
                                       const SolveConfig& cfg) {
    auto p0 = normalize(p);
    if (!p0) return {};
    ListAssignment M = mp(*p0);
    if (stage_predicate(*p0, M, StagePred::Orderly, k, l).holds)
        return {{*p0, {"orderly", k, l, {}}}};
    return x0_move_step(*p0, M, k, l, /*need_attachment=*/true, "orderly", cfg);
}

EquivalentCollection make_spotless_step(const StarredPrecoloring& p, int k, int l,
                                        const SolveConfig& cfg) {
    auto p0 = normalize(p);
    if (!p0) return {};
    ListAssignment M = mp(*p0);
    if (stage_predicate(*p0, M, StagePred::Spotless, k, l).holds)
        return {{*p0, {"spotless", k, l, {}}}};
    return x0_move_step(*p0, M, k, l, /*need_attachment=*/true, "spotless", cfg);
}

namespace {

using StepFn = EquivalentCollection (*)(const StarredPrecoloring&, int, int, const SolveConfig&);

EquivalentCollection all_pairs(const StarredPrecoloring& p, StepFn step, const SolveConfig& cfg) {
    auto p0 = normalize(p);
    if (!p0) return {};
    EquivalentCollection col{{*p0, {}}};
    for (int k = 1; k <= 4; ++k) {
        for (int l = 1; l <= 4; ++l) {
            if (l == k) continue;
            EquivalentCollection next;
            for (const Member& mem : col) {
                auto part = step(mem.p, k, l, cfg);
                for (auto& q : part) {
                    if (next.size() >= cfg.member_cap)
                        throw BudgetExceeded("stage composition: member cap exceeded");
                    next.push_back(std::move(q));
                }
            }
            col = std::move(next);
        }
    }
    return col;
}

} // namespace

EquivalentCollection make_clean(const StarredPrecoloring& p, const SolveConfig& cfg) {
    return all_pairs(p, &make_clean_step, cfg);
}
EquivalentCollection make_tidy(const StarredPrecoloring& p, const SolveConfig& cfg) {
    return all_pairs(p, &make_tidy_step, cfg);
}
EquivalentCollection make_orderly(const StarredPrecoloring& p, const SolveConfig& cfg) {
    return all_pairs(p, &make_orderly_step, cfg);
}
EquivalentCollection make_spotless(const StarredPrecoloring& p, const SolveConfig& cfg) {
    return all_pairs(p, &make_spotless_step, cfg);
}

EquivalentCollection make_near_orthogonal(const StarredPrecoloring& p, const SolveConfig& cfg) {
    EquivalentCollection out;
    for (const Member& a : make_clean(p, cfg))
        for (const Member& b : make_tidy(a.p, cfg))
            for (const Member& c : make_orderly(b.p, cfg))
                for (Member& d : make_spotless(c.p, cfg)) {
                    ListAssignment M = mp(d.p);
                    if (!stage_predicate(d.p, M, StagePred::NearOrthogonal).holds)
                        throw InternalInvariantViolation(
                            "tidy+spotless member is not near-orthogonal");
                    if (out.size() >= cfg.member_cap)
                        throw BudgetExceeded("near: member cap exceeded");
                    d.prov.stage = "near";
                    out.push_back(std::move(d));
                }
    return out;
}

EquivalentCollection make_smooth_candidates(const StarredPrecoloring& p, const SolveConfig& cfg) {
    auto p0n = normalize(p);
    if (!p0n) return {};
    const StarredPrecoloring& p0 = *p0n;
    ListAssignment M = mp(p0);
    auto types = x_types(p0);
    Comps cc(p0, M);

    // ordered pairs of types sharing exactly one residual color
    struct Pair {
        int a, b;
        int shared;
    };
    std::vector<Pair> tp;
    for (size_t a = 0; a < types.size(); ++a)
        for (size_t b = 0; b < types.size(); ++b) {
            if (a == b) continue;
            ColorMask common = ColorMask(types[a].residual & types[b].residual);
            if (mask_size(common) == 1) tp.push_back({int(a), int(b), only_color(common)});
        }

    // options per pair: (witness y, xa, xb) with y complete to both, xa
    // anticomplete xb, and residual(a) within M(y)
    struct Opt {
        int y, xa, xb;
    };
    std::vector<std::vector<Opt>> options(tp.size());
    std::vector<size_t> counts;
    for (size_t t = 0; t < tp.size(); ++t) {
        ColorMask la = types[tp[t].a].residual;
        for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
            int y = -1;
            for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
                if ((M[v] & la) == la) { y = v; break; }
            if (y < 0) continue;
            Bits xa_set = types[tp[t].a].members & cc.att_x[ci];
            Bits xb_set = types[tp[t].b].members & cc.att_x[ci];
            for (int xa = xa_set.first(); xa >= 0; xa = xa_set.next(xa))
                for (int xb = xb_set.first(); xb >= 0; xb = xb_set.next(xb))
                    if (!p0.g.adjacent(xa, xb)) options[t].push_back({y, xa, xb});
        }
        counts.push_back(options[t].size() + 1);
    }
    checked_product(counts, cfg, "smooth");

    EquivalentCollection out{{p0, {"smooth", 0, 0, {}}}}; // the collection contains p itself
    std::vector<int> idx(tp.size(), -1);
    if (tp.empty()) return out;
    while (true) {
        // advance odometer first so the all-empty tuple (= p itself) is not duplicated
        size_t r = 0;
        while (r < tp.size()) {
            if (++idx[r] < int(options[r].size())) break;
            idx[r] = -1;
            ++r;
        }
        if (r == tp.size()) break;
        MoveSet moves;
        Provenance prov{"smooth", 0, 0, {}};
        for (size_t t = 0; t < tp.size(); ++t) {
            if (idx[t] < 0) {
                prov.descriptor.insert(prov.descriptor.end(), {-1, -1, -1});
                continue;
            }
            const Opt& o = options[t][idx[t]];
            moves.to_seed.push_back({o.xa, tp[t].shared});
            moves.to_seed.push_back({o.xb, tp[t].shared});
            prov.descriptor.insert(prov.descriptor.end(), {o.y, o.xa, o.xb});
        }
        push_member(out, move_to_seed(p0, M, moves), std::move(prov), cfg);
    }
    return out;
}

namespace {

// Induced subgraph on keep, with dense reindexing.
StarredPrecoloring induced_precoloring(const StarredPrecoloring& p, const Bits& keep,
                                       std::vector<int>& old_of_new) {
    old_of_new.clear();
    std::vector<int> new_of_old(p.g.n(), -1);
    for (int v = keep.first(); v >= 0; v = keep.next(v)) {
        new_of_old[v] = int(old_of_new.size());
        old_of_new.push_back(v);
    }
    int n = int(old_of_new.size());
    StarredPrecoloring q;
    q.g = Graph(n);
    for (int v = 0; v < n; ++v) {
        Bits nb = p.g.neighbors(old_of_new[v]) & keep;
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (new_of_old[u] > v) q.g.add_edge(v, new_of_old[u]);
    }
    q.seed = Bits(n);
    q.x0 = Bits(n);
    q.x = Bits(n);
    q.ystar = Bits(n);
    q.f.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        int o = old_of_new[v];
        if (p.seed.test(o)) q.seed.set(v);
        if (p.x0.test(o)) q.x0.set(v);
        if (p.x.test(o)) q.x.set(v);
        if (p.ystar.test(o)) q.ystar.set(v);
        q.f[v] = p.f[o];
    }
    return q;
}

} // namespace

std::optional<OrthResult> orthogonalize(const StarredPrecoloring& p, const SolveConfig& cfg) {
    (void)cfg;
    auto p0n = normalize(p);
    if (!p0n) return std::nullopt;
    StarredPrecoloring p0 = *p0n;
    ListAssignment M = mp(p0);
    ListAssignment L = lp(p0);
    Comps cc(p0, M);

    Bits wset(p0.g.n()); // union of non-wholesome components
    std::vector<bool> wholesome(cc.comp.size(), false);
    for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
        for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
            if (mask_size(M[v]) >= 3) { wholesome[ci] = true; break; }
        if (!wholesome[ci]) wset |= cc.comp[ci];
    }

    MoveSet moves;
    Bits zset(p0.g.n());
    std::vector<std::pair<int, int>> free_colors; // in p0 ids
    for (size_t ci = 0; ci < cc.comp.size(); ++ci) {
        if (!wholesome[ci]) continue;
        std::vector<ColorMask> masks;
        for (int v = cc.att_x[ci].first(); v >= 0; v = cc.att_x[ci].next(v)) masks.push_back(M[v]);
        if (orthogonal_masks(masks)) continue;
        // exactly two attachment classes sharing one color
        std::vector<ColorMask> distinct;
        for (ColorMask m : masks)
            if (std::find(distinct.begin(), distinct.end(), m) == distinct.end())
                distinct.push_back(m);
        if (distinct.size() != 2)
            throw InternalInvariantViolation("troublesome component with unexpected class count");
        ColorMask m1 = distinct[0], m2 = distinct[1];
        ColorMask shared = ColorMask(m1 & m2);
        if (mask_size(shared) != 1)
            throw InternalInvariantViolation("troublesome component without a shared-color split");
        int k = only_color(shared);
        int i0 = only_color(ColorMask(m1 & ~shared));
        int j0 = only_color(ColorMask(m2 & ~shared));
        int l0 = only_color(ColorMask(kAllColors & ~(color_bit(k) | color_bit(i0) | color_bit(j0))));
        // orient so that some component vertex carries {k, i0, l0}
        ColorMask want = ColorMask(color_bit(k) | color_bit(i0) | color_bit(l0));
        bool found = false;
        for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
            if (M[v] == want) { found = true; break; }
        if (!found) {
            std::swap(i0, j0);
            want = ColorMask(color_bit(k) | color_bit(i0) | color_bit(l0));
            bool f2 = false;
            for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
                if (M[v] == want) { f2 = true; break; }
            if (!f2)
                throw InternalInvariantViolation(
                    "troublesome component without a wholesome orientation vertex");
        }
        ColorMask kj0 = ColorMask(color_bit(k) | color_bit(j0));
        bool case1 = false;
        for (int v = cc.comp[ci].first(); v >= 0; v = cc.comp[ci].next(v))
            if (M[v] == kj0) { case1 = true; break; }
        if (case1) {
            Bits mv = cc.att_x[ci] & xij(p0, M, k, i0);
            for (int v = mv.first(); v >= 0; v = mv.next(v)) moves.to_x0.push_back({v, i0});
            continue;
        }
        int z = cc.comp[ci].first();
        bool case2 = cc.comp[ci].count() >= 2;
        if (!case2) {
            Bits nb = p0.g.neighbors(z) & p0.x0;
            for (int u = nb.first(); u >= 0; u = nb.next(u))
                if (p0.f[u] == l0) { case2 = true; break; }
        }
        if (case2) {
            Bits mv = cc.att_x[ci] & xij(p0, M, k, j0);
            for (int v = mv.first(); v >= 0; v = mv.next(v)) moves.to_x0.push_back({v, j0});
            continue;
        }
        // singleton far component: remove it, record the free color
        zset.set(z);
        free_colors.push_back({z, l0});
        Bits nb = p0.g.neighbors(z);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (has_color(L[u], l0))
                throw InternalInvariantViolation("free color appears in a neighbor list");
    }

    auto moved = move_to_seed(p0, M, moves);
    if (!moved) return std::nullopt; // conflicting forced colors: branch is not smooth
    StarredPrecoloring q = *moved;
    // non-wholesome components become x-vertices; far set leaves the graph
    q.x |= wset;
    q.ystar -= wset;
    OrthResult res;
    res.removed = zset;
    Bits keep = q.g.full_set() - zset;
    std::vector<int> old_of_new;
    StarredPrecoloring sub = induced_precoloring(q, keep, old_of_new);
    auto subn = normalize(sub);
    if (!subn) return std::nullopt;
    res.p = std::move(*subn);
    for (auto [z, c] : free_colors) res.free_colors.push_back({z, c});
    ListAssignment MM = mp(res.p);
    if (!stage_predicate(res.p, MM, StagePred::Orthogonal).holds)
        throw InternalInvariantViolation("orthogonalize produced a non-orthogonal precoloring");
    res.old_of_new = std::move(old_of_new);
    return res;
}

std::vector<OrthBranch> to_orthogonal_collection(const StarredPrecoloring& p,
                                                 const SolveConfig& cfg) {
    std::vector<OrthBranch> out;
    for (const Member& a : make_near_orthogonal(p, cfg)) {
        for (const Member& b : make_smooth_candidates(a.p, cfg)) {
            auto r = orthogonalize(b.p, cfg);
            if (!r) continue;
            if (out.size() >= cfg.member_cap)
                throw BudgetExceeded("orthogonal collection: member cap exceeded");
            OrthBranch br;
            br.p = std::move(r->p);
            br.free_colors = std::move(r->free_colors);
            br.old_of_new = std::move(r->old_of_new);
            br.n_parent = p.g.n();
            br.prov = b.prov;
            br.prov.stage = "orthogonalize";
            out.push_back(std::move(br));
        }
    }
    return out;
}

Coloring lift_orth_branch(const OrthBranch& b, const Coloring& c) {
    Coloring out(b.n_parent);
    for (int v = 0; v < int(b.old_of_new.size()); ++v) out.set(b.old_of_new[v], c[v]);
    for (auto [z, col] : b.free_colors) out.set(z, col);
    return out;
}

} // namespace p6c
