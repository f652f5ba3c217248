#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "p6c/farside.hpp"
#include "p6c/oracle.hpp"
#include "p6c/reduction.hpp"

using namespace p6c;

namespace {

struct Harvest {
    CompanionTriple t;
    InsulatedLists il;
};

// Insulated sub-instances drawn from the full pipeline on random inputs.
std::vector<Harvest> harvest(std::mt19937_64& rng, int n, int want) {
    SolveConfig cfg;
    cfg.member_cap = 200000;
    std::vector<Harvest> out;
    while (int(out.size()) < want) {
        GenParams prm;
        prm.n = n;
        prm.seed_max = 4;
        StarredPrecoloring p = gen_excellent(prm, rng());
        auto branches = to_orthogonal_collection(p, cfg);
        for (auto& b : branches) {
            auto topt = build_companion(b.p, cfg);
            if (!topt) continue;
            CompanionTriple& t = *topt;
            bool empty_list = false;
            for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v))
                if (t.L[v] == 0) empty_list = true;
            if (empty_list) continue;
            for (auto& il : insulate_all(t, t.L, cfg)) {
                out.push_back({t, il});
                if (int(out.size()) >= want) break;
            }
            if (int(out.size()) >= want) break;
        }
    }
    return out;
}

} // namespace

TEST_CASE("preprocess: identity without singletons or straddling vertices") {
    std::mt19937_64 rng(51);
    auto hs = harvest(rng, 12, 3);
    for (auto& [t, il] : hs) {
        ListAssignment proc = preprocess_lists(t, il.L, 0b0011);
        for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v))
            CHECK((proc[v] & ~il.L[v]) == 0);
        // stage lists are already exhaustively updated, so plain updating is
        // a no-op; only the stand-in strips may fire
        ListAssignment upd = update_exhaustively(t.h, il.L, t.hverts);
        CHECK(upd == il.L);
        for (int v = t.cp.xt.first(); v >= 0; v = t.cp.xt.next(v)) CHECK(proc[v] == il.L[v]);
    }
}

TEST_CASE("encoding: empty far side yields an empty instance; unit clauses fire") {
    std::mt19937_64 rng(52);
    int with_far = 0;
    for (int round = 0; round < 40 && with_far < 8; ++round) {
        auto hs = harvest(rng, 13, 4);
        for (auto& [t, il] : hs) {
        for (int i = 2; i <= 4; ++i) {
            const auto& cut = il.cut[size_t(i - 2)];
            if (!cut) continue;
            ++with_far;
            ListAssignment proc = preprocess_lists(t, il.L, cut->pa);
            FarSideEncoding enc = build_encoding(t, proc, *cut);
            CHECK(enc.inst.vars() == cut->A.count());
            ColorMask pb = ColorMask(kAllColors & ~cut->pa);
            for (int z = cut->A.first(); z >= 0; z = cut->A.next(z)) {
                bool has7 = false, has8 = false;
                for (size_t ci = 0; ci < enc.tags.size(); ++ci) {
                    if (enc.tags[ci].type == 7 && enc.tags[ci].z1 == z) has7 = true;
                    if (enc.tags[ci].type == 8 && enc.tags[ci].z1 == z) has8 = true;
                }
                CHECK(has7 == ((proc[z] & ~cut->pa) == 0));
                CHECK(has8 == ((proc[z] & ~pb) == 0));
            }
            // every clause trigger re-derivable: spot check tags reference far vertices
            for (const auto& tag : enc.tags) {
                CHECK(cut->A.test(tag.z1));
                CHECK(cut->A.test(tag.z2));
            }
        }
        }
    }
    CHECK(with_far > 0);
}

TEST_CASE("solve_far_side agrees with brute force on harvested sub-instances") {
    std::mt19937_64 rng(53);
    int cases = 0, positive = 0;
    while (cases < 60) {
        auto hs = harvest(rng, 12, 4);
        for (auto& [t, il] : hs) {
            for (int i = 2; i <= 4; ++i) {
                const auto& cut = il.cut[size_t(i - 2)];
                if (!cut) continue;
                ++cases;
                Bits dom = cut->A | cut->D;
                auto got = solve_far_side(t, il.L, *cut);
                bool ref = test_oracle::list_colorable(t.h, il.L, dom);
                CHECK(got.has_value() == ref);
                if (got) {
                    ++positive;
                    CHECK(proper_on(t.h, *got, dom));
                    CHECK(respects_lists(il.L, *got, dom));
                }
                if (cases >= 60) break;
            }
            if (cases >= 60) break;
        }
    }
    CHECK(positive > 0);
}

TEST_CASE("dimacs dump carries one comment per clause") {
    std::mt19937_64 rng(54);
    auto hs = harvest(rng, 12, 4);
    for (auto& [t, il] : hs) {
        for (int i = 2; i <= 4; ++i) {
            const auto& cut = il.cut[size_t(i - 2)];
            if (!cut) continue;
            ListAssignment proc = preprocess_lists(t, il.L, cut->pa);
            FarSideEncoding enc = build_encoding(t, proc, *cut);
            std::string text = encoding_to_dimacs(enc);
            size_t comments = 0, clauses = 0;
            for (size_t pos = 0; pos < text.size(); ++pos) {
                if (text.compare(pos, 7, "c type ") == 0) ++comments;
                if (text[pos] == '\n' && pos + 1 < text.size() &&
                    (isdigit(text[pos + 1]) || text[pos + 1] == '-'))
                    ++clauses;
            }
            CHECK(comments == enc.inst.clauses().size());
            return;
        }
    }
}

namespace {

// Minimal hand-made triple: the far-side machinery only touches h, hverts,
// the class assignment (cp.M over cp.xt), and zset.
struct SyntheticSpec {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, ColorMask>> classes; // vertex -> class mask
    std::vector<int> zs;
    std::vector<ColorMask> lists; // per vertex
};

CompanionTriple make_synthetic(const SyntheticSpec& spec) {
    CompanionTriple t;
    t.h = Graph(spec.n);
    for (auto [u, v] : spec.edges) t.h.add_edge(u, v);
    t.hverts = Bits(spec.n);
    t.zset = Bits(spec.n);
    t.cp.base.g = Graph(spec.n);
    t.cp.gt = Graph(spec.n);
    t.cp.xt = Bits(spec.n);
    t.cp.M = ListAssignment(spec.n);
    t.cp.live = Bits(spec.n);
    t.z_comp.assign(size_t(spec.n), -1);
    t.L = ListAssignment(spec.n);
    for (auto [v, m] : spec.classes) {
        t.cp.xt.set(v);
        t.cp.M[v] = m;
        t.hverts.set(v);
    }
    for (int z : spec.zs) {
        t.zset.set(z);
        t.hverts.set(z);
    }
    for (int v = 0; v < spec.n; ++v) t.L[v] = spec.lists[size_t(v)];
    return t;
}

std::optional<ChromaticCutset> synthetic_cut(const CompanionTriple& t, const ListAssignment& L) {
    auto cut = extract_cutset(t, L, 2);
    if (!cut) return std::nullopt;
    if (is_insulating(t.h, t.hverts, L, *cut)) return std::nullopt;
    return cut;
}

} // namespace

TEST_CASE("type-1 pattern: nine-vertex infeasible configuration") {
    // d0-d1 is a {1,2}-class edge; f0-f1 and g0-g1 are {3,4}-class edges.
    // Stand-ins 6, 7, 8 end up needing pairwise incompatible sides: 8 sees
    // both sides of the d component, 6 and 7 collide on d0 and each is
    // chained to 8 across a far-pair component.
    SyntheticSpec spec;
    spec.n = 9;
    spec.edges = {{0, 1}, {2, 3}, {4, 5},          // d0-d1, f0-f1, g0-g1
                  {6, 0}, {7, 0}, {8, 0}, {8, 1},  // far contacts on d
                  {6, 3}, {8, 2},                  // opposite sides of f
                  {7, 4}, {8, 5}};                 // opposite sides of g
    spec.classes = {{0, 0b0011}, {1, 0b0011}, {2, 0b1100}, {3, 0b1100},
                    {4, 0b1100}, {5, 0b1100}};
    spec.zs = {6, 7, 8};
    spec.lists = {0b0011, 0b0011, 0b1100, 0b1100, 0b1100, 0b1100,
                  0b0101, 0b0110, 0b0101}; // {1,3}, {2,3}, {1,3}
    CompanionTriple t = make_synthetic(spec);
    ListAssignment L = update_exhaustively(t.h, t.L, t.hverts);
    REQUIRE(L == t.L);
    auto cut = synthetic_cut(t, L);
    REQUIRE(cut.has_value());
    CHECK(cut->D.count() == 6);
    ListAssignment proc = preprocess_lists(t, L, cut->pa);
    CHECK(proc[8] == ColorMask(0b0100)); // both-sides strip pins 8 off the pair
    FarSideEncoding enc = build_encoding(t, proc, *cut);
    bool family1 = false, family5 = false, family8 = false;
    for (auto& tag : enc.tags) {
        family1 |= (tag.type == 1);
        family5 |= (tag.type == 5);
        family8 |= (tag.type == 8);
    }
    CHECK(family1);
    CHECK(family5);
    CHECK(family8);
    Bits dom = cut->A | cut->D;
    auto got = solve_far_side(t, L, *cut);
    CHECK(!got.has_value());
    CHECK(!test_oracle::list_colorable(t.h, L, dom));
}

TEST_CASE("type-1 clause fires and the instance stays solvable via the off side") {
    SyntheticSpec spec;
    spec.n = 4;
    spec.edges = {{0, 1}, {2, 0}, {3, 0}};
    spec.classes = {{0, 0b0011}, {1, 0b0011}};
    spec.zs = {2, 3};
    spec.lists = {0b0011, 0b0011, 0b0101, 0b0110}; // z lists {1,3}, {2,3}
    CompanionTriple t = make_synthetic(spec);
    ListAssignment L = update_exhaustively(t.h, t.L, t.hverts);
    REQUIRE(L == t.L); // no singleton cascade this time
    auto cut = synthetic_cut(t, L);
    REQUIRE(cut.has_value());
    ListAssignment proc = preprocess_lists(t, L, cut->pa);
    FarSideEncoding enc = build_encoding(t, proc, *cut);
    bool family1 = false;
    for (auto& tag : enc.tags) family1 |= (tag.type == 1);
    CHECK(family1);
    auto got = solve_far_side(t, L, *cut);
    Bits dom = cut->A | cut->D;
    REQUIRE(got.has_value());
    CHECK(test_oracle::list_colorable(t.h, L, dom));
    CHECK(proper_on(t.h, *got, dom));
    CHECK(respects_lists(L, *got, dom));
}

TEST_CASE("type-2 and type-5 clauses fire on opposite-side contacts") {
    // z2 and z3 share the {1,2}-half {1} but touch opposite sides of the
    // class edge; their {3,4}-halves are equal and touch opposite sides of a
    // {3,4}-class edge as well
    SyntheticSpec spec;
    spec.n = 6;
    spec.edges = {{0, 1}, {4, 5}, {2, 0}, {3, 1}, {2, 4}, {3, 5}};
    spec.classes = {{0, 0b0011}, {1, 0b0011}, {4, 0b1100}, {5, 0b1100}};
    spec.zs = {2, 3};
    spec.lists = {0b0011, 0b0011, 0b0101, 0b0101, 0b1100, 0b1100};
    CompanionTriple t = make_synthetic(spec);
    ListAssignment L = update_exhaustively(t.h, t.L, t.hverts);
    auto cut = synthetic_cut(t, L);
    REQUIRE(cut.has_value());
    ListAssignment proc = preprocess_lists(t, L, cut->pa);
    FarSideEncoding enc = build_encoding(t, proc, *cut);
    bool family2 = false, family5 = false;
    for (auto& tag : enc.tags) {
        family2 |= (tag.type == 2);
        family5 |= (tag.type == 5);
    }
    CHECK(family2);
    CHECK(family5);
    auto got = solve_far_side(t, L, *cut);
    Bits dom = cut->A | cut->D;
    CHECK(got.has_value() == test_oracle::list_colorable(t.h, L, dom));
}

TEST_CASE("synthetic far-side fuzz: exact agreement with brute force") {
    std::mt19937_64 rng(59);
    int solved = 0, skipped_shape = 0, skipped_guarantee = 0, unsat = 0;
    long fired[9] = {};
    for (int it = 0; it < 4000; ++it) {
        SyntheticSpec spec;
        int ca = 1 + int(rng() % 2), cb = 1 + int(rng() % 2); // class comp counts
        int za = 2 + int(rng() % 3);
        std::vector<int> class_a, class_b, zs;
        int next = 0;
        for (int c = 0; c < ca; ++c) {
            int sz = 1 + int(rng() % 2);
            for (int k = 0; k < sz; ++k) {
                spec.classes.push_back({next, 0b0011});
                class_a.push_back(next);
                if (k > 0) spec.edges.push_back({next - 1, next});
                ++next;
            }
        }
        for (int c = 0; c < cb; ++c) {
            int sz = 1 + int(rng() % 2);
            for (int k = 0; k < sz; ++k) {
                spec.classes.push_back({next, 0b1100});
                class_b.push_back(next);
                if (k > 0) spec.edges.push_back({next - 1, next});
                ++next;
            }
        }
        for (int z = 0; z < za; ++z) {
            zs.push_back(next);
            spec.zs.push_back(next);
            ++next;
        }
        spec.n = next;
        spec.lists.assign(size_t(next), 0);
        for (int v : class_a) spec.lists[size_t(v)] = ColorMask(1 + int(rng() % 3)); // subset of {1,2}
        for (int v : class_b) spec.lists[size_t(v)] = ColorMask((1 + int(rng() % 3)) << 2);
        for (int z : zs) spec.lists[size_t(z)] = ColorMask(1 + int(rng() % 15));
        for (int z : zs) {
            for (int v : class_a)
                if (rng() % 3 == 0) spec.edges.push_back({z, v});
            for (int v : class_b)
                if (rng() % 3 == 0) spec.edges.push_back({z, v});
        }
        CompanionTriple t = make_synthetic(spec);
        // companion slices must stay P6-free for the guarantees to apply
        Bits slice_a = t.zset, slice_b = t.zset;
        for (int v : class_a) slice_a.set(v);
        for (int v : class_b) slice_b.set(v);
        if (find_induced_path(t.h, 6, slice_a) || find_induced_path(t.h, 6, slice_b)) {
            ++skipped_shape;
            continue;
        }
        ListAssignment L = update_exhaustively(t.h, t.L, t.hverts);
        bool empty = false;
        for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v))
            if (L[v] == 0) empty = true;
        if (empty) continue;
        auto cut = synthetic_cut(t, L);
        if (!cut) {
            ++skipped_shape;
            continue;
        }
        Bits dom = cut->A | cut->D;
        try {
            ListAssignment proc = preprocess_lists(t, L, cut->pa);
            FarSideEncoding enc = build_encoding(t, proc, *cut);
            for (auto& tag : enc.tags) ++fired[tag.type];
            auto got = solve_far_side(t, L, *cut);
            bool ref = test_oracle::list_colorable(t.h, L, dom);
            CHECK(got.has_value() == ref);
            if (got) {
                CHECK(proper_on(t.h, *got, dom));
                CHECK(respects_lists(L, *got, dom));
                ++solved;
            } else {
                ++unsat;
            }
        } catch (const InternalInvariantViolation&) {
            // shapes no companion construction would emit fall outside the
            // solver's guarantees; they may trip the internal guards
            ++skipped_guarantee;
        }
    }
    CHECK(solved > 200);
    CHECK(unsat >= 5);
    for (int k : {1, 2, 3, 4, 5, 6, 7, 8}) CHECK(fired[k] > 0);
    (void)skipped_shape;
    (void)skipped_guarantee;
}
