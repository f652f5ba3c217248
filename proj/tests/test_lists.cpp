#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "p6c/lists.hpp"

using namespace p6c;

namespace {

ListAssignment random_lists(int n, std::mt19937_64& rng, int max_size = 4) {
    ListAssignment L(n);
    for (int v = 0; v < n; ++v) {
        ColorMask m = 0;
        int sz = 1 + int(rng() % max_size);
        while (mask_size(m) < sz) m |= color_bit(1 + int(rng() % 4));
        L[v] = m;
    }
    return L;
}

} // namespace

TEST_CASE("update_from: forced neighbor, identity, random cross-check") {
    Graph g(2);
    g.add_edge(0, 1);
    ListAssignment L(2);
    L[0] = color_bit(1);
    L[1] = kAllColors;
    Bits x = Bits::of(2, {0});
    ListAssignment M = update_from(g, L, x, Bits::of(2, {1}));
    CHECK(M[1] == ColorMask(0b1110));
    CHECK(M[0] == L[0]);
    // empty X leaves everything alone
    CHECK(update_from(g, L, Bits(2), g.full_set()) == L);
    CHECK_THROWS(update_from(g, L, Bits::of(2, {1}), g.full_set()));

    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        int n = 3 + int(rng() % 8);
        Graph h = test_oracle::random_graph(n, 0.4, rng);
        ListAssignment lists = random_lists(n, rng);
        Bits xs(n), ys(n);
        for (int v = 0; v < n; ++v) {
            if (rng() % 3 == 0) {
                lists[v] = color_bit(1 + int(rng() % 4));
                xs.set(v);
            }
            if (rng() % 2) ys.set(v);
        }
        ListAssignment out = update_from(h, lists, xs, ys);
        for (int v = 0; v < n; ++v) {
            ColorMask expect = lists[v];
            if (ys.test(v)) {
                for (int u = 0; u < n; ++u)
                    if (xs.test(u) && h.adjacent(u, v)) expect = ColorMask(expect & ~lists[u]);
            }
            CHECK(out[v] == expect);
            CHECK((out[v] & ~lists[v]) == 0); // monotone
        }
    }
}

TEST_CASE("update_exhaustively: fixpoint, forced chain, idempotence") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    ListAssignment L(3);
    L[0] = color_bit(1);
    L[1] = ColorMask(0b0011); // {1,2}
    L[2] = ColorMask(0b0110); // {2,3}
    ListAssignment M = update_exhaustively(g, L, g.full_set());
    CHECK(M[1] == color_bit(2));
    CHECK(M[2] == color_bit(3));
    CHECK(update_exhaustively(g, M, g.full_set()) == M);

    std::mt19937_64 rng(2);
    for (int it = 0; it < 40; ++it) {
        int n = 4 + int(rng() % 8);
        Graph h = test_oracle::random_graph(n, 0.35, rng);
        ListAssignment lists = random_lists(n, rng);
        ListAssignment out = update_exhaustively(h, lists, h.full_set());
        // independent loop: keep applying single updates until stable
        ListAssignment ref = lists;
        while (true) {
            ListAssignment nxt = update_from(h, ref, ref.x0(h.full_set()), h.full_set());
            if (nxt == ref) break;
            ref = nxt;
        }
        CHECK(out == ref);
        CHECK(update_exhaustively(h, out, h.full_set()) == out);
    }
}

TEST_CASE("edwards coloring: edge, odd cycle, random backtracking agreement") {
    Graph e(2);
    e.add_edge(0, 1);
    ListAssignment L(2);
    L[0] = L[1] = ColorMask(0b0011);
    auto c = edwards_two_list_color(e, L, e.full_set());
    REQUIRE(c.has_value());
    CHECK((*c)[0] != (*c)[1]);

    Graph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    ListAssignment Lt(3);
    Lt[0] = Lt[1] = Lt[2] = ColorMask(0b0011);
    CHECK(!edwards_two_list_color(tri, Lt, tri.full_set()));

    std::mt19937_64 rng(3);
    for (int it = 0; it < 500; ++it) {
        int n = 2 + int(rng() % 13);
        Graph h = test_oracle::random_graph(n, 0.3, rng);
        ListAssignment lists = random_lists(n, rng, 2);
        if (rng() % 4 == 0) lists[int(rng() % n)] = 0;
        bool lib = edwards_two_list_color(h, lists, h.full_set()).has_value();
        bool ref = test_oracle::list_colorable(h, lists, h.full_set());
        CHECK(lib == ref);
    }
}

TEST_CASE("exact list coloring: trivial cases and oracle agreement") {
    CHECK(exact_list_color(Graph(0), ListAssignment(0), Bits(0)).has_value());
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    ListAssignment full(4, kAllColors);
    auto c = exact_list_color(k4, full, k4.full_set());
    REQUIRE(c.has_value());
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) CHECK((*c)[u] != (*c)[v]);

    std::mt19937_64 rng(4);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + int(rng() % 15);
        Graph h = test_oracle::random_graph(n, 0.45, rng);
        ListAssignment lists = random_lists(n, rng);
        bool lib = exact_list_color(h, lists, h.full_set()).has_value();
        CHECK(lib == test_oracle::list_colorable(h, lists, h.full_set()));
    }
}

TEST_CASE("bad set table: single vertex, forced edge, downward closure") {
    Graph one(1);
    ListAssignment M1(1, kAllColors);
    BadSetTable t = bad_set_table(one, one.full_set(), M1);
    for (ColorMask q = 1; q < 16; ++q)
        if (mask_size(q) <= 3) CHECK(t.is_good(q));

    Graph e(2);
    e.add_edge(0, 1);
    ListAssignment M2(2, color_bit(1));
    BadSetTable t2 = bad_set_table(e, e.full_set(), M2);
    CHECK(t2.is_bad(color_bit(1)));
    CHECK(t2.is_bad(ColorMask(0b0110)));

    std::mt19937_64 rng(6);
    for (int it = 0; it < 60; ++it) {
        int n = 1 + int(rng() % 6);
        Graph h = test_oracle::random_graph(n, 0.5, rng);
        auto comps = components(h, h.full_set());
        ListAssignment lists = random_lists(n, rng);
        const Bits& comp = comps[0];
        BadSetTable tab = bad_set_table(h, comp, lists);
        for (ColorMask q = 0; q < 16; ++q) {
            if (mask_size(q) > 3) continue;
            ListAssignment restricted(n);
            for (int v = comp.first(); v >= 0; v = comp.next(v))
                restricted[v] = ColorMask(lists[v] & q);
            CHECK(tab.is_good(q) == test_oracle::list_colorable(h, restricted, comp));
            // downward closure of badness
            if (tab.is_bad(q))
                for (ColorMask sub = 0; sub < 16; ++sub)
                    if ((sub & q) == sub) CHECK(tab.is_bad(sub));
        }
        for (ColorMask q : tab.maximal_bad) {
            CHECK(tab.is_bad(q));
            for (int c = 1; c <= 4; ++c) {
                ColorMask sup = ColorMask(q | color_bit(c));
                if (sup != q && mask_size(sup) <= 3) CHECK(tab.is_good(sup));
            }
        }
    }
}
