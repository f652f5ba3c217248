#include "p6c/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace p6c {

std::optional<Coloring> brute_force_extension(const StarredPrecoloring& p, int limit) {
    const int n = p.g.n();
    if (n > limit) throw std::runtime_error("brute_force_extension: vertex limit exceeded");
    // candidate colors: f on precolored vertices, otherwise anything not seen
    // on seed neighbors (computed inline, not via the lists module)
    std::vector<uint8_t> cand(n, 0);
    Bits pre = p.precolored();
    for (int v = 0; v < n; ++v) {
        if (pre.test(v)) {
            cand[v] = uint8_t(1u << (p.f[v] - 1));
        } else {
            uint8_t seen = 0;
            Bits nb = p.g.neighbors(v) & p.seed;
            for (int u = nb.first(); u >= 0; u = nb.next(u)) seen |= uint8_t(1u << (p.f[u] - 1));
            cand[v] = uint8_t(0xF & ~seen);
        }
    }
    std::vector<int8_t> col(n, 0);
    // plain DFS in ascending vertex order, colors ascending
    int v = 0;
    std::vector<int> tried(n, 0);
    while (true) {
        if (v == n) {
            Coloring c(n);
            for (int u = 0; u < n; ++u) c.set(u, col[u]);
            return c;
        }
        bool advanced = false;
        for (int c = tried[v] + 1; c <= 4; ++c) {
            if (!(cand[v] & (1u << (c - 1)))) continue;
            bool clash = false;
            Bits nb = p.g.neighbors(v);
            for (int u = nb.first(); u >= 0 && u < v; u = nb.next(u))
                if (col[u] == c) { clash = true; break; }
            if (clash) continue;
            col[v] = int8_t(c);
            tried[v] = c;
            ++v;
            if (v < n) tried[v] = 0;
            advanced = true;
            break;
        }
        if (!advanced) {
            col[v] = 0;
            tried[v] = 0;
            --v;
            if (v < 0) return std::nullopt;
        }
    }
}

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) g.add_edge(u, v);
    return g;
}

Graph complete_multipartite(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> parts_d(2, std::max(2, std::min(n, 4)));
    int parts = parts_d(rng);
    std::vector<int> part(n);
    for (int v = 0; v < n; ++v) part[v] = int(rng() % parts);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[u] != part[v]) g.add_edge(u, v);
    return g;
}

} // namespace

Graph gen_p6free(int n, double edge_prob, uint64_t rng_seed, int tries) {
    std::mt19937_64 rng(rng_seed);
    for (int t = 0; t < tries; ++t) {
        Graph g = random_graph(n, edge_prob, rng);
        if (is_pt_free(g, 6)) return g;
    }
    return complete_multipartite(n, rng);
}

namespace {

struct Builder {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> coin{0.0, 1.0};

    explicit Builder(uint64_t s) : rng(s) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    // One construction attempt; nullopt if a constraint failed. `boost`
    // densifies attachments and edges, which pushes sampling toward the
    // P6-free regime on stubborn parameter draws.
    std::optional<StarredPrecoloring> attempt(const GenParams& prm0, std::string& why,
                                              double boost) {
        GenParams prm = prm0;
        prm.edge_prob = std::min(0.95, prm.edge_prob + boost);
        prm.attach_prob = std::min(0.95, prm.attach_prob + boost);
        prm.sx0_edge_prob = std::min(0.9, prm.sx0_edge_prob + boost / 2);
        int s_n = pick(prm.seed_min, prm.seed_max);
        int n = s_n + prm.x0_count + prm.x_count;
        if (n > prm.n) { why = "size budget"; return std::nullopt; }
        std::vector<int> comp_sizes;
        for (int c = 0; c < prm.y_components; ++c) {
            int sz = pick(1, prm.y_comp_max);
            if (n + sz > prm.n) break; // keep what fits
            comp_sizes.push_back(sz);
            n += sz;
        }

        StarredPrecoloring p;
        p.g = Graph(n);
        p.seed = Bits(n);
        p.x0 = Bits(n);
        p.x = Bits(n);
        p.ystar = Bits(n);
        p.f.assign(n, 0);
        int next = 0;
        std::vector<int> seed_ids, x0_ids, x_ids;
        std::vector<std::vector<int>> comps;
        for (int i = 0; i < s_n; ++i) seed_ids.push_back(next++);
        for (int i = 0; i < prm.x0_count; ++i) x0_ids.push_back(next++);
        for (int i = 0; i < prm.x_count; ++i) x_ids.push_back(next++);
        for (int sz : comp_sizes) {
            comps.emplace_back();
            for (int i = 0; i < sz; ++i) comps.back().push_back(next++);
        }
        for (int v : seed_ids) p.seed.set(v);
        for (int v : x0_ids) p.x0.set(v);
        for (int v : x_ids) p.x.set(v);
        for (auto& c : comps)
            for (int v : c) p.ystar.set(v);

        // connected seed: path plus extra edges (unboosted, so a proper
        // 4-coloring stays reachable), then a random proper coloring
        for (size_t i = 1; i < seed_ids.size(); ++i)
            p.g.add_edge(seed_ids[i - 1], seed_ids[i]);
        for (size_t i = 0; i < seed_ids.size(); ++i)
            for (size_t j = i + 2; j < seed_ids.size(); ++j)
                if (coin(rng) < prm0.edge_prob) p.g.add_edge(seed_ids[i], seed_ids[j]);
        {
            ListAssignment full(n, kAllColors);
            auto col = exact_list_color(p.g, full, p.seed);
            if (!col) { why = "seed coloring"; return std::nullopt; }
            std::array<int, 5> perm{0, 1, 2, 3, 4};
            std::shuffle(perm.begin() + 1, perm.end(), rng);
            for (int v : seed_ids) p.f[v] = uint8_t(perm[size_t((*col)[v])]);
        }

        // x0: attach to a couple of seed vertices, pick an unused color
        for (int v : x0_ids) {
            int deg = pick(1, std::max(1, s_n - 1));
            std::vector<int> perm = seed_ids;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int i = 0; i < deg; ++i) p.g.add_edge(v, perm[i]);
            uint8_t used = 0;
            Bits nb = p.g.neighbors(v);
            for (int u = nb.first(); u >= 0; u = nb.next(u))
                if (p.f[u]) used |= uint8_t(1u << (p.f[u] - 1));
            std::vector<int> avail;
            for (int c = 1; c <= 4; ++c)
                if (!(used & (1u << (c - 1)))) avail.push_back(c);
            if (avail.empty()) { why = "x0 coloring"; return std::nullopt; }
            p.f[v] = uint8_t(avail[size_t(pick(0, int(avail.size()) - 1))]);
        }

        // x: needs >= 2 seed colors, must not be complete to the seed
        if (prm.x_count > 0 && s_n < 3) { why = "seed too small for x"; return std::nullopt; }
        for (int v : x_ids) {
            std::vector<int> perm = seed_ids;
            std::shuffle(perm.begin(), perm.end(), rng);
            int deg = std::min(pick(2, std::max(2, s_n - 1)), s_n - 1);
            std::vector<int> chosen(perm.begin(), perm.begin() + deg);
            uint8_t used = 0;
            for (int u : chosen) used |= uint8_t(1u << (p.f[u] - 1));
            if (__builtin_popcount(used) < 2) {
                // swap in a differently colored seed vertex; one exists since
                // adjacent seed vertices get distinct colors
                for (int j = deg; j < s_n; ++j)
                    if (p.f[perm[size_t(j)]] != p.f[chosen[0]]) {
                        chosen.back() = perm[size_t(j)];
                        break;
                    }
            }
            for (int u : chosen) p.g.add_edge(v, u);
            for (int u : x0_ids)
                if (coin(rng) < prm.sx0_edge_prob) p.g.add_edge(v, u);
        }
        for (size_t i = 0; i < x_ids.size(); ++i)
            for (size_t j = i + 1; j < x_ids.size(); ++j)
                if (coin(rng) < prm.edge_prob) p.g.add_edge(x_ids[i], x_ids[j]);

        // y components: internal tree plus extras; complete-or-anticomplete
        // to each x; sparse seed/x0 edges; one guaranteed full attachment
        for (auto& c : comps) {
            for (size_t i = 1; i < c.size(); ++i) p.g.add_edge(c[pick(0, int(i) - 1)], c[i]);
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t j = i + 1; j < c.size(); ++j)
                    if (!p.g.adjacent(c[i], c[j]) && coin(rng) < prm.edge_prob)
                        p.g.add_edge(c[i], c[j]);
            bool attached = false;
            for (int x : x_ids)
                if (coin(rng) < prm.attach_prob) {
                    for (int y : c) p.g.add_edge(x, y);
                    attached = true;
                }
            for (int y : c) {
                int deg = 0; // stay short of complete-to-seed
                for (int u : seed_ids) {
                    if (deg + 1 >= s_n) break;
                    if (coin(rng) < prm.sx0_edge_prob) {
                        p.g.add_edge(y, u);
                        ++deg;
                    }
                }
            }
            for (int y : c)
                for (int u : x0_ids)
                    if (coin(rng) < prm.sx0_edge_prob) p.g.add_edge(y, u);
            if (!attached) {
                // fall back to a seed/x0 attachment complete to the component
                std::vector<int> cand = seed_ids;
                cand.insert(cand.end(), x0_ids.begin(), x0_ids.end());
                int u = cand[size_t(pick(0, int(cand.size()) - 1))];
                for (int y : c)
                    if (!p.g.adjacent(u, y)) p.g.add_edge(u, y);
            }
        }
        return p;
    }
};

} // namespace

StarredPrecoloring gen_excellent(const GenParams& params, uint64_t rng_seed) {
    Builder b(rng_seed);
    std::string why = "unknown";
    for (int t = 0; t < params.tries; ++t) {
        double boost = 0.7 * double(t) / double(params.tries);
        auto p = b.attempt(params, why, boost);
        if (!p) continue;
        auto rep = validate(*p);
        if (!rep.ok) { why = rep.detail; continue; }
        if (!is_pt_free(p->g, 6)) { why = "not P6-free"; continue; }
        return *p;
    }
    throw std::runtime_error("gen_excellent: budget exceeded, last failure: " + why);
}

StarredPrecoloring gen_structured(int n, uint64_t rng_seed) {
    // Seed path s0-s1-s2-s3 colored 1,2,1,2; an independent boundary whose
    // members see seed colors {1,2}; far singletons adjacent to s0 and a
    // prefix of the boundary. Nested prefixes block every sixth path vertex,
    // and the instances are always colorable (boundary 3, far 2 or 4).
    std::mt19937_64 rng(rng_seed);
    if (n < 8) throw std::invalid_argument("gen_structured: n too small");
    int s_n = 4;
    int rest = n - s_n;
    int xm = rest / 2;
    int ym = rest - xm;
    StarredPrecoloring p;
    p.g = Graph(n);
    p.seed = Bits(n);
    p.x0 = Bits(n);
    p.x = Bits(n);
    p.ystar = Bits(n);
    p.f.assign(n, 0);
    for (int i = 0; i < 4; ++i) p.seed.set(i);
    p.g.add_edge(0, 1);
    p.g.add_edge(1, 2);
    p.g.add_edge(2, 3);
    p.f[0] = 1; p.f[1] = 2; p.f[2] = 1; p.f[3] = 2;
    std::vector<int> xs;
    for (int i = 0; i < xm; ++i) {
        int v = 4 + i;
        xs.push_back(v);
        p.x.set(v);
        p.g.add_edge(v, 0);
        p.g.add_edge(v, 1);
    }
    for (int i = 0; i < ym; ++i) {
        int v = 4 + xm + i;
        p.ystar.set(v);
        p.g.add_edge(v, 0);
        int prefix = 1 + int(rng() % xm);
        for (int k = 0; k < prefix; ++k) p.g.add_edge(v, xs[size_t(k)]);
    }
    return p;
}

} // namespace p6c
