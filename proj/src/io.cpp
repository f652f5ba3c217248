#include "p6c/io.hpp"

#include <json.hpp>

namespace p6c {

using nlohmann::json;

StarredPrecoloring parse_instance(const std::string& json_text) {
    json j = json::parse(json_text);
    for (const char* key : {"graph", "seed", "x0", "x", "ystar", "f"})
        if (!j.contains(key)) throw std::runtime_error(std::string("missing field: ") + key);
    StarredPrecoloring p;
    p.g = parse_graph_text(j["graph"].get<std::string>());
    int n = p.g.n();
    auto read_set = [&](const char* key) {
        Bits b(n);
        for (const auto& e : j[key]) {
            int v = e.get<int>();
            if (v < 0 || v >= n) throw std::runtime_error(std::string(key) + ": id out of range");
            if (b.test(v)) throw std::runtime_error(std::string(key) + ": duplicate id");
            b.set(v);
        }
        return b;
    };
    p.seed = read_set("seed");
    p.x0 = read_set("x0");
    p.x = read_set("x");
    p.ystar = read_set("ystar");
    if ((p.seed | p.x0 | p.x | p.ystar) != p.g.full_set() ||
        p.seed.count() + p.x0.count() + p.x.count() + p.ystar.count() != n)
        throw std::runtime_error("seed/x0/x/ystar do not partition the vertex set");
    p.f.assign(n, 0);
    for (auto it = j["f"].begin(); it != j["f"].end(); ++it) {
        int v = std::stoi(it.key());
        int c = it.value().get<int>();
        if (v < 0 || v >= n) throw std::runtime_error("f: id out of range");
        if (c < 1 || c > 4) throw std::runtime_error("f: color out of range");
        if (!p.seed.test(v) && !p.x0.test(v))
            throw std::runtime_error("f: assigned outside seed and x0");
        p.f[v] = uint8_t(c);
    }
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v))
        if (p.f[v] == 0) throw std::runtime_error("f: missing on a precolored vertex");
    return p;
}

std::string instance_to_json(const StarredPrecoloring& p) {
    json j;
    j["graph"] = graph_to_text(p.g);
    j["seed"] = p.seed.to_vector();
    j["x0"] = p.x0.to_vector();
    j["x"] = p.x.to_vector();
    j["ystar"] = p.ystar.to_vector();
    json f = json::object();
    Bits pre = p.precolored();
    for (int v = pre.first(); v >= 0; v = pre.next(v)) f[std::to_string(v)] = int(p.f[v]);
    j["f"] = f;
    return j.dump(2);
}

std::string coloring_to_json(const Coloring& c) {
    json colors = json::object();
    for (int v = 0; v < c.size(); ++v)
        if (c[v] != 0) colors[std::to_string(v)] = c[v];
    json j;
    j["colors"] = colors;
    return j.dump(2);
}

Coloring parse_coloring(const std::string& json_text, int n) {
    json j = json::parse(json_text);
    Coloring c(n);
    for (auto it = j.at("colors").begin(); it != j.at("colors").end(); ++it) {
        int v = std::stoi(it.key());
        int col = it.value().get<int>();
        if (v < 0 || v >= n) throw std::runtime_error("coloring: id out of range");
        if (col < 1 || col > 4) throw std::runtime_error("coloring: color out of range");
        c.set(v, col);
    }
    return c;
}

uint64_t instance_hash(const StarredPrecoloring& p) {
    std::string s = instance_to_json(p);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace p6c
