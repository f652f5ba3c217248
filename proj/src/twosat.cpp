#include "p6c/twosat.hpp"

#include <sstream>
#include <stdexcept>

namespace p6c {

namespace {

// Node id for a literal: 2*var for positive, 2*var+1 for negated.
inline int node(Lit l) { return 2 * l.var + (l.neg ? 1 : 0); }
inline int negate_node(int x) { return x ^ 1; }

// Iterative Tarjan SCC over the implication graph.
struct Tarjan {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, low, comp;
    std::vector<int> stack;
    std::vector<bool> on_stack;
    int counter = 0, ncomp = 0;

    explicit Tarjan(const std::vector<std::vector<int>>& a)
        : adj(a), index(a.size(), -1), low(a.size(), 0), comp(a.size(), -1),
          on_stack(a.size(), false) {}

    void run(int root) {
        // explicit stack of (node, next-edge-index)
        std::vector<std::pair<int, size_t>> work;
        work.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!work.empty()) {
            auto& [v, ei] = work.back();
            if (ei < adj[v].size()) {
                int w = adj[v][ei++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    work.push_back({w, 0});
                } else if (on_stack[w]) {
                    if (index[w] < low[v]) low[v] = index[w];
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                int vv = v;
                work.pop_back();
                if (!work.empty()) {
                    int parent = work.back().first;
                    if (low[vv] < low[parent]) low[parent] = low[vv];
                }
            }
        }
    }
};

} // namespace

std::optional<BoolAssignment> solve(const TwoSatInstance& inst) {
    int n = inst.vars();
    std::vector<std::vector<int>> adj(2 * n);
    for (const auto& [a, b] : inst.clauses()) {
        // (a v b) -> (~a => b), (~b => a)
        adj[negate_node(node(a))].push_back(node(b));
        adj[negate_node(node(b))].push_back(node(a));
    }
    Tarjan t(adj);
    for (int v = 0; v < 2 * n; ++v)
        if (t.index[v] < 0) t.run(v);
    BoolAssignment asg(n);
    for (int v = 0; v < n; ++v) {
        if (t.comp[2 * v] == t.comp[2 * v + 1]) return std::nullopt;
        // Tarjan emits components in reverse topological order, so the
        // component found later is earlier in implication order; a variable is
        // true when its positive literal's component comes later.
        asg[v] = t.comp[2 * v] < t.comp[2 * v + 1];
    }
    return asg;
}

bool verify(const TwoSatInstance& inst, const BoolAssignment& asg) {
    auto val = [&](Lit l) { return asg[l.var] != l.neg; };
    for (const auto& [a, b] : inst.clauses())
        if (!val(a) && !val(b)) return false;
    return true;
}

std::string to_dimacs(const TwoSatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.vars() << ' ' << inst.clauses().size() << '\n';
    for (const auto& [a, b] : inst.clauses()) {
        auto lit = [](Lit l) { return (l.neg ? -1 : 1) * (l.var + 1); };
        out << lit(a) << ' ' << lit(b) << " 0\n";
    }
    return out.str();
}

TwoSatInstance from_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int nvars = 0;
    TwoSatInstance inst;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            int m;
            if (!(ls >> p >> cnf >> nvars >> m) || cnf != "cnf")
                throw std::runtime_error("bad DIMACS header");
            inst = TwoSatInstance(nvars);
            header = true;
            continue;
        }
        if (!header) throw std::runtime_error("clause before header");
        std::vector<int> lits;
        int x;
        while (ls >> x && x != 0) lits.push_back(x);
        if (lits.size() != 2) throw std::runtime_error("only width-2 clauses supported");
        auto mk = [&](int l) {
            int v = std::abs(l) - 1;
            if (v < 0 || v >= nvars) throw std::runtime_error("literal out of range");
            return Lit{v, l < 0};
        };
        inst.add_clause(mk(lits[0]), mk(lits[1]));
    }
    return inst;
}

} // namespace p6c
