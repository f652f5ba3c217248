#include "p6c/solver.hpp"

#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

#include "p6c/farside.hpp"
#include "p6c/io.hpp"
#include "p6c/reduction.hpp"

namespace p6c {

namespace {

struct BranchOutcome {
    bool success = false;
    Coloring coloring;
    long list_index = -1;
};

void trace_raw(const SolveSinks& sinks, std::mutex* m, const std::string& line) {
    if (!sinks.trace) return;
    std::lock_guard<std::mutex> lock(*m);
    *sinks.trace << line << '\n';
}

// One branch of the orthogonal collection, end to end.
BranchOutcome run_branch(const StarredPrecoloring& root, const OrthBranch& branch, size_t index,
                         const SolveConfig& cfg, const SolveSinks& sinks, std::mutex* io_mutex) {
    BranchOutcome out;
    auto topt = build_companion(branch.p, cfg);
    if (!topt) {
        trace_raw(sinks, io_mutex,
                  "{\"stage\":\"companion\",\"branch\":" + std::to_string(index) +
                      ",\"result\":\"infeasible_contraction\"}");
        return out; // a contracted class carries an edge: no extension here
    }
    CompanionTriple& t = *topt;
    trace_raw(sinks, io_mutex,
              "{\"stage\":\"companion\",\"branch\":" + std::to_string(index) +
                  ",\"h_vertices\":" + std::to_string(t.hverts.count()) +
                  ",\"stand_ins\":" + std::to_string(t.zset.count()) +
                  ",\"contractions\":" + std::to_string(t.cp.log.size()) + "}");
    if (sinks.companion_dump) {
        std::lock_guard<std::mutex> lock(*io_mutex);
        *sinks.companion_dump << companion_to_json(t) << '\n';
    }
    for (int v = t.hverts.first(); v >= 0; v = t.hverts.next(v))
        if (t.L[v] == 0) return out; // local infeasibility
    auto fams = insulate_all(t, t.L, cfg);
    trace_raw(sinks, io_mutex,
              "{\"stage\":\"insulate\",\"branch\":" + std::to_string(index) +
                  ",\"members\":" + std::to_string(fams.size()) + "}");
    long li = -1;
    for (const InsulatedLists& il : fams) {
        ++li;
        // far-side colorings for the pairs with a non-empty far side
        std::array<std::optional<Coloring>, 3> far;
        bool feasible = true;
        for (int i = 2; i <= 4 && feasible; ++i) {
            const auto& cut = il.cut[size_t(i - 2)];
            if (!cut) continue;
            auto c = solve_far_side(t, il.L, *cut);
            if (sinks.cnf_dump) {
                std::lock_guard<std::mutex> lock(*io_mutex);
                ListAssignment proc = preprocess_lists(t, il.L, cut->pa);
                *sinks.cnf_dump << encoding_to_dimacs(build_encoding(t, proc, *cut));
            }
            if (!c) feasible = false;
            else far[size_t(i - 2)] = std::move(c);
        }
        if (!feasible) continue;
        // the near side: everything outside the complex cutset parts and far sides
        Bits h1 = t.hverts;
        for (int i = 2; i <= 4; ++i) {
            const auto& cut = il.cut[size_t(i - 2)];
            if (!cut) continue;
            h1 -= cut->A;
            for (int d = cut->D.first(); d >= 0; d = cut->D.next(d))
                if (mask_size(il.L[d]) == 2) h1.reset(d);
        }
        if ((h1 & t.zset).any())
            throw InternalInvariantViolation("a stand-in escaped every far side");
        for (int v = h1.first(); v >= 0; v = h1.next(v))
            if (mask_size(il.L[v]) > 2)
                throw InternalInvariantViolation("near-side vertex with a wide list");
        auto c1 = edwards_two_list_color(t.h, il.L, h1);
        if (!c1) continue;
        // three merges, smallest pair first
        Coloring cur = *c1;
        Bits dom = h1;
        for (int i = 2; i <= 4; ++i) {
            const auto& cut = il.cut[size_t(i - 2)];
            if (!cut) continue;
            Bits star = dom | cut->A | cut->D;
            ChromaticCutset local{cut->pa, cut->D, cut->A, star - cut->A - cut->D};
            MergeResult mr = merge_colorings(t.h, star, il.L, local, cur, *far[size_t(i - 2)]);
            cur = std::move(mr.c);
            dom = star;
        }
        if (dom != t.hverts)
            throw InternalInvariantViolation("merged domain does not cover H");
        if (!proper_on(t.h, cur, t.hverts) || !respects_lists(il.L, cur, t.hverts))
            throw InternalInvariantViolation("merged coloring failed verification");
        Coloring lifted = lift_coloring(t, cur);
        Coloring full = lift_orth_branch(branch, lifted);
        if (!check_extension(root, full))
            throw InternalInvariantViolation("branch coloring is not an extension of the input");
        out.success = true;
        out.coloring = std::move(full);
        out.list_index = li;
        return out;
    }
    return out;
}

} // namespace

SolveOutcome solve_excellent(const StarredPrecoloring& p, const SolveConfig& cfg,
                             const SolveSinks& sinks) {
    auto rep = validate(p);
    if (!rep.ok) throw std::invalid_argument("solve_excellent: invalid instance: " + rep.detail);
    if (p.seed.count() > cfg.seed_cap)
        throw BudgetExceeded("solve_excellent: seed larger than the configured cap");
    if (cfg.deep_checks && !is_pt_free(p.g, 6))
        throw std::invalid_argument("solve_excellent: input graph contains an induced P6");

    SolveOutcome out;
    std::mutex io_mutex;
    auto p0 = normalize(p);
    if (!p0) {
        trace_raw(sinks, &io_mutex, "{\"stage\":\"normalize\",\"result\":\"no_extension\"}");
        trace_raw(sinks, &io_mutex, "{\"stage\":\"result\",\"found\":false,\"branch\":-1}");
        return out;
    }
    uint64_t hash = instance_hash(*p0);
    auto branches = to_orthogonal_collection(*p0, cfg);
    out.branches_total = branches.size();
    {
        std::string sizes;
        for (const auto& b : branches) {
            if (!sizes.empty()) sizes += ',';
            sizes += std::to_string(b.p.seed.count());
        }
        trace_raw(sinks, &io_mutex,
                   "{\"stage\":\"orthogonal_collection\",\"input_hash\":" + std::to_string(hash) +
                       ",\"members\":" + std::to_string(branches.size()) + ",\"seed_sizes\":[" +
                       sizes + "]}");
    }

    std::vector<BranchOutcome> results(branches.size());
    std::atomic<size_t> best{SIZE_MAX};
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= branches.size()) return;
            if (k > best.load()) continue; // a smaller branch already succeeded
            try {
                BranchOutcome r = run_branch(*p0, branches[k], k, cfg, sinks, &io_mutex);
                if (r.success) {
                    size_t cur = best.load();
                    while (k < cur && !best.compare_exchange_weak(cur, k)) {}
                }
                results[k] = std::move(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    for (size_t k = 0; k < results.size(); ++k) {
        if (results[k].success) {
            out.coloring = std::move(results[k].coloring);
            out.branch = long(k);
            out.list_index = results[k].list_index;
            break;
        }
    }
    trace_raw(sinks, &io_mutex,
               std::string("{\"stage\":\"result\",\"found\":") +
                   (out.coloring ? "true" : "false") +
                   ",\"branch\":" + std::to_string(out.branch) + "}");
    return out;
}

FullSolveStatus solve_full_stub(const Graph& g, const Bits& x0, const std::vector<uint8_t>& f) {
    (void)g;
    (void)x0;
    (void)f;
    FullSolveStatus s;
    s.available = false;
    s.reason =
        "general 4-precoloring extension needs the reduction from arbitrary precolorings "
        "to excellent starred precolorings with a bounded seed, which this library does not "
        "implement; build an excellent starred instance and use solve_excellent";
    return s;
}

} // namespace p6c
