#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "p6c/io.hpp"
#include "p6c/oracle.hpp"
#include "p6c/solver.hpp"

namespace {

// exit codes: 0 colored, 1 no extension, 2 invalid input, 3 unimplemented,
// 4 budget exceeded
constexpr int kExitColored = 0;
constexpr int kExitNoExtension = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnimplemented = 3;
constexpr int kExitBudget = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_solve(const std::string& path, const p6c::SolveConfig& cfg, bool trace,
              const std::string& companion_path, const std::string& cnf_path) {
    p6c::StarredPrecoloring p;
    try {
        p = p6c::parse_instance(read_file(path));
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    std::ofstream companion_out, cnf_out;
    p6c::SolveSinks sinks;
    if (trace) sinks.trace = &std::cerr;
    if (!companion_path.empty()) {
        companion_out.open(companion_path);
        sinks.companion_dump = &companion_out;
    }
    if (!cnf_path.empty()) {
        cnf_out.open(cnf_path);
        sinks.cnf_dump = &cnf_out;
    }
    try {
        auto outcome = p6c::solve_excellent(p, cfg, sinks);
        if (!outcome.coloring) {
            std::cout << "NO_EXTENSION\n";
            return kExitNoExtension;
        }
        std::cout << p6c::coloring_to_json(*outcome.coloring) << '\n';
        return kExitColored;
    } catch (const p6c::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 4-precoloring extension solver for excellent starred precolorings"};
    app.require_subcommand(1);

    p6c::SolveConfig cfg;
    std::string instance_path, graph_path, out_path, companion_path, cnf_path;
    uint64_t seed = 1;
    int gen_n = 12, t_len = 6;
    bool fast = false;

    auto* solve = app.add_subcommand("solve", "decide and construct a precoloring extension");
    solve->add_option("instance", instance_path)->required();
    solve->add_option("--jobs", cfg.jobs, "branch worker pool size");
    solve->add_option("--budget", cfg.member_cap, "per-stage member cap");
    solve->add_option("--seed-cap", cfg.seed_cap, "largest seed accepted");
    solve->add_flag("--fast", fast, "skip the slow structural self-checks");
    solve->add_option("--dump-companion", companion_path, "write companion triples to a file");
    solve->add_option("--dump-cnf", cnf_path, "write far-side encodings to a file");

    auto* trace = app.add_subcommand("trace", "solve with JSON-lines telemetry on stderr");
    trace->add_option("instance", instance_path)->required();
    trace->add_option("--jobs", cfg.jobs);
    trace->add_option("--budget", cfg.member_cap);
    trace->add_flag("--fast", fast);

    auto* oracle = app.add_subcommand("oracle", "solve by brute force");
    oracle->add_option("instance", instance_path)->required();

    auto* validate = app.add_subcommand("validate", "check the six structural axioms");
    validate->add_option("instance", instance_path)->required();

    p6c::GenParams gprm;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--n", gen_n, "target vertex count");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--seed-size-min", gprm.seed_min, "smallest seed part");
    gen->add_option("--seed-size-max", gprm.seed_max, "largest seed part");
    gen->add_option("--x", gprm.x_count, "boundary vertices");
    gen->add_option("--x0", gprm.x0_count, "extra precolored vertices");
    gen->add_option("--y-comps", gprm.y_components, "far components");
    gen->add_option("--y-max", gprm.y_comp_max, "largest far component");
    gen->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* check = app.add_subcommand("check-class", "path-freeness of an edge-list graph");
    check->add_option("graph", graph_path)->required();
    check->add_option("--t", t_len, "path length in vertices");

    auto* full = app.add_subcommand("solve-full", "general 4-precoloring entry point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve || *trace) {
            cfg.deep_checks = !fast;
            return run_solve(instance_path, cfg, bool(*trace), companion_path, cnf_path);
        }
        if (*oracle) {
            p6c::StarredPrecoloring p;
            try {
                p = p6c::parse_instance(read_file(instance_path));
            } catch (const std::exception& e) {
                std::cerr << "invalid input: " << e.what() << '\n';
                return kExitInvalid;
            }
            auto rep = p6c::validate(p);
            if (!rep.ok) {
                std::cerr << "invalid input: " << rep.detail << '\n';
                return kExitInvalid;
            }
            auto c = p6c::brute_force_extension(p);
            if (!c) {
                std::cout << "NO_EXTENSION\n";
                return kExitNoExtension;
            }
            std::cout << p6c::coloring_to_json(*c) << '\n';
            return kExitColored;
        }
        if (*validate) {
            p6c::StarredPrecoloring p;
            try {
                p = p6c::parse_instance(read_file(instance_path));
            } catch (const std::exception& e) {
                std::cerr << "invalid input: " << e.what() << '\n';
                return kExitInvalid;
            }
            auto rep = p6c::validate(p);
            if (!rep.ok) {
                static const char* names[] = {"shape", "A", "B", "C", "D", "E", "F"};
                std::cerr << "axiom " << names[int(rep.violated)] << " violated: " << rep.detail;
                if (!rep.witness.empty()) {
                    std::cerr << " (witness:";
                    for (int w : rep.witness) std::cerr << ' ' << w;
                    std::cerr << ')';
                }
                std::cerr << '\n';
                return kExitInvalid;
            }
            std::cout << "VALID\n";
            return 0;
        }
        if (*gen) {
            p6c::GenParams prm = gprm;
            prm.n = gen_n;
            auto p = p6c::gen_excellent(prm, seed);
            std::string text = p6c::instance_to_json(p);
            if (out_path.empty()) {
                std::cout << text << '\n';
            } else {
                std::ofstream out(out_path);
                out << text << '\n';
            }
            return 0;
        }
        if (*check) {
            p6c::Graph g;
            try {
                g = p6c::parse_graph_text(read_file(graph_path));
            } catch (const std::exception& e) {
                std::cerr << "invalid input: " << e.what() << '\n';
                return kExitInvalid;
            }
            bool free = p6c::is_pt_free(g, t_len);
            std::cout << "P" << t_len << "-free: " << (free ? "true" : "false") << '\n';
            return 0;
        }
        if (*full) {
            auto status = p6c::solve_full_stub(p6c::Graph(0), p6c::Bits(0), {});
            std::cerr << "unimplemented: " << status.reason << '\n';
            return kExitUnimplemented;
        }
    } catch (const p6c::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
