// oddprod: generate product instances, colour them, verify colourings, run
// the exact oracle and benchmark sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or
// parameters, 3 internal invariant breach (palette exhausted at the
// theorem palette), 4 palette exhausted under an --unsafe palette.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "oddprod/oddprod.hpp"

namespace {

using namespace oddprod;

enum exit_code : int { ok = 0, check_failed = 1, bad_input = 2, invariant_breach = 3, unsafe_exhausted = 4 };

unsigned default_workers() {
    if (const char *env = std::getenv("ODDPROD_WORKERS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception &) {
        }
    }
    return 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::string variant_for(factor_kind kind) {
    switch (kind) {
    case factor_kind::path: return "thm1";
    case factor_kind::path_clique: return "thm3";
    case factor_kind::general: return "thm4";
    }
    return "?";
}

// --- gen -------------------------------------------------------------------

struct gen_options {
    index_t t = 1;
    index_t r = 0;
    index_t h = 1;
    std::string factor = "path";
    index_t ell = 1;
    std::string i_kind = "path";
    index_t i_delta = 3;
    std::string i_file;
    double q = 1.0;
    double p = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

secondary_factor make_factor(const std::string &factor, index_t h, index_t ell, const std::string &i_kind,
                             index_t i_delta, const std::string &i_file, std::uint64_t seed) {
    if (factor == "path") {
        return secondary_factor::path(h);
    }
    if (factor == "path_clique") {
        return secondary_factor::path_clique(h, ell);
    }
    if (factor != "general") {
        throw invalid_parameter("param.factor", "unknown factor " + factor);
    }
    if (i_kind == "single") {
        return secondary_factor::general(adjacency_list(1));
    }
    if (i_kind == "k2") {
        return secondary_factor::general(complete_graph(2));
    }
    if (i_kind == "path") {
        return secondary_factor::general(path_graph(h));
    }
    if (i_kind == "cycle") {
        return secondary_factor::general(cycle_graph(h));
    }
    if (i_kind == "random") {
        return secondary_factor::general(random_bounded_degree_graph(h, i_delta, seed));
    }
    if (i_kind == "file") {
        const auto g = load_generic_graph(read_file(i_file));
        adjacency_list adj(g.n);
        for (const auto &[a, b] : g.edges) {
            adj[a - 1].push_back(b);
            adj[b - 1].push_back(a);
        }
        return secondary_factor::general(std::move(adj));
    }
    throw invalid_parameter("param.i_kind", "unknown I kind " + i_kind);
}

int run_gen(const gen_options &o) {
    const auto host = random_t_tree(o.t, o.r, derive_seed(o.seed, 0));
    const auto sec = make_factor(o.factor, o.h, o.ell, o.i_kind, o.i_delta, o.i_file, derive_seed(o.seed, 1));
    const auto g = sample_subgraph(host, sec, o.q, o.p, derive_seed(o.seed, 2));
    emit(o.out, save_instance(g));
    std::cerr << "generated " << to_string(sec.kind()) << " instance: n=" << g.n() << " m=" << g.m() << "\n";
    return ok;
}

// --- colour ----------------------------------------------------------------

struct colour_options {
    std::string in;
    std::string variant;
    std::string out;
    std::string stats;
    std::optional<colour_t> palette;
    bool unsafe = false;
    std::uint64_t seed = 0;
};

int run_colour(const colour_options &o) {
    const auto g = load_instance(read_file(o.in));
    if (variant_for(g.kind()) != o.variant) {
        std::cerr << "error [variant.mismatch]: instance is " << to_string(g.kind()) << ", which needs "
                  << variant_for(g.kind()) << ", not " << o.variant << "\n";
        return bad_input;
    }
    const colour_t bound = theorem_palette(g);
    colour_t palette = bound;
    if (o.palette) {
        if (*o.palette < bound && !o.unsafe) {
            std::cerr << "error [param.palette]: palette " << *o.palette << " is below the guaranteed bound " << bound
                      << "; pass --unsafe to allow\n";
            return bad_input;
        }
        palette = *o.palette;
    }
    const auto start = std::chrono::steady_clock::now();
    colour_result result;
    try {
        result = colour_greedy(g, palette);
    } catch (const palette_exhausted &e) {
        std::cerr << "error [" << e.rule() << "]: " << e.what() << "\n";
        return palette < bound ? unsafe_exhausted : invariant_breach;
    }
    const double millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(o.out, save_colouring(result.colours));
    if (!o.stats.empty()) {
        append_stats_csv(o.stats, describe_run(g, o.variant, o.seed, palette, millis), result.stats);
    }
    std::cerr << "coloured n=" << g.n() << " with " << result.stats.colours_used << " of " << palette
              << " colours (max |X|=" << result.stats.max_x << ", |Y|=" << result.stats.max_y
              << ", |X+Y|=" << result.stats.max_xy << ")\n";
    return ok;
}

// --- verify ----------------------------------------------------------------

int run_verify(const std::string &instance, const std::string &colouring_path, const std::vector<std::string> &checks) {
    const auto g = load_instance(read_file(instance));
    const auto phi = load_colouring(read_file(colouring_path));
    require_matching(g, phi);
    bool all_ok = true;
    auto report_check = [&](const std::string &name, const validation_report &report) {
        std::cerr << (report.ok() ? "PASS " : "FAIL ") << name;
        if (!report.ok()) {
            std::cerr << " (" << report.violations.size() << " violations)";
        }
        std::cerr << "\n";
        for (const auto &v : report.violations) {
            std::cerr << "  [" << v.rule << "] " << v.message << "\n";
            nlohmann::json line = {{"check", name}, {"rule", v.rule}, {"indices", v.indices}, {"message", v.message}};
            std::cout << line.dump() << "\n";
        }
        all_ok = all_ok && report.ok();
    };
    for (const auto &c : checks) {
        if (c == "proper") {
            report_check(c, verify_proper(g, phi));
        } else if (c == "odd") {
            report_check(c, verify_odd(g, phi).report);
        } else if (c == "support") {
            report_check(c, verify_support_distinct(g, phi));
        } else {
            std::cerr << "error [param.checks]: unknown check " << c << "\n";
            return bad_input;
        }
    }
    return all_ok ? ok : check_failed;
}

// --- oracle ----------------------------------------------------------------

generic_graph builtin_graph(const std::string &spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw invalid_parameter("param.graph", "graph spec must look like complete:4, path:3 or cycle:4");
    }
    const std::string kind = spec.substr(0, colon);
    index_t n = 0;
    try {
        n = static_cast<index_t>(std::stoul(spec.substr(colon + 1)));
    } catch (const std::exception &) {
        throw invalid_parameter("param.graph", "bad vertex count in " + spec);
    }
    adjacency_list adj;
    if (kind == "complete") {
        adj = complete_graph(n);
    } else if (kind == "path") {
        adj = path_graph(n);
    } else if (kind == "cycle") {
        adj = cycle_graph(n);
    } else if (kind == "empty") {
        adj.resize(n);
    } else {
        throw invalid_parameter("param.graph", "unknown graph kind " + kind);
    }
    generic_graph g;
    g.n = n;
    for (index_t a = 1; a <= n; ++a) {
        for (index_t b : adj[a - 1]) {
            if (a < b) {
                g.edges.emplace_back(a, b);
            }
        }
    }
    return g;
}

int run_oracle(const std::string &in, const std::string &graph, std::optional<colour_t> max_colours, index_t cap,
               unsigned workers) {
    generic_graph g;
    if (!graph.empty()) {
        g = builtin_graph(graph);
    } else {
        const auto text = read_file(in);
        const auto doc = detail::parse_document(text);
        g = doc.is_object() && doc.contains("host") ? to_generic(load_instance(text)) : load_generic_graph(text);
    }
    const colour_t limit = max_colours.value_or(std::max<colour_t>(g.n, 1));
    const auto answer = exact_odd_chromatic(g, limit, cap, workers);
    if (answer) {
        std::cout << *answer << "\n";
    } else {
        std::cout << "none\n";
    }
    return ok;
}

// --- inspect ---------------------------------------------------------------

int run_inspect(const std::string &in, const std::string &vertex) {
    const auto g = load_instance(read_file(in));
    std::vector<index_t> coords;
    std::stringstream ss(vertex);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            coords.push_back(static_cast<index_t>(std::stoul(part)));
        } catch (const std::exception &) {
            throw invalid_parameter("param.vertex", "bad coordinate in " + vertex);
        }
    }
    if (coords.size() != (g.secondary().has_clique() ? 3u : 2u)) {
        throw invalid_parameter("param.vertex", "vertex needs " +
                                                    std::to_string(g.secondary().has_clique() ? 3 : 2) +
                                                    " coordinates");
    }
    const product_vertex v{coords[0], coords[1], coords.size() == 3 ? coords[2] : 0};
    auto print = [](const char *name, const std::vector<product_vertex> &set) {
        std::cout << name << " (" << set.size() << "):";
        for (const auto &u : set) {
            std::cout << " " << to_string(u);
        }
        std::cout << "\n";
    };
    std::cout << "vertex " << to_string(v) << (g.contains(v) ? " (in G)" : " (not in G)") << "\n";
    print("support", support_set(g, v));
    print("risk", risk_set(g, v));
    return ok;
}

// --- bench -----------------------------------------------------------------

struct bench_options {
    std::string variant = "thm1";
    std::vector<index_t> t{1, 2};
    std::vector<index_t> h{5, 10};
    std::vector<index_t> ell{1, 2};
    std::vector<index_t> delta{2, 3};
    index_t r = 24;
    double q = 1.0;
    double p = 1.0;
    unsigned reps = 10;
    std::uint64_t seed_base = 1;
    std::string out;
    std::vector<std::size_t> ladder;
    index_t ladder_t = 3;
    unsigned workers = 1;
};

struct bench_job {
    index_t t, h, ell, delta;
    std::uint64_t seed;
};

struct bench_row {
    run_metadata meta;
    run_stats stats;
    bool verified = true;
    bool exhausted = false;
};

product_subgraph bench_instance(const std::string &variant, const bench_job &job, index_t r, double q, double p) {
    const auto host = random_t_tree(job.t, std::max(r, job.t + 1), derive_seed(job.seed, 0));
    secondary_factor sec;
    if (variant == "thm1") {
        sec = secondary_factor::path(job.h);
    } else if (variant == "thm3") {
        sec = secondary_factor::path_clique(job.h, job.ell);
    } else {
        sec = secondary_factor::general(random_bounded_degree_graph(job.h, job.delta, derive_seed(job.seed, 1)));
    }
    return sample_subgraph(host, sec, q, p, derive_seed(job.seed, 2));
}

int run_bench(const bench_options &o) {
    if (o.variant != "thm1" && o.variant != "thm3" && o.variant != "thm4") {
        throw invalid_parameter("param.variant", "unknown variant " + o.variant);
    }
    if (o.t.empty() || o.h.empty() || (o.variant == "thm3" && o.ell.empty()) ||
        (o.variant == "thm4" && o.delta.empty())) {
        throw invalid_parameter("param.grid", "parameter grids must be non-empty");
    }
    if (!(o.q >= 0 && o.q <= 1 && o.p >= 0 && o.p <= 1)) {
        throw invalid_parameter("param.probability", "probabilities must lie in [0, 1]");
    }
    const std::vector<index_t> ells = o.variant == "thm3" ? o.ell : std::vector<index_t>{1};
    const std::vector<index_t> deltas = o.variant == "thm4" ? o.delta : std::vector<index_t>{0};
    std::vector<bench_job> jobs;
    for (index_t t : o.t) {
        for (index_t h : o.h) {
            for (index_t ell : ells) {
                for (index_t delta : deltas) {
                    for (unsigned rep = 0; rep < o.reps; ++rep) {
                        jobs.push_back({t, h, ell, delta, o.seed_base + rep});
                    }
                }
            }
        }
    }
    std::vector<bench_row> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t n = next++; n < jobs.size(); n = next++) {
            const auto g = bench_instance(o.variant, jobs[n], o.r, o.q, o.p);
            const colour_t palette = theorem_palette(g);
            auto &row = rows[n];
            const auto start = std::chrono::steady_clock::now();
            try {
                const auto result = colour_greedy(g, palette);
                const double ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                row.meta = describe_run(g, o.variant, jobs[n].seed, palette, ms);
                row.stats = result.stats;
                row.verified = verify_proper(g, result.colours).ok() && verify_odd(g, result.colours).report.ok() &&
                               verify_support_distinct(g, result.colours).ok();
            } catch (const palette_exhausted &) {
                row.meta = describe_run(g, o.variant, jobs[n].seed, palette, 0.0);
                row.exhausted = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::max(1u, o.workers); ++w) {
        pool.emplace_back(work);
    }
    for (auto &th : pool) {
        th.join();
    }

    std::ostringstream csv;
    csv << stats_csv_header() << "\n";
    bool all_verified = true;
    bool any_exhausted = false;
    for (const auto &row : rows) {
        csv << stats_csv_row(row.meta, row.stats) << "\n";
        all_verified = all_verified && row.verified;
        any_exhausted = any_exhausted || row.exhausted;
    }
    // Per-cell summary.
    for (std::size_t a = 0; a < rows.size(); a += o.reps) {
        std::size_t worst = 0;
        std::size_t worst_xy = 0;
        for (std::size_t b = a; b < std::min(rows.size(), a + o.reps); ++b) {
            worst = std::max(worst, rows[b].stats.colours_used);
            worst_xy = std::max(worst_xy, rows[b].stats.max_xy);
        }
        const auto &job = jobs[a];
        std::cerr << "cell " << o.variant << " t=" << job.t << " h=" << job.h;
        if (o.variant == "thm3") {
            std::cerr << " ell=" << job.ell;
        }
        if (o.variant == "thm4") {
            std::cerr << " delta<=" << job.delta;
        }
        std::cerr << ": max colours_used " << worst << " / palette " << rows[a].meta.palette << ", max |X+Y| "
                  << worst_xy << "\n";
    }

    double previous = 0.0;
    std::size_t previous_n = 0;
    for (std::size_t target : o.ladder) {
        const index_t h = static_cast<index_t>(std::min<std::size_t>(100, std::max<std::size_t>(1, target)));
        const index_t r = std::max<index_t>(o.ladder_t + 1, static_cast<index_t>((target + h - 1) / h));
        const auto host = random_t_tree(o.ladder_t, r, derive_seed(o.seed_base, 7));
        const auto g = full_product(host, secondary_factor::path(h));
        double best = 0.0;
        run_stats stats;
        for (int attempt = 0; attempt < 3; ++attempt) {
            const auto start = std::chrono::steady_clock::now();
            const auto result = colour_ttree_path(g);
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            best = attempt == 0 ? ms : std::min(best, ms);
            stats = result.stats;
        }
        csv << stats_csv_row(describe_run(g, "thm1-ladder", o.seed_base, palette_ttree_path(o.ladder_t), best), stats)
            << "\n";
        std::cerr << "ladder n=" << g.n() << " m=" << g.m() << " millis=" << best;
        if (previous > 0.0) {
            std::cerr << " ratio=" << best / previous << " for size x" << static_cast<double>(g.n()) / previous_n;
        }
        std::cerr << "\n";
        previous = best;
        previous_n = g.n();
    }
    emit(o.out, csv.str());
    if (any_exhausted) {
        return invariant_breach;
    }
    return all_verified ? ok : check_failed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Proper odd colourings of subgraphs of strong products with bounded-treewidth hosts"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    std::function<int()> action;

    gen_options gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a random product instance");
    gen_cmd->add_option("--t", gen.t, "Host width")->required();
    gen_cmd->add_option("--r", gen.r, "Host vertex count (>= t+1)")->required();
    gen_cmd->add_option("--h", gen.h, "Second factor vertex count")->required();
    gen_cmd->add_option("--factor", gen.factor, "path | path_clique | general");
    gen_cmd->add_option("--ell", gen.ell, "Clique order for path_clique");
    gen_cmd->add_option("--i-kind", gen.i_kind, "General factor: single | k2 | path | cycle | random | file");
    gen_cmd->add_option("--i-delta", gen.i_delta, "Maximum degree for --i-kind random");
    gen_cmd->add_option("--i-file", gen.i_file, "Graph document for --i-kind file");
    gen_cmd->add_option("--q", gen.q, "Vertex keep probability");
    gen_cmd->add_option("--p", gen.p, "Edge keep probability");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output file (- for stdout)")->required();
    gen_cmd->callback([&] { action = [&] { return run_gen(gen); }; });

    colour_options col;
    auto *col_cmd = app.add_subcommand("colour", "Colour an instance with the greedy construction");
    col_cmd->add_option("--in", col.in, "Instance file")->required();
    col_cmd->add_option("--variant", col.variant, "thm1 | thm3 | thm4")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm3", "thm4"}));
    col_cmd->add_option("--out", col.out, "Colouring output file (- for stdout)")->required();
    col_cmd->add_option("--stats", col.stats, "Append a RunStats row to this CSV");
    col_cmd->add_option("--palette", col.palette, "Palette override");
    col_cmd->add_flag("--unsafe", col.unsafe, "Allow palettes below the guaranteed bound");
    col_cmd->add_option("--seed", col.seed, "Seed recorded in the stats row");
    col_cmd->callback([&] { action = [&] { return run_colour(col); }; });

    std::string v_instance;
    std::string v_colouring;
    std::vector<std::string> v_checks{"proper", "odd", "support"};
    auto *ver_cmd = app.add_subcommand("verify", "Verify a colouring against an instance");
    ver_cmd->add_option("--instance", v_instance, "Instance file")->required();
    ver_cmd->add_option("--colouring", v_colouring, "Colouring file")->required();
    ver_cmd->add_option("--checks", v_checks, "Comma-separated subset of proper,odd,support")->delimiter(',');
    ver_cmd->callback([&] { action = [&] { return run_verify(v_instance, v_colouring, v_checks); }; });

    std::string o_in;
    std::string o_graph;
    std::optional<colour_t> o_max;
    index_t o_cap = 12;
    unsigned o_workers = default_workers();
    auto *orc_cmd = app.add_subcommand("oracle", "Exact odd chromatic number of a small graph");
    auto *o_in_opt = orc_cmd->add_option("--in", o_in, "Instance or graph document");
    auto *o_graph_opt = orc_cmd->add_option("--graph", o_graph, "Built-in graph: complete:N, path:N, cycle:N, empty:N");
    o_in_opt->excludes(o_graph_opt);
    orc_cmd->add_option("--max-colours", o_max, "Largest palette to try (default n)");
    orc_cmd->add_option("--cap", o_cap, "Refuse graphs with more vertices than this");
    orc_cmd->add_option("--workers", o_workers, "Search threads");
    orc_cmd->callback([&] {
        if (o_in.empty() && o_graph.empty()) {
            throw CLI::RequiredError("--in or --graph");
        }
        action = [&] { return run_oracle(o_in, o_graph, o_max, o_cap, o_workers); };
    });

    std::string i_in;
    std::string i_vertex;
    auto *ins_cmd = app.add_subcommand("inspect", "Print the support and risk sets of a product vertex");
    ins_cmd->add_option("--in", i_in, "Instance file")->required();
    ins_cmd->add_option("--vertex", i_vertex, "Coordinates i,j or i,j,k")->required();
    ins_cmd->callback([&] { action = [&] { return run_inspect(i_in, i_vertex); }; });

    std::string d_in;
    std::string d_colouring;
    std::string d_out;
    auto *dot_cmd = app.add_subcommand("dot", "Export an instance as Graphviz DOT");
    dot_cmd->add_option("--in", d_in, "Instance file")->required();
    dot_cmd->add_option("--colouring", d_colouring, "Optional colouring file");
    dot_cmd->add_option("--out", d_out, "Output file (default stdout)");
    dot_cmd->callback([&] {
        action = [&] {
            const auto g = load_instance(read_file(d_in));
            std::optional<colouring> phi;
            if (!d_colouring.empty()) {
                phi = load_colouring(read_file(d_colouring));
                require_matching(g, *phi);
            }
            emit(d_out, export_dot(g, phi ? &*phi : nullptr));
            return static_cast<int>(ok);
        };
    });

    bench_options bench;
    bench.workers = default_workers();
    auto *bench_cmd = app.add_subcommand("bench", "Parameter sweep and scaling ladder, CSV output");
    bench_cmd->add_option("--variant", bench.variant, "thm1 | thm3 | thm4");
    bench_cmd->add_option("--t", bench.t, "Host widths")->delimiter(',');
    bench_cmd->add_option("--h", bench.h, "Second factor sizes")->delimiter(',');
    bench_cmd->add_option("--ell", bench.ell, "Clique orders (thm3)")->delimiter(',');
    bench_cmd->add_option("--delta", bench.delta, "Maximum degrees of random I (thm4)")->delimiter(',');
    bench_cmd->add_option("--r", bench.r, "Host vertex count");
    bench_cmd->add_option("--q", bench.q, "Vertex keep probability");
    bench_cmd->add_option("--p", bench.p, "Edge keep probability");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell");
    bench_cmd->add_option("--seed-base", bench.seed_base, "First seed");
    bench_cmd->add_option("--out", bench.out, "CSV output (default stdout)");
    bench_cmd->add_option("--ladder", bench.ladder, "Scaling ladder sizes, e.g. 10000,100000")->delimiter(',');
    bench_cmd->add_option("--ladder-t", bench.ladder_t, "Host width for the ladder");
    bench_cmd->add_option("--workers", bench.workers, "Concurrent runs (default $ODDPROD_WORKERS or 1)");
    bench_cmd->callback([&] { action = [&] { return run_bench(bench); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return bad_input;
    }
    try {
        return action();
    } catch (const palette_exhausted &e) {
        std::cerr << "error [" << e.rule() << "]: " << e.what() << "\n";
        return invariant_breach;
    } catch (const oddprod::error &e) {
        std::cerr << "error [" << e.rule() << "]: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception &e) {
        std::cerr << "error [io]: " << e.what() << "\n";
        return bad_input;
    }
}
