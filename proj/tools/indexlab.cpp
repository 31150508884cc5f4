// indexlab: construction, verification, solving and simulation for
// side-information index coding over finite fields.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "indexlab/indexlab.hpp"
#include "indexlab/selftest.hpp"

namespace {

using indexlab::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct ReportEnv {
    json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string out_path;
    bool pretty = false;

    ReportEnv(const std::string& command, int argc, char** argv) {
        report["command"] = command;
        json args = json::array();
        for (int i = 0; i < argc; ++i) args.push_back(std::string(argv[i]));
        report["argv"] = std::move(args);
        report["inputs"] = json::object();
    }

    void input(const std::string& path, const std::string& bytes) {
        report["inputs"][path] = "fnv1a64:" + indexlab::fnv1a64_hex(bytes);
    }

    // timing_ms is the only field excluded from byte-for-byte comparability
    void emit() {
        report["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::string text = report.dump(2) + "\n";
        if (!out_path.empty()) indexlab::write_file(out_path, text);
        if (pretty) {
            render_pretty();
        } else if (out_path.empty()) {
            std::fputs(text.c_str(), stdout);
        }
    }

    void render_pretty() const {
        std::printf("%s\n", report["command"].get<std::string>().c_str());
        if (report.contains("result"))
            for (auto& [k, v] : report["result"].items())
                std::printf("  %-18s %s\n", k.c_str(), v.dump().c_str());
    }
};

indexlab::Graph load_graph(ReportEnv& env, const std::string& path) {
    std::string bytes = indexlab::read_file(path);
    env.input(path, bytes);
    return indexlab::graph_from_json(json::parse(bytes));
}

indexlab::FFMatrix load_matrix(ReportEnv& env, const std::string& path) {
    std::string bytes = indexlab::read_file(path);
    env.input(path, bytes);
    return indexlab::matrix_from_json(json::parse(bytes));
}

indexlab::P4Instance load_p4(ReportEnv& env, const std::string& path) {
    std::string bytes = indexlab::read_file(path);
    env.input(path, bytes);
    return indexlab::p4_from_json(json::parse(bytes));
}

std::string bits_to_string(const indexlab::Codeword& cw) {
    std::string s;
    for (auto b : cw) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace indexlab;

    CLI::App app{"index coding workbench: minrank, Ramsey-type constructions, exact oracles"};
    app.require_subcommand(1);
    unsigned threads = 0;
    bool pretty = false;
    app.add_option("--threads", threads, "worker threads (default: all cores, or INDEXLAB_THREADS)");
    app.add_flag("--pretty", pretty, "render a human table instead of JSON on stdout");

    // construct
    auto* construct = app.add_subcommand("construct", "build a named graph family");
    auto* ramsey_cmd = construct->add_subcommand("ramsey", "the set-system graph with its P/Q certificates");
    std::uint64_t rp = 0, rq = 0;
    std::uint32_t rk = 0, rl = 0, kmax = 20;
    std::uint64_t r_override = 0, vertex_cap = 1'000'000;
    std::string epsilon, out_graph, emit_dir;
    ramsey_cmd->add_option("--p", rp, "prime p")->required();
    ramsey_cmd->add_option("--q", rq, "prime q")->required();
    ramsey_cmd->add_option("--k", rk, "exponent k (omit to search via --epsilon)");
    ramsey_cmd->add_option("--l", rl, "exponent l");
    ramsey_cmd->add_option("--epsilon", epsilon, "margin for the parameter search, e.g. 0.51");
    ramsey_cmd->add_option("--k-max", kmax, "parameter search cap");
    ramsey_cmd->add_option("--r", r_override, "override the canonical ground set size p^{3k}");
    ramsey_cmd->add_option("--vertex-cap", vertex_cap, "refuse instances with more vertices");
    ramsey_cmd->add_option("-o,--output", out_graph, "write the graph JSON here");
    ramsey_cmd->add_option("--emit-matrices", emit_dir, "write P.json and Q.json into this directory");

    // minrank
    auto* minrank_cmd = app.add_subcommand("minrank", "exact minrank or its sandwich bounds");
    std::string mg, mf, mmethod = "exact";
    std::uint64_t mbudget = 20'000'000;
    minrank_cmd->add_option("-g,--graph", mg, "graph JSON")->required();
    minrank_cmd->add_option("-f,--field", mf, "field spec, e.g. 2 or 2^2");
    minrank_cmd->add_option("--method", mmethod, "exact | bounds")->check(CLI::IsMember({"exact", "bounds"}));
    minrank_cmd->add_option("--budget", mbudget, "search node budget");

    // ell
    auto* ell_cmd = app.add_subcommand("ell", "optimal index code length oracles");
    std::string eg, emethod = "confusion";
    std::size_t emaxn = 6;
    ell_cmd->add_option("-g,--graph", eg, "graph JSON")->required();
    ell_cmd->add_option("--method", emethod, "confusion | linear | bounds")
        ->check(CLI::IsMember({"confusion", "linear", "bounds"}));
    ell_cmd->add_option("--max-n", emaxn, "vertex cap for the confusion oracle");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check that a matrix represents a graph");
    std::string vg, vm;
    bool v_complement = false;
    verify_cmd->add_option("-g,--graph", vg, "graph JSON")->required();
    verify_cmd->add_option("-m,--matrix", vm, "matrix JSON")->required();
    verify_cmd->add_flag("--complement", v_complement, "check against the complement of the graph");

    // code
    auto* code_cmd = app.add_subcommand("code", "encode or simulate a linear index code");
    std::string cg, cm, cf, c_encode;
    bool c_sim = false;
    std::uint64_t c_trials = 100, c_seed = 0;
    code_cmd->add_option("-g,--graph", cg, "graph JSON")->required();
    code_cmd->add_option("-m,--matrix", cm, "representing matrix JSON")->required();
    code_cmd->add_option("-f,--field", cf, "field spec; must match the matrix header");
    code_cmd->add_option("--encode", c_encode, "bit string to encode once");
    code_cmd->add_flag("--simulate", c_sim, "run seeded random broadcast rounds");
    code_cmd->add_option("--trials", c_trials, "simulation rounds");
    code_cmd->add_option("--seed", c_seed, "simulation seed (mt19937_64)");

    // graph op
    auto* graph_cmd = app.add_subcommand("graph", "graph operators");
    auto* op_cmd = graph_cmd->add_subcommand("op", "apply an operator");
    std::string op_name, op_out;
    std::vector<std::string> op_inputs;
    std::size_t op_t = 2;
    op_cmd->add_option("name", op_name, "complement | union | blowup | compose | product")
        ->required()
        ->check(CLI::IsMember({"complement", "union", "blowup", "compose", "product"}));
    op_cmd->add_option("-g,--graph", op_inputs, "input graph JSON (repeatable)")->required();
    op_cmd->add_option("-t", op_t, "blow-up factor");
    op_cmd->add_option("-o,--output", op_out, "write the result graph here");

    // p4
    auto* p4_cmd = app.add_subcommand("p4", "shared-request instances");
    auto* p4_minrank_cmd = p4_cmd->add_subcommand("minrank", "exact minrank of the instance");
    auto* p4_bounds_cmd = p4_cmd->add_subcommand("bounds", "the Claim 4.5 sandwich");
    std::string p4_in, p4_f = "2";
    std::uint64_t p4_budget = 20'000'000;
    for (auto* sc : {p4_minrank_cmd, p4_bounds_cmd}) {
        sc->add_option("-i,--instance", p4_in, "P4 instance JSON")->required();
        sc->add_option("-f,--field", p4_f, "field spec");
        sc->add_option("--budget", p4_budget, "search node budget");
    }

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run the full invariant suite");
    std::vector<int> only_ids;
    std::string inject_fault;
    selftest_cmd->add_option("--only", only_ids, "run only these criterion ids");
    selftest_cmd->add_option("--inject-fault", inject_fault, "deliberately break one step (testing the detector)")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (ramsey_cmd->parsed()) {
            ReportEnv env("construct ramsey", argc, argv);
            env.pretty = pretty;
            RamseyParams params = (rk != 0 && rl != 0 && epsilon.empty())
                                      ? make_ramsey_params(rp, rq, rk, rl)
                                      : find_params(rp, rq, parse_rational(epsilon.empty() ? "0.51" : epsilon), kmax);
            std::optional<std::uint64_t> ro;
            if (r_override != 0) ro = r_override;
            RamseyInstance inst = build_ramsey_graph(params, ro, vertex_cap, threads);
            PQMatrices pq = build_PQ(inst, threads);
            ConstructionReport rep = verify_construction_with(inst, pq);
            env.report["result"] = {{"n", rep.n},
                                    {"p", params.p},
                                    {"q", params.q},
                                    {"k", params.k},
                                    {"l", params.l},
                                    {"s", params.s},
                                    {"r", inst.r_used},
                                    {"epsilon", params.epsilon},
                                    {"ok", rep.ok},
                                    {"rank_p_P", rep.rank_p_P},
                                    {"rank_q_Q", rep.rank_q_Q},
                                    {"minrk_lower_q", rep.minrk_lower_q},
                                    {"col_bound_p", rep.col_bound_p},
                                    {"col_bound_q", rep.col_bound_q}};
            env.report["threads"] = resolve_threads(threads);
            if (!out_graph.empty()) indexlab::write_file(out_graph, graph_to_json(inst.graph).dump(2) + "\n");
            if (!emit_dir.empty()) {
                indexlab::write_file(emit_dir + "/P.json", matrix_to_json(pq.P).dump() + "\n");
                indexlab::write_file(emit_dir + "/Q.json", matrix_to_json(pq.Q).dump() + "\n");
            }
            env.emit();
            return rep.ok ? kExitOk : kExitVerifyFailed;
        }

        if (minrank_cmd->parsed()) {
            ReportEnv env("minrank", argc, argv);
            env.pretty = pretty;
            Graph g = load_graph(env, mg);
            if (mmethod == "bounds") {
                MinrankBounds b = minrank_bounds(g);
                env.report["result"] = {{"lower", b.lower}, {"upper", b.upper}};
                env.emit();
                return kExitOk;
            }
            if (mf.empty()) throw std::invalid_argument("minrank --method exact requires -f FIELD");
            FieldSpec f = parse_field_spec(mf);
            MinrankResult r = exact_minrank(g, f, mbudget);
            env.report["result"] = {{"value", r.value}, {"optimal", r.optimal}, {"witness", matrix_to_json(r.witness)}};
            env.report["counters"] = {{"nodes", r.nodes}};
            env.emit();
            return r.optimal ? kExitOk : kExitBudget;
        }

        if (ell_cmd->parsed()) {
            ReportEnv env("ell", argc, argv);
            env.pretty = pretty;
            Graph g = load_graph(env, eg);
            if (emethod == "confusion") {
                EllResult r = exact_ell(g, emaxn);
                std::size_t colors = 0;
                for (int color : r.coloring) colors = std::max<std::size_t>(colors, static_cast<std::size_t>(color) + 1);
                env.report["result"] = {{"ell", r.ell}, {"colors", colors}, {"words", r.coloring.size()}};
            } else if (emethod == "linear") {
                env.report["result"] = {{"ell", exact_linear_ell(g)}};
            } else {
                std::size_t lower = independence_number(g);
                if (!g.symmetric()) lower = std::max(lower, mais(g));
                env.report["result"] = {{"lower", lower}, {"upper", clique_cover_number(g)}};
            }
            env.emit();
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            ReportEnv env("verify", argc, argv);
            env.pretty = pretty;
            Graph g = load_graph(env, vg);
            FFMatrix m = load_matrix(env, vm);
            RepresentsReport rep = represents_check(m, v_complement ? complement(g) : g);
            json viol = json::array();
            for (std::size_t t = 0; t < rep.violations.size() && t < 100; ++t) {
                const auto& v = rep.violations[t];
                viol.push_back({{"i", v.i},
                                {"j", v.j},
                                {"entry", v.entry},
                                {"kind", v.kind == RepresentsViolation::ZeroDiagonal ? "zero-diagonal" : "nonzero-at-non-edge"}});
            }
            env.report["result"] = {{"ok", rep.ok}, {"violations", rep.violations.size()}, {"first_violations", viol}};
            env.emit();
            return rep.ok ? kExitOk : kExitVerifyFailed;
        }

        if (code_cmd->parsed()) {
            ReportEnv env("code", argc, argv);
            env.pretty = pretty;
            Graph g = load_graph(env, cg);
            FFMatrix m = load_matrix(env, cm);
            if (!cf.empty() && parse_field_spec(cf) != m.field())
                throw std::invalid_argument("-f disagrees with the matrix field header");
            LinearIndexCode code(g, m);
            if (!c_encode.empty()) {
                std::vector<std::uint8_t> x;
                for (char ch : c_encode) {
                    if (ch != '0' && ch != '1') throw std::invalid_argument("--encode expects a bit string");
                    x.push_back(ch == '1');
                }
                Codeword cw = code.encode(x);
                env.report["result"] = {{"length_bits", code.length_bits()}, {"codeword", bits_to_string(cw)}};
                env.emit();
                return kExitOk;
            }
            if (!c_sim) throw std::invalid_argument("code requires --encode or --simulate");
            std::mt19937_64 rng(c_seed);
            std::size_t failures = 0;
            std::string transcript;
            for (std::uint64_t t = 0; t < c_trials; ++t) {
                std::vector<std::uint8_t> x(g.n());
                for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1);
                ProtocolResult pr = run_protocol(code, g, x);
                if (!pr.ok) ++failures;
                transcript += bits_to_string(pr.codeword);
                transcript.push_back('\n');
            }
            env.report["rng"] = "mt19937_64";
            env.report["seed"] = c_seed;
            env.report["result"] = {{"trials", c_trials},
                                    {"failures", failures},
                                    {"length_bits", code.length_bits()},
                                    {"transcript_digest", "fnv1a64:" + fnv1a64_hex(transcript)}};
            env.emit();
            return failures == 0 ? kExitOk : kExitVerifyFailed;
        }

        if (op_cmd->parsed()) {
            ReportEnv env("graph op " + op_name, argc, argv);
            env.pretty = pretty;
            std::vector<Graph> gs;
            for (const auto& path : op_inputs) gs.push_back(load_graph(env, path));
            Graph out;
            if (op_name == "complement") {
                if (gs.size() != 1) throw std::invalid_argument("complement takes exactly one graph");
                out = complement(gs[0]);
            } else if (op_name == "union") {
                out = disjoint_union(gs);
            } else if (op_name == "blowup") {
                if (gs.size() != 1) throw std::invalid_argument("blowup takes exactly one graph");
                out = blow_up(gs[0], op_t);
            } else if (op_name == "compose") {
                out = compose(gs);
            } else {
                if (gs.size() != 2) throw std::invalid_argument("product takes exactly two graphs");
                out = strong_product(gs[0], gs[1]);
            }
            env.report["result"] = {{"n", out.n()}, {"edges", out.edge_count()}};
            if (!op_out.empty())
                indexlab::write_file(op_out, graph_to_json(out).dump(2) + "\n");
            else if (!pretty)
                env.report["graph"] = graph_to_json(out);
            env.emit();
            return kExitOk;
        }

        if (p4_minrank_cmd->parsed() || p4_bounds_cmd->parsed()) {
            ReportEnv env(p4_minrank_cmd->parsed() ? "p4 minrank" : "p4 bounds", argc, argv);
            env.pretty = pretty;
            P4Instance inst = load_p4(env, p4_in);
            FieldSpec f = parse_field_spec(p4_f);
            if (p4_minrank_cmd->parsed()) {
                MinrankResult r = p4_minrank(inst, f, p4_budget);
                env.report["result"] = {{"value", r.value}, {"optimal", r.optimal}, {"witness", matrix_to_json(r.witness)}};
                env.report["counters"] = {{"nodes", r.nodes}};
                env.emit();
                return kExitOk;
            }
            P4Graphs pg = build_gind_gcl(inst);
            MinrankResult lo = exact_minrank(pg.g_cl, f, p4_budget);
            MinrankResult hi = exact_minrank(pg.g_ind, f, p4_budget);
            env.report["result"] = {{"lower_g_cl", lo.value}, {"upper_g_ind", hi.value}};
            env.emit();
            return kExitOk;
        }

        if (selftest_cmd->parsed()) {
            ReportEnv env("selftest", argc, argv);
            env.pretty = pretty;
            SelftestOptions opt;
            opt.threads = threads;
            opt.inject_fault = inject_fault;
            std::vector<int> ids = only_ids.empty() ? selftest_ids() : only_ids;
            bool all_pass = true;
            json results = json::array();
            for (int id : ids) {
                CriterionResult r = run_criterion(id, opt);
                all_pass = all_pass && r.pass;
                std::fprintf(stderr, "[%s] criterion %d (%.2fs): %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.seconds,
                             r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
                results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            }
            env.report["result"] = {{"pass", all_pass}, {"criteria", results}};
            env.emit();
            return all_pass ? kExitOk : kExitVerifyFailed;
        }
    } catch (const BudgetExhausted& e) {
        std::fprintf(stderr, "budget exhausted: %s\n", e.what());
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerifyFailed;
    }
    return kExitBadInput;
}
