#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "shadowcalc/coherence.hpp"
#include "shadowcalc/json_io.hpp"
#include "shadowcalc/trace.hpp"

using namespace shadowcalc;

namespace {

json read_input(const std::string& path) {
    try {
        if (path.empty() || path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    out << text << "\n";
}

void write_json(const std::string& path, const json& j) { write_output(path, j.dump(2)); }

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("SHADOWCALC_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

MatrixAssignment matrix_assignment_from_json(const json& j) {
    MatrixAssignment a;
    for (const auto& [k, v] : j.at("components").items()) {
        MatrixObject m;
        m.base = labeled_product_from_json(v.at("base"));
        for (const auto& t : m.base.tuples()) m.rank[tuple_elem(t)] = 0;
        for (const auto& pair : v.at("ranks")) {
            std::map<IndexId, Elem> anchor;
            for (const auto& p : pair.at(0)) anchor[p.at(0).get<int>()] = elem_from_json(p.at(1));
            m.rank.at(tuple_elem(anchor)) = pair.at(1).get<long long>();
        }
        a.comp[std::stoi(k)] = std::move(m);
    }
    return a;
}

json matrix_assignment_to_json(const MatrixAssignment& a) {
    json comps = json::object();
    for (const auto& [u, m] : a.comp) {
        json ranks = json::array();
        for (const auto& t : m.base.tuples()) {
            json anchor = json::array();
            for (const auto& [i, e] : t) anchor.push_back(json::array({i, to_json(e)}));
            ranks.push_back(json::array({anchor, static_cast<long long>(m.rank.at(tuple_elem(t)))}));
        }
        comps[std::to_string(u)] = json{{"base", to_json(m.base)}, {"ranks", ranks}};
    }
    return json{{"components", comps}};
}

struct SuiteSpec {
    std::string name;
    std::function<SuiteResult(std::uint64_t, int)> run;
    bool expect_failures = false;
};

std::vector<SuiteSpec> all_suites(bool matrix) {
    std::vector<SuiteSpec> out;
    for (const auto& kind : atomic_kinds())
        out.push_back({"atomic:" + kind, [kind, matrix](std::uint64_t s, int n) {
                           return atomic_suite(kind, s, n, matrix);
                       }});
    out.push_back({"pasting", [](std::uint64_t s, int n) { return pasting_suite(s, n); }});
    out.push_back({"rearrangement", [](std::uint64_t s, int n) { return rearrangement_suite(s, n); }});
    for (const auto& kind : h_kinds())
        out.push_back({"map:" + kind, [kind](std::uint64_t s, int n) { return h_suite(kind, s, n); }});
    out.push_back({"pentagon", [](std::uint64_t s, int n) { return pentagon_suite(s, n); }});
    out.push_back({"unitor", [](std::uint64_t s, int n) { return unitor_suite(s, n); }});
    out.push_back({"shadow-axioms", [](std::uint64_t s, int n) { return shadow_axiom_suite(s, n); }});
    out.push_back(
        {"shadow-coherence", [](std::uint64_t s, int n) { return shadow_coherence_suite(4, s, n); }});
    out.push_back(
        {"four-isomorphisms", [](std::uint64_t s, int n) { return four_isomorphism_suite(s, n); }});
    out.push_back({"untwisting", [](std::uint64_t s, int n) { return untwisting_suite(3, s, n); }});
    out.push_back({"fuller", [](std::uint64_t s, int n) { return fuller_suite(4, 3, s, n); }});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"string diagram calculus engine for symmetric monoidal bifibrations"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    std::uint64_t seed = 0;
    int instances = 100;
    int jobs = 1;
    std::string suite_name = "all";
    std::string backend = "family";
    std::string coloring_path;
    std::vector<int> cut_vertices;
    bool maximal = false;

    auto* validate = app.add_subcommand("validate", "validate a graph, labeled graph, or morphism");
    validate->add_option("--in", in_path, "input JSON (default stdin)");
    validate->add_option("--out", out_path, "output path (default stdout)");

    auto* factorize_cmd = app.add_subcommand("factorize", "canonical darkening/collapsing/covering factors");
    factorize_cmd->add_option("--in", in_path);
    factorize_cmd->add_option("--out", out_path);

    auto* cut_cmd = app.add_subcommand("cut", "cut a labeled graph along internal whites");
    cut_cmd->add_option("--in", in_path);
    cut_cmd->add_option("--out", out_path);
    cut_cmd->add_option("--at", cut_vertices, "vertices to cut at (default: maximal cutting)");
    cut_cmd->add_flag("--maximal", maximal, "apply the maximal cutting");

    auto* gray_cmd = app.add_subcommand("gray-edges", "gray edges of a coloring");
    gray_cmd->add_option("--in", in_path, "JSON with graph and coloring");
    gray_cmd->add_option("--out", out_path);

    auto* plan_cmd = app.add_subcommand("plan", "compile a labeled graph map to an operation plan");
    plan_cmd->add_option("--in", in_path);
    plan_cmd->add_option("--out", out_path);

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a morphism on an assignment");
    eval_cmd->add_option("--in", in_path, "JSON with morphism and assignment");
    eval_cmd->add_option("--out", out_path);
    eval_cmd->add_option("--backend", backend, "family or matrix")->check(CLI::IsMember({"family", "matrix"}));

    auto* check_cmd = app.add_subcommand("check", "locality of an evaluation under cutting");
    check_cmd->add_option("--in", in_path, "JSON with morphism, cut sets, assignment");
    check_cmd->add_option("--out", out_path);

    auto* suite_cmd = app.add_subcommand("suite", "run coherence suites");
    suite_cmd->add_option("--suite", suite_name, "suite name, rotation-negative, or all");
    suite_cmd->add_option("--seed", seed, "random seed (SHADOWCALC_SEED overrides)");
    suite_cmd->add_option("--instances", instances, "instances per suite");
    suite_cmd->add_option("--jobs", jobs, "parallel suite workers");
    suite_cmd->add_option("--backend", backend, "family or matrix")
        ->check(CLI::IsMember({"family", "matrix"}));
    suite_cmd->add_option("--out", out_path);

    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz export of a labeled graph");
    dot_cmd->add_option("--in", in_path, "JSON with graph and optional coloring");
    dot_cmd->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            json j = read_input(in_path);
            ValidationReport r;
            if (j.contains("vmap"))
                r = j.contains("iota") ? validate_labeled_map(labeled_graph_map_from_json(j))
                                       : validate_map(graph_map_from_json(j));
            else if (j.contains("edgeLabel"))
                r = validate_labeled(labeled_graph_from_json(j));
            else
                r = validate_graph(graph_from_json(j));
            write_json(out_path, to_json(r));
            return r.valid() ? 0 : 2;
        }
        if (factorize_cmd->parsed()) {
            GraphMap m = graph_map_from_json(read_input(in_path));
            auto report = validate_map(m);
            if (!report.valid()) {
                write_json(out_path, to_json(report));
                return 2;
            }
            auto [d, c, v] = factorize(m);
            write_json(out_path, json{{"darkening", to_json(d)},
                                      {"collapsing", to_json(c)},
                                      {"covering", to_json(v)},
                                      {"class", to_string(classify_map(m))}});
            return 0;
        }
        if (cut_cmd->parsed()) {
            LabeledGraph g = labeled_graph_from_json(read_input(in_path));
            auto report = validate_labeled(g);
            if (!report.valid()) {
                write_json(out_path, to_json(report));
                return 2;
            }
            if (!cut_vertices.empty() && !maximal) {
                write_json(out_path, to_json(cut_along(g, cut_vertices)));
            } else {
                Constellation c = maximal_cut(g);
                json stars = json::object();
                for (const auto& [e, u] : c.star_of_edge) stars[std::to_string(e)] = u;
                write_json(out_path, json{{"graph", to_json(c.graph)},
                                          {"stars", c.star_count},
                                          {"starOfEdge", stars}});
            }
            return 0;
        }
        if (gray_cmd->parsed()) {
            json j = read_input(in_path);
            LabeledGraph g = labeled_graph_from_json(j.at("graph"));
            Coloring c = coloring_from_json(j.at("coloring"));
            GrayEdgeSet s = gray_edges(g, c);
            json out = json::array();
            for (const auto& e : s.edges)
                out.push_back(json{{"rep", e.rep}, {"edges", e.edges}, {"cycle", e.cycle}});
            write_json(out_path, json{{"grayEdges", out}});
            return 0;
        }
        if (plan_cmd->parsed()) {
            LabeledGraphMap m = labeled_graph_map_from_json(read_input(in_path));
            write_json(out_path, to_json(plan_from(m)));
            return 0;
        }
        if (eval_cmd->parsed()) {
            json j = read_input(in_path);
            LabeledGraphMap m = labeled_graph_map_from_json(j.at("morphism"));
            OperationPlan plan = plan_from(m);
            if (backend == "family") {
                Assignment a = assignment_from_json(j.at("assignment"));
                Assignment out = evaluate<FamilyBackend>(plan, a);
                json card = json::object();
                for (const auto& [u, f] : out.comp) {
                    json fibers = json::array();
                    for (const auto& t : f.base.tuples())
                        fibers.push_back(static_cast<long long>(f.fiber(t).size()));
                    card[std::to_string(u)] = fibers;
                }
                write_json(out_path, json{{"result", to_json(out)}, {"cardinalities", card}});
            } else {
                MatrixAssignment a = matrix_assignment_from_json(j.at("assignment"));
                MatrixAssignment out = evaluate<MatrixBackend>(plan, a);
                write_json(out_path, json{{"result", matrix_assignment_to_json(out)}});
            }
            return 0;
        }
        if (check_cmd->parsed()) {
            json j = read_input(in_path);
            LabeledGraphMap m = labeled_graph_map_from_json(j.at("morphism"));
            Assignment a = assignment_from_json(j.at("assignment"));
            std::vector<VertexId> sc, tc;
            for (const auto& v : j.at("sourceCut")) sc.push_back(v.get<int>());
            for (const auto& v : j.at("targetCut")) tc.push_back(v.get<int>());
            CoherenceVerdict v = check_locality(m, sc, tc, a);
            write_json(out_path, json{{"equal", v.equal}, {"witness", v.witness}});
            return v.equal ? 0 : 3;
        }
        if (dot_cmd->parsed()) {
            json j = read_input(in_path);
            if (j.contains("graph")) {
                LabeledGraph g = labeled_graph_from_json(j.at("graph"));
                Coloring c = coloring_from_json(j.at("coloring"));
                write_output(out_path, to_dot(g, &c));
            } else {
                LabeledGraph g = labeled_graph_from_json(j);
                write_output(out_path, to_dot(g));
            }
            return 0;
        }
        if (suite_cmd->parsed()) {
            std::uint64_t s = effective_seed(seed);
            json out = json::array();
            bool bad = false;
            if (suite_name == "rotation-negative" || suite_name == "all") {
                RotationVerdict v = negative_test_rotation(s);
                bool ok = v.unequal;
                RotationVerdict ctl = negative_test_rotation(s, true);
                ok = ok && !ctl.unequal;
                out.push_back(json{{"suite", "rotation-negative"},
                                   {"verdict", v.unequal ? "unequal-as-expected" : "unexpectedly-equal"},
                                   {"witness", v.witness},
                                   {"control", ctl.unequal ? "unexpectedly-unequal" : "equal"}});
                if (!ok) bad = true;
                if (suite_name != "all") {
                    write_json(out_path, out);
                    return bad ? 3 : 0;
                }
            }
            std::vector<SuiteSpec> specs;
            for (auto& sp : all_suites(backend == "matrix"))
                if (suite_name == "all" || suite_name == sp.name) specs.push_back(sp);
            if (specs.empty() && suite_name != "all") {
                std::cerr << "unknown suite " << suite_name << "\n";
                return 1;
            }
            std::vector<SuiteResult> results(specs.size());
            std::size_t next = 0;
            std::mutex mu;
            auto worker = [&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= specs.size()) return;
                        i = next++;
                    }
                    results[i] = specs[i].run(s, instances);
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            for (const auto& r : results) {
                json witnesses = json::array();
                for (const auto& w : r.witnesses) witnesses.push_back(w);
                out.push_back(json{{"suite", r.name},
                                   {"instances", r.instances},
                                   {"failures", r.failures},
                                   {"witnesses", witnesses}});
                if (!r.ok()) bad = true;
            }
            write_json(out_path, out);
            return bad ? 3 : 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
