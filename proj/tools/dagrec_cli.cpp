// Command-line driver: structure recovery, separation queries, consistent
// extensions, and linear-Gaussian simulation over the graph JSON / CSV
// formats documented in the README.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "dagrec/dagrec.hpp"

namespace {

using namespace dagrec;

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
}

void emit_graph(const Pdag& g, const std::string& format, const std::string& path) {
    if (format == "dot") write_text(path, to_dot(g));
    else write_text(path, to_json(g).dump(2) + "\n");
}

struct OracleConfig {
    std::string kind = "dsep";
    std::string truth_path;
    std::string data_path;
    double alpha = 0.01;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--oracle", kind, "Independence oracle: dsep or fisherz")
            ->check(CLI::IsMember({"dsep", "fisherz"}));
        cmd->add_option("--truth", truth_path, "Ground-truth graph JSON (dsep oracle)");
        cmd->add_option("--data", data_path, "Dataset CSV (fisherz oracle)");
        cmd->add_option("--alpha", alpha, "Significance level for fisherz")
            ->check(CLI::Range(1e-12, 1.0));
    }

    // Returns the oracle plus the variable labels it is defined over.
    std::pair<std::shared_ptr<IndependenceOracle>, std::vector<std::string>> build() const {
        if (kind == "dsep") {
            if (truth_path.empty()) throw io_error("--oracle dsep requires --truth");
            const Dag truth = load_dag(truth_path);
            return {std::make_shared<PerfectOracle>(truth), truth.labels};
        }
        if (data_path.empty()) throw io_error("--oracle fisherz requires --data");
        const Dataset data = load_csv(data_path);
        return {std::make_shared<FisherZOracle>(data, alpha), data.columns};
    }
};

int run_skeleton(const OracleConfig& oc, std::optional<std::size_t> max_cond,
                 const std::string& format, const std::string& output,
                 const std::string& sepsets_path) {
    auto [oracle, labels] = oc.build();
    auto [skel, sepsets] = find_skeleton(*oracle, labels, max_cond);
    emit_graph(Pdag::from_ugraph(skel), format, output);
    if (!sepsets_path.empty())
        write_text(sepsets_path, to_json(sepsets, labels).dump(2) + "\n");
    return 0;
}

int run_recover(const OracleConfig& oc, std::optional<std::size_t> max_cond,
                const std::string& format, const std::string& output,
                const std::string& sepsets_path, const std::string& trace_path,
                const std::string& stats_path) {
    auto [oracle, labels] = oc.build();
    RecoverOptions opts;
    opts.max_cond = max_cond;
    opts.strict_colliders = oc.kind == "dsep";
    const RecoveryResult res = recover(oracle, labels, opts);
    emit_graph(res.pdag, format, output);
    if (!sepsets_path.empty())
        write_text(sepsets_path, to_json(res.sepsets, labels).dump(2) + "\n");
    if (!trace_path.empty()) {
        std::string lines;
        for (const auto& e : res.trace) lines += trace_line(e, labels) + "\n";
        write_text(trace_path, lines);
    }
    if (!stats_path.empty()) write_text(stats_path, to_json(res.stats).dump(2) + "\n");
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

int run_dsep(const std::string& graph_path, std::vector<std::string> queries,
             const std::string& query_file) {
    const Pdag g = load_pdag(graph_path);
    if (!query_file.empty()) {
        std::ifstream in(query_file);
        if (!in) throw io_error("cannot open " + query_file);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) queries.push_back(line);
    }
    if (queries.empty()) throw io_error("no queries given (use --query or --queries)");
    for (const auto& text : queries) {
        const SeparationQuery q = parse_query(text, g);
        const bool connected = g.fully_directed()
                                   ? active_trail_exists(g.as_dag(), q)
                                   : active_ptrail_exists(g, q);
        std::cout << (connected ? "connected" : "separated") << "\n";
    }
    return 0;
}

int run_extend(const std::string& graph_path, const std::string& format,
               const std::string& output) {
    const Pdag g = load_pdag(graph_path);
    // Replay the removal sequence to surface the per-node records.
    Pdag working = g;
    nlohmann::json removals = nlohmann::json::array();
    while (working.size() > 0) {
        const auto rem = removable_nodes(working);
        if (rem.empty()) {
            if (!working.undirected.empty())
                throw graph_error("inextensible: no removable node while undirected edges remain");
            break;
        }
        auto [next, rec] = remove_node(working, *rem.begin());
        nlohmann::json enforced = nlohmann::json::array();
        for (const auto& [t, h] : rec.enforced) enforced.push_back({t, h});
        removals.push_back({{"removed", rec.removed}, {"enforced", enforced}});
        working = std::move(next);
    }
    const Dag derived = derive_dag(g);
    if (format == "dot") {
        write_text(output, to_dot(derived));
    } else {
        nlohmann::json j{{"dag", to_json(derived)}, {"removals", removals}};
        write_text(output, j.dump(2) + "\n");
    }
    return 0;
}

int run_enumerate(const std::string& graph_path, std::size_t cap,
                  std::size_t max_undirected, const std::string& output) {
    const Pdag g = load_pdag(graph_path);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : enumerate_extensions(g, cap, max_undirected))
        arr.push_back(to_json(d));
    write_text(output, arr.dump(2) + "\n");
    return 0;
}

int run_simulate(const std::string& truth_path, std::size_t nodes, double edge_prob,
                 std::size_t rows, std::uint64_t seed, const std::string& weights,
                 const std::string& prefix) {
    Dag truth;
    if (!truth_path.empty()) truth = load_dag(truth_path);
    else truth = random_dag(nodes, edge_prob, seed);
    const LinearModel model =
        weights == "unit" ? unit_model(truth) : random_model(truth, seed + 1);
    const Dataset data = sample(model, rows, seed + 2);
    {
        std::ofstream out(prefix + ".csv");
        if (!out) throw io_error("cannot open " + prefix + ".csv for writing");
        write_csv(data, out);
    }
    write_text(prefix + ".truth.json", to_json(truth).dump(2) + "\n");
    std::cerr << "wrote " << prefix << ".csv and " << prefix << ".truth.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure recovery from conditional independence"};
    app.require_subcommand(1);

    OracleConfig skel_oc, rec_oc;
    std::optional<std::size_t> skel_max_cond, rec_max_cond;
    std::string skel_format = "json", rec_format = "json";
    std::string skel_output = "-", rec_output = "-";
    std::string skel_sepsets, rec_sepsets, rec_trace, rec_stats;

    auto* skel = app.add_subcommand("skeleton", "Recover the undirected skeleton");
    skel_oc.add_flags(skel);
    skel->add_option("--max-cond", skel_max_cond, "Largest conditioning set searched");
    skel->add_option("--format", skel_format)->check(CLI::IsMember({"json", "dot"}));
    skel->add_option("-o,--output", skel_output, "Graph output path (- for stdout)");
    skel->add_option("--sepsets", skel_sepsets, "Write separating sets JSON here");

    auto* rec = app.add_subcommand("recover", "Full pipeline: skeleton, colliders, closure");
    rec_oc.add_flags(rec);
    rec->add_option("--max-cond", rec_max_cond, "Largest conditioning set searched");
    rec->add_option("--format", rec_format)->check(CLI::IsMember({"json", "dot"}));
    rec->add_option("-o,--output", rec_output, "Graph output path (- for stdout)");
    rec->add_option("--sepsets", rec_sepsets, "Write separating sets JSON here");
    rec->add_option("--trace", rec_trace, "Write rule-firing trace here");
    rec->add_option("--stats", rec_stats, "Write oracle statistics JSON here");

    std::string dsep_graph;
    std::vector<std::string> dsep_queries;
    std::string dsep_query_file;
    auto* dsep = app.add_subcommand("dsep", "Answer separation queries");
    dsep->add_option("--truth,--graph", dsep_graph, "Graph JSON to query")->required();
    dsep->add_option("--query", dsep_queries, "Query like \"X1 _||_ X7 | X6\"");
    dsep->add_option("--queries", dsep_query_file, "File of queries, one per line");

    std::string ext_graph, ext_format = "json", ext_output = "-";
    auto* ext = app.add_subcommand("extend", "Derive one consistent extension");
    ext->add_option("--graph", ext_graph, "Partially directed graph JSON")->required();
    ext->add_option("--format", ext_format)->check(CLI::IsMember({"json", "dot"}));
    ext->add_option("-o,--output", ext_output);

    std::string enum_graph, enum_output = "-";
    std::size_t enum_cap = 4096, enum_max_undirected = 12;
    auto* enm = app.add_subcommand("enumerate", "Enumerate all consistent extensions");
    enm->add_option("--graph", enum_graph, "Partially directed graph JSON")->required();
    enm->add_option("--cap", enum_cap, "Fail if more extensions than this");
    enm->add_option("--max-undirected", enum_max_undirected,
                    "Largest undirected edge count to enumerate over");
    enm->add_option("-o,--output", enum_output);

    std::string sim_truth, sim_weights = "random", sim_prefix = "sim";
    std::size_t sim_nodes = 8, sim_rows = 1000;
    double sim_edge_prob = 0.3;
    std::uint64_t sim_seed = 0;
    auto* sim = app.add_subcommand("simulate", "Sample linear-Gaussian data from a dag");
    sim->add_option("--truth", sim_truth, "Use this dag instead of a random one");
    sim->add_option("--nodes", sim_nodes, "Random dag node count");
    sim->add_option("--edge-prob", sim_edge_prob, "Random dag edge probability")
        ->check(CLI::Range(0.0, 1.0));
    sim->add_option("--rows", sim_rows, "Sample count");
    sim->add_option("--seed", sim_seed, "Seed pinning graph, weights and samples");
    sim->add_option("--weights", sim_weights)->check(CLI::IsMember({"unit", "random"}));
    sim->add_option("-o,--out-prefix", sim_prefix, "Writes PREFIX.csv and PREFIX.truth.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (skel->parsed())
            return run_skeleton(skel_oc, skel_max_cond, skel_format, skel_output,
                                skel_sepsets);
        if (rec->parsed())
            return run_recover(rec_oc, rec_max_cond, rec_format, rec_output, rec_sepsets,
                               rec_trace, rec_stats);
        if (dsep->parsed()) return run_dsep(dsep_graph, dsep_queries, dsep_query_file);
        if (ext->parsed()) return run_extend(ext_graph, ext_format, ext_output);
        if (enm->parsed())
            return run_enumerate(enum_graph, enum_cap, enum_max_undirected, enum_output);
        if (sim->parsed())
            return run_simulate(sim_truth, sim_nodes, sim_edge_prob, sim_rows, sim_seed,
                                sim_weights, sim_prefix);
    } catch (const parse_error& ex) {
        std::cerr << "PARSE: " << ex.what() << "\n";
        return 2;
    } catch (const io_error& ex) {
        std::cerr << "IO: " << ex.what() << "\n";
        return 2;
    } catch (const oracle_error& ex) {
        std::cerr << "ORACLE: " << ex.what() << "\n";
        return 3;
    } catch (const graph_error& ex) {
        const std::string msg = ex.what();
        if (msg.rfind("inextensible", 0) == 0) {
            std::cerr << "INEXTENSIBLE: " << msg << "\n";
            return 5;
        }
        std::cerr << "GRAPH: " << msg << "\n";
        return 4;
    }
    return 1;
}
