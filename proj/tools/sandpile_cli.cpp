#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "sandpile/applications.hpp"
#include "sandpile/divisor.hpp"
#include "sandpile/error.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/io.hpp"
#include "sandpile/jacobian.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/trees.hpp"

using namespace sandpile;
using io::json;

namespace {

constexpr const char* kFormats = R"(File formats:
  graph     text: optional '#' comments, a header line "n m", then m lines "u v"
            (0-based vertex ids; parallel edges allowed; edge ids follow line order)
  divisor   JSON {"values": ["3", "-1", "0"]}  (decimal strings or plain integers)
  tree      JSON {"edges": [0, 2, 5]}
  order     JSON array, a permutation of the edge ids 0..m-1 (default: edge-id order)

Output is JSON on stdout (big integers as decimal strings) unless --format plain.
Domain errors exit 1 with {"error": kind, "message": text} on stderr; usage errors exit 2.
SANDPILE_TREE_LIMIT caps the number of trees or parking functions enumerated.)";

struct Options {
    std::string graph;
    std::string divisor;
    std::string other;
    std::string tree;
    std::string order;
    std::string format = "json";
    Vertex q = 0;
    std::uint64_t seed = 0;
    bool entropy = false;
    std::size_t count = 1;
    unsigned threads = 0;
    bool brute_force = false;
    bool descending = false;
    long at_least = 0;
};

json vertices_json(const std::vector<Vertex>& vs) {
    json out = json::array();
    for (Vertex v : vs) out.push_back(v);
    return out;
}

// "key value" lines; nested keys joined with '.'.
void print_plain(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) print_plain(out, v, prefix.empty() ? k : prefix + "." + k);
        return;
    }
    if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); })) {
        out << prefix;
        for (const auto& x : j) out << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
        out << '\n';
        return;
    }
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) print_plain(out, j[i], prefix + "." + std::to_string(i));
        return;
    }
    out << prefix << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

class Runner {
public:
    explicit Runner(const Options& o) : o_(o) {}

    json run(const std::string& command) {
        if (command == "is-reduced") return is_reduced_cmd();
        if (command == "reduce") return reduce_cmd();
        if (command == "group") return io::presentation_to_json(jacobian(graph(), o_.q));
        if (command == "equivalent") return equivalent_cmd();
        if (command == "sample-tree") return sample_cmd();
        if (command == "count-trees") return count_cmd();
        if (command == "tree-from-divisor") return io::tree_to_json(tree_from_reduced(graph(), o_.q, order(), divisor()));
        if (command == "divisor-from-tree")
            return io::divisor_to_json(reduced_from_tree(graph(), o_.q, order(), io::tree_from_json(io::read_json_file(o_.tree))));
        if (command == "verify-bijection") return bijection_cmd();
        if (command == "winnable") {
            const WinnableResult w = winnable(graph(), divisor(), o_.q);
            return json{{"winnable", w.winnable}, {"reduced", io::divisor_to_json(w.reduced)}};
        }
        if (command == "strategy") return json{{"script", io::script_to_json(winning_strategy(graph(), divisor(), o_.q))}};
        if (command == "rank")
            return json{{"at_least", o_.at_least}, {"result", rank_at_least(graph(), divisor(), o_.q, o_.at_least)}};
        throw Error(ErrorKind::ParseError, "unknown subcommand " + command);
    }

private:
    const Multigraph& graph() {
        if (!graph_) graph_ = read_graph_file(o_.graph);
        return *graph_;
    }

    Divisor divisor() { return io::divisor_from_json(io::read_json_file(o_.divisor)); }

    EdgeOrder order() {
        if (o_.order.empty()) return EdgeOrder(graph().edge_count());
        return io::order_from_json(io::read_json_file(o_.order), graph().edge_count());
    }

    json is_reduced_cmd() {
        const DharResult r = is_reduced(graph(), divisor(), o_.q);
        if (const auto* b = std::get_if<BurningOrder>(&r.certificate))
            return json{{"reduced", true}, {"burning_order", vertices_json(b->order)}};
        if (const auto* neg = std::get_if<NegativeVertex>(&r.certificate))
            return json{{"reduced", false}, {"negative_vertex", neg->vertex}};
        return json{{"reduced", false}, {"stuck_set", vertices_json(std::get<StuckSet>(r.certificate).vertices)}};
    }

    json reduce_cmd() {
        const Reducer reducer(graph(), o_.q);
        const Divisor d = divisor();
        const ReduceResult r = reducer.reduce(d, o_.descending ? BorrowOrder::Descending : BorrowOrder::Ascending);
        const MoveBound b2 = move_bound(reducer.lambda2(), graph(), o_.q, r.after_step1, r.after_step2);
        const MoveBound b3 = move_bound(reducer.lambda2(), graph(), o_.q, r.after_step2, r.reduced);
        return json{{"reduced", io::divisor_to_json(r.reduced)},
                    {"script", io::script_to_json(r.script)},
                    {"moves",
                     {{"step2", io::integer_to_json(r.stats.step2_moves)},
                      {"step3", io::integer_to_json(r.stats.step3_moves)},
                      {"dhar_restarts", r.stats.dhar_restarts}}},
                    {"bound",
                     {{"lambda2", b2.lambda2},
                      {"coarse", b2.coarse},
                      {"step2_endpoint", b2.endpoint},
                      {"step3_endpoint", b3.endpoint}}}};
    }

    json equivalent_cmd() {
        const Equivalence e =
            equivalent(graph(), divisor(), io::divisor_from_json(io::read_json_file(o_.other)));
        json out{{"equivalent", e.equivalent}};
        if (e.script) out["script"] = io::script_to_json(*e.script);
        return out;
    }

    json sample_cmd() {
        std::uint64_t seed = o_.seed;
        if (o_.entropy) {
            std::random_device rd;
            seed = (std::uint64_t{rd()} << 32) ^ rd();
        }
        const TreeSampler sampler(graph(), o_.q, order());
        const SampleReport r = sampler.sample_many(seed, o_.count, o_.threads);
        json trees = json::array();
        for (const auto& t : r.trees) trees.push_back(io::tree_to_json(t));
        return json{{"seed", std::to_string(seed)}, {"count", o_.count}, {"trees", trees}};
    }

    json count_cmd() {
        const Integer det = determinant(reduced_laplacian(graph(), o_.q));
        json out{{"determinant", io::integer_to_json(det)}};
        if (o_.brute_force) {
            const std::size_t trees = enumerate_spanning_trees(graph(), EnumerationLimit::from_environment()).size();
            out["enumerated"] = std::to_string(trees);
            out["agrees"] = det == static_cast<unsigned long>(trees);
        }
        return out;
    }

    json bijection_cmd() {
        const BijectionReport r = verify_bijection(graph(), o_.q, order(), EnumerationLimit::from_environment());
        return json{{"passed", r.passed()},
                    {"parking_functions", std::to_string(r.parking_functions)},
                    {"spanning_trees", std::to_string(r.spanning_trees)},
                    {"determinant", io::integer_to_json(r.determinant)},
                    {"injective", r.injective},
                    {"surjective", r.surjective},
                    {"tree_round_trip", r.tree_round_trip},
                    {"divisor_round_trip", r.divisor_round_trip}};
    }

    const Options& o_;
    std::optional<Multigraph> graph_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chip-firing on finite multigraphs: reduced divisors, the sandpile group and spanning trees."};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Options o;
    auto add = [&](const std::string& name, const std::string& help, bool needs_divisor) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--graph,-g", o.graph, "Graph file")->required()->check(CLI::ExistingFile);
        sub->add_option("--q,-q", o.q, "Base vertex")->capture_default_str();
        sub->add_option("--format", o.format, "Output mode")->check(CLI::IsMember({"json", "plain"}))->capture_default_str();
        if (needs_divisor) sub->add_option("--divisor,-d", o.divisor, "Divisor file (JSON)")->required()->check(CLI::ExistingFile);
        return sub;
    };
    auto add_order = [&](CLI::App* sub) {
        sub->add_option("--order", o.order, "Edge order file (JSON permutation)")->check(CLI::ExistingFile);
    };

    add("is-reduced", "Dhar burning test with certificate", true);
    add("reduce", "q-reduced form, firing script, move counts and move bound", true)
        ->add_flag("--descending", o.descending, "Borrow from debtors in descending vertex order");
    add("group", "Invariant factors and generators of the sandpile group", false);
    add("equivalent", "Linear equivalence of two divisors", true)
        ->add_option("--other", o.other, "Second divisor file")->required()->check(CLI::ExistingFile);
    CLI::App* sample = add("sample-tree", "Uniform random spanning trees", false);
    add_order(sample);
    sample->add_option("--count,-n", o.count, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    sample->add_option("--seed,-s", o.seed, "Master seed")->capture_default_str();
    sample->add_flag("--entropy", o.entropy, "Draw the master seed from the OS");
    sample->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
    add("count-trees", "Number of spanning trees via det of the reduced Laplacian", false)
        ->add_flag("--brute-force", o.brute_force, "Cross-check by enumerating the trees");
    add_order(add("tree-from-divisor", "Spanning tree of a q-reduced divisor", true));
    CLI::App* from_tree = add("divisor-from-tree", "q-reduced divisor of a spanning tree", false);
    add_order(from_tree);
    from_tree->add_option("--tree,-t", o.tree, "Tree file (JSON)")->required()->check(CLI::ExistingFile);
    add_order(add("verify-bijection", "Exhaustive check of the divisor/tree bijection", false));
    add("winnable", "Whether the dollar game is winnable", true);
    add("strategy", "Firing script reaching an effective divisor", true);
    add("rank", "Test r(D) >= C", true)->add_option("--at-least", o.at_least, "Constant C")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Runner runner(o);
        const json out = runner.run(app.get_subcommands().front()->get_name());
        if (o.format == "plain") print_plain(std::cout, out, "");
        else std::cout << out.dump() << '\n';
        return 0;
    } catch (const Error& e) {
        std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
}
