#include "sandpile/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "sandpile/error.hpp"
#include "sandpile/random.hpp"

namespace sandpile {

namespace {

bool connected(std::size_t n, const std::vector<std::vector<Adjacency>>& adjacency) {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const auto& a : adjacency[v]) {
            if (!seen[a.vertex]) {
                seen[a.vertex] = 1;
                ++reached;
                stack.push_back(a.vertex);
            }
        }
    }
    return reached == n;
}

} // namespace

std::size_t Multigraph::multiplicity(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const Adjacency& a, Vertex x) { return a.vertex < x; });
    return (it != adj.end() && it->vertex == v) ? it->multiplicity : 0;
}

void Multigraph::check_vertex(Vertex v) const {
    if (v >= n_)
        throw Error(ErrorKind::BadVertexId,
                    "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
}

Multigraph build_graph(std::size_t n, std::vector<Edge> edges) {
    if (n == 0) throw Error(ErrorKind::Disconnected, "graph must have at least one vertex");

    std::vector<std::map<Vertex, std::size_t>> counts(n);
    for (std::size_t id = 0; id < edges.size(); ++id) {
        const auto [u, v] = edges[id];
        if (u >= n || v >= n)
            throw Error(ErrorKind::BadVertexId, "edge " + std::to_string(id) + " has an endpoint outside [0, " +
                                                    std::to_string(n) + ")");
        if (u == v) throw Error(ErrorKind::LoopEdge, "edge " + std::to_string(id) + " is a loop at " + std::to_string(u));
        ++counts[u][v];
        ++counts[v][u];
    }

    Multigraph g;
    g.n_ = n;
    g.degree_.assign(n, 0);
    g.adjacency_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        for (const auto& [w, k] : counts[v]) {
            g.adjacency_[v].push_back({w, k});
            g.degree_[v] += k;
        }
    }
    if (!connected(n, g.adjacency_)) throw Error(ErrorKind::Disconnected, "graph is not connected");

    std::uint64_t h = mix64(n);
    for (const auto& e : edges) h = mix64(h ^ mix64((static_cast<std::uint64_t>(e.u) << 32) ^ e.v));
    g.fingerprint_ = h;
    g.edges_ = std::move(edges);
    return g;
}

IntegerMatrix laplacian(const Multigraph& g) {
    const std::size_t n = g.vertex_count();
    IntegerMatrix q(n, n);
    for (Vertex v = 0; v < n; ++v) {
        q(v, v) = static_cast<unsigned long>(g.degree(v));
        for (const auto& a : g.neighbors(v)) q(v, a.vertex) = -static_cast<long>(a.multiplicity);
    }
    return q;
}

IntegerMatrix reduced_laplacian(const Multigraph& g, Vertex q) {
    g.check_vertex(q);
    const IntegerMatrix full = laplacian(g);
    const std::size_t n = g.vertex_count();
    IntegerMatrix out(n - 1, n - 1);
    for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (i == q) continue;
        for (std::size_t j = 0, c = 0; j < n; ++j) {
            if (j == q) continue;
            out(r, c++) = full(i, j);
        }
        ++r;
    }
    return out;
}

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members) : member_(n, 0) {
    for (Vertex v : members) insert(v);
}

void VertexSet::insert(Vertex v) {
    if (v >= member_.size()) throw Error(ErrorKind::BadVertexId, "vertex " + std::to_string(v) + " outside set universe");
    if (!member_[v]) {
        member_[v] = 1;
        ++size_;
    }
}

void VertexSet::erase(Vertex v) {
    if (v < member_.size() && member_[v]) {
        member_[v] = 0;
        --size_;
    }
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for (Vertex v = 0; v < member_.size(); ++v)
        if (member_[v]) out.push_back(v);
    return out;
}

std::size_t outdeg(const Multigraph& g, const VertexSet& a, Vertex v) {
    g.check_vertex(v);
    if (a.universe() != g.vertex_count())
        throw Error(ErrorKind::DimensionMismatch, "vertex set universe does not match the graph");
    if (!a.contains(v)) throw Error(ErrorKind::VertexNotInSet, "vertex " + std::to_string(v) + " is not in the set");
    std::size_t total = 0;
    for (const auto& adj : g.neighbors(v))
        if (!a.contains(adj.vertex)) total += adj.multiplicity;
    return total;
}

Multigraph parse_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_record = [&](std::istringstream& fields) {
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            fields = std::istringstream(line);
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) {
        return Error(ErrorKind::ParseError, "graph line " + std::to_string(line_no) + ": " + what);
    };

    std::istringstream fields;
    if (!next_record(fields)) throw Error(ErrorKind::ParseError, "graph: missing 'n m' header");
    long long n = -1, m = -1;
    std::string extra;
    if (!(fields >> n >> m) || (fields >> extra) || n < 0 || m < 0) throw fail("expected 'n m'");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_record(fields)) throw Error(ErrorKind::ParseError, "graph: expected " + std::to_string(m) + " edges");
        long long u = -1, v = -1;
        if (!(fields >> u >> v) || (fields >> extra)) throw fail("expected 'u v'");
        if (u < 0 || v < 0)
            throw Error(ErrorKind::BadVertexId, "graph line " + std::to_string(line_no) + ": negative vertex id");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (next_record(fields)) throw fail("trailing content after edge list");
    return build_graph(static_cast<std::size_t>(n), std::move(edges));
}

Multigraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open graph file '" + path + "'");
    return parse_graph(in);
}

std::string format_graph(const Multigraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

} // namespace sandpile
