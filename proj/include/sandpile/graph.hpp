#ifndef SANDPILE_GRAPH_HPP
#define SANDPILE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sandpile/matrix.hpp"

namespace sandpile {

using Vertex = std::size_t;
using EdgeId = std::size_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// A neighbor of some vertex together with the number of parallel edges to it.
struct Adjacency {
    Vertex vertex;
    std::size_t multiplicity;
};

/*
 * Loop-free connected multigraph on vertices 0..n-1.
 *
 * Parallel edges are kept as distinct entries of the edge list, so every edge
 * has its own id (its position in the list). Instances are immutable once
 * built; use build_graph() to construct one.
 */
class Multigraph {
public:
    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    std::size_t degree(Vertex v) const { return degree_.at(v); }

    // Distinct neighbors of v, ascending by vertex id.
    std::span<const Adjacency> neighbors(Vertex v) const { return adjacency_.at(v); }

    // Number of edges joining u and v.
    std::size_t multiplicity(Vertex u, Vertex v) const;

    // Stable 64-bit fingerprint of (n, edge list).
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    void check_vertex(Vertex v) const;

    friend bool operator==(const Multigraph& a, const Multigraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    friend Multigraph build_graph(std::size_t n, std::vector<Edge> edges);

    Multigraph() = default;

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> degree_;
    std::vector<std::vector<Adjacency>> adjacency_;
    std::uint64_t fingerprint_ = 0;
};

// Membership bitmap over 0..n-1.
class VertexSet {
public:
    explicit VertexSet(std::size_t n, bool full = false) : member_(n, full ? 1 : 0), size_(full ? n : 0) {}
    VertexSet(std::size_t n, std::initializer_list<Vertex> members);

    std::size_t universe() const noexcept { return member_.size(); }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool contains(Vertex v) const { return v < member_.size() && member_[v] != 0; }

    void insert(Vertex v);
    void erase(Vertex v);

    std::vector<Vertex> members() const;

private:
    std::vector<unsigned char> member_;
    std::size_t size_ = 0;
};

// Throws LoopEdge, BadVertexId or Disconnected.
Multigraph build_graph(std::size_t n, std::vector<Edge> edges);

IntegerMatrix laplacian(const Multigraph& g);

// Laplacian with row and column q deleted.
IntegerMatrix reduced_laplacian(const Multigraph& g, Vertex q);

// Edges from v (counted with multiplicity) whose other endpoint lies outside a.
std::size_t outdeg(const Multigraph& g, const VertexSet& a, Vertex v);

// Text format: '#' comments, header "n m", then m lines "u v".
Multigraph parse_graph(std::istream& in);
Multigraph read_graph_file(const std::string& path);
std::string format_graph(const Multigraph& g);

} // namespace sandpile

#endif
