#ifndef SANDPILE_TREES_HPP
#define SANDPILE_TREES_HPP

#include <cstddef>
#include <vector>

#include "sandpile/divisor.hpp"
#include "sandpile/graph.hpp"

namespace sandpile {

// Edge ids of a spanning tree, kept sorted ascending.
struct SpanningTree {
    std::vector<EdgeId> edges;

    friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
    friend auto operator<=>(const SpanningTree&, const SpanningTree&) = default;
};

// Total order on edge ids: rank[e] is the position of edge e.
class EdgeOrder {
public:
    // Identity order on m edges.
    explicit EdgeOrder(std::size_t m);
    // `sequence` lists edge ids from first to last. Throws DimensionMismatch
    // unless it is a permutation of 0..m-1.
    EdgeOrder(std::size_t m, const std::vector<EdgeId>& sequence);

    static EdgeOrder reversed(std::size_t m);

    std::size_t size() const noexcept { return rank_.size(); }
    std::size_t rank(EdgeId e) const { return rank_.at(e); }
    const std::vector<EdgeId>& sequence() const noexcept { return sequence_; }

private:
    std::vector<std::size_t> rank_;
    std::vector<EdgeId> sequence_;
};

// True when the edge ids form a spanning tree of g.
bool is_spanning_tree(const Multigraph& g, const std::vector<EdgeId>& edges);

// Burning bijection: q starts burnt; repeatedly mark the order-smallest
// unmarked edge with exactly one burnt endpoint; its other endpoint v gains a
// mark and burns (the edge joining the tree) once its marks exceed D(v).
// Throws ValueOutOfRange / NotReduced.
SpanningTree tree_from_reduced(const Multigraph& g, Vertex q, const EdgeOrder& order, const Divisor& d);

// Inverse of tree_from_reduced; D(q) is set so the degree is zero.
// Throws NotSpanningTree.
Divisor reduced_from_tree(const Multigraph& g, Vertex q, const EdgeOrder& order, const SpanningTree& t);

struct EnumerationLimit {
    std::size_t max_items = 1'000'000;      // trees or parking functions returned
    std::size_t max_search = 100'000'000;   // candidates examined by the parking-function box scan

    // SANDPILE_TREE_LIMIT overrides the default when set.
    static EnumerationLimit from_environment();
};

// All spanning trees in lexicographic order of their sorted edge ids.
// Throws TooLarge once more than limit.max_items trees are found.
std::vector<SpanningTree> enumerate_spanning_trees(const Multigraph& g, EnumerationLimit limit = {});

// All q-reduced divisors with D(q) = -sum_{v != q} D(v), in lexicographic
// order of the off-q values. Throws TooLarge when the search box exceeds
// limit.max_search or the result exceeds limit.max_items.
std::vector<Divisor> enumerate_parking_functions(const Multigraph& g, Vertex q, EnumerationLimit limit = {});

struct BijectionReport {
    std::size_t parking_functions = 0;
    std::size_t spanning_trees = 0;
    Integer determinant;
    bool injective = false;
    bool surjective = false;
    bool tree_round_trip = false;     // reduced_from_tree(tree_from_reduced(D)) == D
    bool divisor_round_trip = false;  // tree_from_reduced(reduced_from_tree(T)) == T

    bool passed() const noexcept {
        return injective && surjective && tree_round_trip && divisor_round_trip &&
               parking_functions == spanning_trees && determinant == static_cast<unsigned long>(spanning_trees);
    }
};

BijectionReport verify_bijection(const Multigraph& g, Vertex q, const EdgeOrder& order, EnumerationLimit limit = {});

} // namespace sandpile

#endif
