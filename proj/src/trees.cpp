#include "sandpile/trees.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "sandpile/error.hpp"
#include "sandpile/linalg.hpp"

namespace sandpile {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

void require_order(const Multigraph& g, const EdgeOrder& order) {
    if (order.size() != g.edge_count())
        throw Error(ErrorKind::DimensionMismatch, "edge order covers " + std::to_string(order.size()) +
                                                      " edges, graph has " + std::to_string(g.edge_count()));
}

/*
 * Shared marking loop of both bijection directions. Marks stay global: an
 * edge is examined once, when it is the order-smallest unmarked edge with
 * exactly one burnt endpoint. `on_mark(edge, outside_vertex)` decides
 * whether the outside vertex burns now.
 */
class BurningFront {
public:
    BurningFront(const Multigraph& g, Vertex q, const EdgeOrder& order)
        : g_(g), order_(order), burnt_(g.vertex_count(), 0), incident_(g.vertex_count()) {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            incident_[g.edge(e).u].push_back(e);
            incident_[g.edge(e).v].push_back(e);
        }
        ignite(q);
    }

    std::size_t burnt_count() const noexcept { return burnt_count_; }

    // Next boundary edge and its unburnt endpoint; false when none remains.
    bool next(EdgeId& edge, Vertex& outside) {
        while (!heap_.empty()) {
            const EdgeId e = heap_.top().second;
            heap_.pop();
            const auto [u, v] = g_.edge(e);
            if (burnt_[u] && burnt_[v]) continue;
            edge = e;
            outside = burnt_[u] ? v : u;
            return true;
        }
        return false;
    }

    void ignite(Vertex v) {
        burnt_[v] = 1;
        ++burnt_count_;
        for (EdgeId e : incident_[v]) {
            const auto [a, b] = g_.edge(e);
            if (!burnt_[a == v ? b : a]) heap_.emplace(order_.rank(e), e);
        }
    }

private:
    using Entry = std::pair<std::size_t, EdgeId>;

    const Multigraph& g_;
    const EdgeOrder& order_;
    std::vector<char> burnt_;
    std::size_t burnt_count_ = 0;
    std::vector<std::vector<EdgeId>> incident_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

} // namespace

EdgeOrder::EdgeOrder(std::size_t m) : rank_(m), sequence_(m) {
    std::iota(rank_.begin(), rank_.end(), 0);
    std::iota(sequence_.begin(), sequence_.end(), 0);
}

EdgeOrder::EdgeOrder(std::size_t m, const std::vector<EdgeId>& sequence) : rank_(m, m), sequence_(sequence) {
    if (sequence.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "edge order must list exactly " + std::to_string(m) + " edges");
    for (std::size_t pos = 0; pos < m; ++pos) {
        const EdgeId e = sequence[pos];
        if (e >= m || rank_[e] != m)
            throw Error(ErrorKind::DimensionMismatch, "edge order is not a permutation of 0.." + std::to_string(m - 1));
        rank_[e] = pos;
    }
}

EdgeOrder EdgeOrder::reversed(std::size_t m) {
    std::vector<EdgeId> seq(m);
    for (std::size_t i = 0; i < m; ++i) seq[i] = m - 1 - i;
    return EdgeOrder(m, seq);
}

bool is_spanning_tree(const Multigraph& g, const std::vector<EdgeId>& edges) {
    if (edges.size() + 1 != g.vertex_count()) return false;
    DisjointSets sets(g.vertex_count());
    for (EdgeId e : edges) {
        if (e >= g.edge_count()) return false;
        if (!sets.unite(g.edge(e).u, g.edge(e).v)) return false;
    }
    return true;
}

SpanningTree tree_from_reduced(const Multigraph& g, Vertex q, const EdgeOrder& order, const Divisor& d) {
    g.check_vertex(q);
    require_order(g, order);
    if (d.size() != g.vertex_count()) throw Error(ErrorKind::DimensionMismatch, "tree_from_reduced: divisor length mismatch");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == q) continue;
        if (sgn(d[v]) < 0 || d[v] >= g.degree(v))
            throw Error(ErrorKind::ValueOutOfRange, "tree_from_reduced: D(" + std::to_string(v) + ") = " + d[v].get_str() +
                                                        " outside [0, deg - 1]");
    }
    if (!is_reduced(g, d, q)) throw Error(ErrorKind::NotReduced, "tree_from_reduced: divisor is not q-reduced");

    BurningFront front(g, q, order);
    std::vector<std::size_t> marks(g.vertex_count(), 0);
    SpanningTree t;
    EdgeId e;
    Vertex v;
    while (front.burnt_count() < g.vertex_count() && front.next(e, v)) {
        if (++marks[v] > d[v]) {
            t.edges.push_back(e);
            front.ignite(v);
        }
    }
    if (front.burnt_count() < g.vertex_count())
        throw Error(ErrorKind::NotReduced, "tree_from_reduced: burning stalled");
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

Divisor reduced_from_tree(const Multigraph& g, Vertex q, const EdgeOrder& order, const SpanningTree& t) {
    g.check_vertex(q);
    require_order(g, order);
    if (!is_spanning_tree(g, t.edges))
        throw Error(ErrorKind::NotSpanningTree, "reduced_from_tree: edge set is not a spanning tree");

    std::vector<char> in_tree(g.edge_count(), 0);
    for (EdgeId e : t.edges) in_tree[e] = 1;

    BurningFront front(g, q, order);
    std::vector<std::size_t> marks(g.vertex_count(), 0);
    Divisor d(g.vertex_count());
    Integer off_q = 0;
    EdgeId e;
    Vertex v;
    while (front.burnt_count() < g.vertex_count() && front.next(e, v)) {
        ++marks[v];
        if (in_tree[e]) {
            d[v] = static_cast<unsigned long>(marks[v] - 1);
            off_q += d[v];
            front.ignite(v);
        }
    }
    if (front.burnt_count() < g.vertex_count())
        throw Error(ErrorKind::NotSpanningTree, "reduced_from_tree: burning stalled");
    d[q] = -off_q;
    return d;
}

EnumerationLimit EnumerationLimit::from_environment() {
    EnumerationLimit limit;
    if (const char* env = std::getenv("SANDPILE_TREE_LIMIT")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            limit.max_items = static_cast<std::size_t>(value);
            limit.max_search = std::max<std::size_t>(limit.max_search, static_cast<std::size_t>(value));
        }
    }
    return limit;
}

std::vector<SpanningTree> enumerate_spanning_trees(const Multigraph& g, EnumerationLimit limit) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    std::vector<SpanningTree> out;
    std::vector<EdgeId> chosen;
    chosen.reserve(n - 1);

    // Edges are tried in id order, so leaves come out lexicographically sorted.
    // component[v] labels the forest built from `chosen`.
    std::function<void(EdgeId, std::vector<std::size_t>&)> extend = [&](EdgeId start, std::vector<std::size_t>& component) {
        if (chosen.size() + 1 == n) {
            if (out.size() == limit.max_items)
                throw Error(ErrorKind::TooLarge, "more than " + std::to_string(limit.max_items) + " spanning trees");
            out.push_back(SpanningTree{chosen});
            return;
        }
        const std::size_t needed = n - 1 - chosen.size();
        for (EdgeId e = start; e + needed <= m; ++e) {
            const std::size_t a = component[g.edge(e).u];
            const std::size_t b = component[g.edge(e).v];
            if (a == b) continue;
            std::vector<std::size_t> merged = component;
            for (auto& c : merged)
                if (c == a) c = b;
            chosen.push_back(e);
            extend(e + 1, merged);
            chosen.pop_back();
        }
    };
    std::vector<std::size_t> component(n);
    std::iota(component.begin(), component.end(), 0);
    extend(0, component);
    return out;
}

std::vector<Divisor> enumerate_parking_functions(const Multigraph& g, Vertex q, EnumerationLimit limit) {
    g.check_vertex(q);
    const std::size_t n = g.vertex_count();

    std::vector<Vertex> free;
    double box = 1.0;
    for (Vertex v = 0; v < n; ++v) {
        if (v == q) continue;
        free.push_back(v);
        box *= static_cast<double>(g.degree(v));
    }
    if (box > static_cast<double>(limit.max_search))
        throw Error(ErrorKind::TooLarge, "parking-function search box has " + std::to_string(box) + " candidates");

    std::vector<Divisor> out;
    Divisor d(n);
    for (;;) {
        if (is_reduced(g, d, q)) {
            if (out.size() == limit.max_items)
                throw Error(ErrorKind::TooLarge, "more than " + std::to_string(limit.max_items) + " parking functions");
            Divisor f = d;
            Integer off_q = 0;
            for (Vertex v : free) off_q += f[v];
            f[q] = -off_q;
            out.push_back(std::move(f));
        }
        // Odometer over prod_{v != q} [0, deg(v)), last free vertex fastest.
        std::size_t i = free.size();
        while (i > 0) {
            const Vertex v = free[i - 1];
            d[v] += 1;
            if (d[v] < g.degree(v)) break;
            d[v] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

BijectionReport verify_bijection(const Multigraph& g, Vertex q, const EdgeOrder& order, EnumerationLimit limit) {
    require_order(g, order);
    BijectionReport report;
    const std::vector<Divisor> parking = enumerate_parking_functions(g, q, limit);
    const std::vector<SpanningTree> trees = enumerate_spanning_trees(g, limit);
    report.parking_functions = parking.size();
    report.spanning_trees = trees.size();
    report.determinant = determinant(reduced_laplacian(g, q));

    std::set<SpanningTree> images;
    bool forward_ok = true;
    report.tree_round_trip = true;
    for (const auto& d : parking) {
        SpanningTree t;
        try {
            t = tree_from_reduced(g, q, order, d);
        } catch (const Error&) {
            forward_ok = false;
            report.tree_round_trip = false;
            continue;
        }
        if (!is_spanning_tree(g, t.edges)) forward_ok = false;
        images.insert(t);
        if (reduced_from_tree(g, q, order, t) != d) report.tree_round_trip = false;
    }
    report.injective = forward_ok && images.size() == parking.size();
    report.surjective = forward_ok && images == std::set<SpanningTree>(trees.begin(), trees.end());

    report.divisor_round_trip = true;
    for (const auto& t : trees) {
        try {
            if (tree_from_reduced(g, q, order, reduced_from_tree(g, q, order, t)) != t) report.divisor_round_trip = false;
        } catch (const Error&) {
            report.divisor_round_trip = false;
        }
    }
    return report;
}

} // namespace sandpile
