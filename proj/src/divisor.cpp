#include "sandpile/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "sandpile/error.hpp"
#include "sandpile/linalg.hpp"

namespace sandpile {

namespace {

void require_size(const Multigraph& g, std::size_t size, const char* what) {
    if (size != g.vertex_count())
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected " + std::to_string(g.vertex_count()) +
                                                      " entries, got " + std::to_string(size));
}

/*
 * One pass of the burning scan. Vertices of A = V \ {q} burn once
 * D(v) < outdeg_A(v); outdeg only grows as A shrinks, so a vertex that
 * becomes burnable stays burnable and a worklist visits each vertex once.
 */
struct Burn {
    std::vector<Vertex> order;
    std::vector<char> unburnt;           // membership in the final A
    std::vector<std::size_t> outdeg;     // outdeg_A(v) for the final A
    bool complete = false;
};

Burn burn(const Multigraph& g, const Divisor& d, Vertex q) {
    const std::size_t n = g.vertex_count();
    Burn b;
    b.unburnt.assign(n, 1);
    b.unburnt[q] = 0;
    b.outdeg.assign(n, 0);
    for (const auto& a : g.neighbors(q)) b.outdeg[a.vertex] += a.multiplicity;

    std::vector<char> queued(n, 0);
    std::deque<Vertex> work;
    for (Vertex v = 0; v < n; ++v) {
        if (v != q && d[v] < b.outdeg[v]) {
            queued[v] = 1;
            work.push_back(v);
        }
    }
    b.order.reserve(n ? n - 1 : 0);
    while (!work.empty()) {
        const Vertex v = work.front();
        work.pop_front();
        b.unburnt[v] = 0;
        b.order.push_back(v);
        for (const auto& a : g.neighbors(v)) {
            const Vertex w = a.vertex;
            if (!b.unburnt[w]) continue;
            b.outdeg[w] += a.multiplicity;
            if (!queued[w] && d[w] < b.outdeg[w]) {
                queued[w] = 1;
                work.push_back(w);
            }
        }
    }
    b.complete = b.order.size() + 1 == n;
    return b;
}

void borrow(const Multigraph& g, Divisor& d, Vertex v) {
    d[v] += static_cast<unsigned long>(g.degree(v));
    for (const auto& a : g.neighbors(v)) d[a.vertex] -= static_cast<unsigned long>(a.multiplicity);
}

// d -= k * Q * chi_A
void fire_set(const Multigraph& g, Divisor& d, const std::vector<char>& in_a, const Integer& k) {
    Integer flow;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!in_a[v]) continue;
        for (const auto& a : g.neighbors(v)) {
            if (in_a[a.vertex]) continue;
            flow = k * static_cast<unsigned long>(a.multiplicity);
            d[v] -= flow;
            d[a.vertex] += flow;
        }
    }
}

} // namespace

Divisor::Divisor(std::initializer_list<long> v) {
    values.reserve(v.size());
    for (long x : v) values.emplace_back(x);
}

FiringScript::FiringScript(std::initializer_list<long> c) {
    counts.reserve(c.size());
    for (long x : c) counts.emplace_back(x);
}

Divisor& Divisor::operator+=(const Divisor& other) {
    if (other.size() != size()) throw Error(ErrorKind::DimensionMismatch, "divisor sum: length mismatch");
    for (std::size_t i = 0; i < size(); ++i) values[i] += other.values[i];
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
    if (other.size() != size()) throw Error(ErrorKind::DimensionMismatch, "divisor difference: length mismatch");
    for (std::size_t i = 0; i < size(); ++i) values[i] -= other.values[i];
    return *this;
}

Divisor operator-(Divisor a) {
    for (auto& x : a.values) x = -x;
    return a;
}

Divisor operator*(const Integer& k, Divisor a) {
    for (auto& x : a.values) x *= k;
    return a;
}

Integer degree(const Divisor& d) {
    Integer total = 0;
    for (const auto& x : d.values) total += x;
    return total;
}

Divisor apply_firing(const Multigraph& g, const Divisor& d, const FiringScript& x) {
    require_size(g, d.size(), "apply_firing divisor");
    require_size(g, x.size(), "apply_firing script");
    Divisor out = d;
    Integer flow;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (const auto& a : g.neighbors(v)) {
            // Each edge once, from its smaller endpoint: v sends x(v) and receives x(w) per edge.
            if (a.vertex < v) continue;
            flow = (x.counts[v] - x.counts[a.vertex]) * static_cast<unsigned long>(a.multiplicity);
            out[v] -= flow;
            out[a.vertex] += flow;
        }
    }
    return out;
}

DharResult is_reduced(const Multigraph& g, const Divisor& d, Vertex q) {
    g.check_vertex(q);
    require_size(g, d.size(), "is_reduced");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (v != q && sgn(d[v]) < 0) return {NegativeVertex{v}};

    Burn b = burn(g, d, q);
    if (b.complete) return {BurningOrder{std::move(b.order)}};
    StuckSet stuck;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (b.unburnt[v]) stuck.vertices.push_back(v);
    return {std::move(stuck)};
}

Reducer::Reducer(Multigraph g, Vertex q) : graph_(std::move(g)), q_(q) {
    graph_.check_vertex(q_);
    laplacian_ = sandpile::laplacian(graph_);
    lq_ = generalized_inverse_lq(laplacian_, q_);
    lambda2_ = smallest_reduced_eigenvalue(reduced_laplacian(graph_, q_));
}

void Reducer::check(const Divisor& d) const { require_size(graph_, d.size(), "reduce"); }

Divisor Reducer::bound_values(const Divisor& d, FiringScript* script) const {
    check(d);
    IntegerVector y = floor_rational_vector(lq_ * d.values);
    IntegerVector qy = laplacian_ * y;
    Divisor out = d;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= qy[i];
    if (script) script->counts = std::move(y);
    return out;
}

ReduceResult Reducer::reduce(const Divisor& d, BorrowOrder order) const {
    const std::size_t n = graph_.vertex_count();
    ReduceResult r;
    r.script = FiringScript(n);

    // Step 1: D - Q floor(L_(q) D) has |D(v)| < deg(v) off q.
    Divisor cur = bound_values(d, &r.script);
    r.after_step1 = cur;

    // Step 2: vertices in debt borrow until none is left.
    for (;;) {
        Vertex v = n;
        if (order == BorrowOrder::Ascending) {
            for (Vertex u = 0; u < n && v == n; ++u)
                if (u != q_ && sgn(cur[u]) < 0) v = u;
        } else {
            for (Vertex u = n; u-- > 0 && v == n;)
                if (u != q_ && sgn(cur[u]) < 0) v = u;
        }
        if (v == n) break;
        borrow(graph_, cur, v);
        r.script.counts[v] -= 1;
        r.stats.step2_moves += 1;
    }
    r.after_step2 = cur;

    // Step 3.
    fire_stuck_sets(cur, r.script, r.stats);
    r.reduced = std::move(cur);
    return r;
}

void Reducer::fire_stuck_sets(Divisor& cur, FiringScript& script, MoveStats& stats) const {
    check(cur);
    if (script.size() != cur.size()) throw Error(ErrorKind::DimensionMismatch, "fire_stuck_sets: script size");
    const std::size_t n = graph_.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        if (v != q_ && sgn(cur[v]) < 0)
            throw Error(ErrorKind::ValueOutOfRange, "fire_stuck_sets: negative value at vertex " + std::to_string(v));
    // Whenever the burning scan stalls on a set A, fire A as many times as
    // keeps every vertex of A nonnegative, then rescan from scratch.
    for (;;) {
        Burn b = burn(graph_, cur, q_);
        if (b.complete) break;

        Integer k;
        bool have_k = false;
        std::size_t set_size = 0;
        Integer ratio;
        for (Vertex v = 0; v < n; ++v) {
            if (!b.unburnt[v]) continue;
            ++set_size;
            if (b.outdeg[v] == 0) continue;
            mpz_fdiv_q_ui(ratio.get_mpz_t(), cur[v].get_mpz_t(), b.outdeg[v]);
            if (!have_k || ratio < k) {
                k = ratio;
                have_k = true;
            }
        }
        fire_set(graph_, cur, b.unburnt, k);
        for (Vertex v = 0; v < n; ++v)
            if (b.unburnt[v]) script.counts[v] += k;
        stats.step3_moves += k * static_cast<unsigned long>(set_size);
        ++stats.dhar_restarts;
    }
}

std::optional<FiringScript> Reducer::script_between(const Divisor& from, const Divisor& to) const {
    check(from);
    check(to);
    const Divisor diff = from - to;
    if (sgn(degree(diff)) != 0) return std::nullopt;
    const RationalVector x = lq_ * diff.values;
    FiringScript out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].get_den() != 1) return std::nullopt;
        out.counts[i] = x[i].get_num();
    }
    return out;
}

ReduceResult reduce(const Multigraph& g, const Divisor& d, Vertex q) { return Reducer(g, q).reduce(d); }

Equivalence equivalent(const Multigraph& g, const Divisor& d1, const Divisor& d2) {
    require_size(g, d1.size(), "equivalent");
    require_size(g, d2.size(), "equivalent");
    Equivalence e;
    if (degree(d1) != degree(d2)) return e;
    auto x = solve_integer(laplacian(g), (d1 - d2).values);
    if (!x) return e;
    // Shift by a multiple of the all-ones kernel vector so that x(0) = 0.
    const Integer base = (*x)[0];
    for (auto& xi : *x) xi -= base;
    e.equivalent = true;
    e.script = FiringScript(std::move(*x));
    return e;
}

Divisor to_critical(const Multigraph& g, const Divisor& d, Vertex q) {
    g.check_vertex(q);
    require_size(g, d.size(), "to_critical");
    Divisor c(g.vertex_count());
    Integer off_q = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == q) continue;
        c[v] = static_cast<unsigned long>(g.degree(v));
        c[v] -= 1;
        c[v] -= d[v];
        off_q += c[v];
    }
    c[q] = degree(d) - off_q;
    return c;
}

Integer reduced_l1_norm(const Divisor& d, Vertex q) {
    Integer total = 0;
    for (Vertex v = 0; v < d.size(); ++v)
        if (v != q) total += abs(d[v]);
    return total;
}

MoveBound move_bound(double lambda2, const Multigraph& g, Vertex q, const Divisor& in, const Divisor& out) {
    g.check_vertex(q);
    require_size(g, in.size(), "move_bound");
    require_size(g, out.size(), "move_bound");
    const double root_n = std::sqrt(static_cast<double>(g.vertex_count()));
    MoveBound b;
    b.lambda2 = lambda2;
    const Integer norms = reduced_l1_norm(in, q) + reduced_l1_norm(out, q);
    b.endpoint = sgn(norms) == 0 ? 0.0 : root_n / lambda2 * norms.get_d();
    b.coarse = g.edge_count() == 0 ? 0.0 : 4.0 * root_n * static_cast<double>(g.edge_count()) / lambda2;
    return b;
}

MoveBound move_bound(const Multigraph& g, Vertex q, const Divisor& in, const Divisor& out) {
    return move_bound(smallest_reduced_eigenvalue(reduced_laplacian(g, q)), g, q, in, out);
}

} // namespace sandpile
