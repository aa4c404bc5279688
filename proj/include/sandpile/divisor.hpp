#ifndef SANDPILE_DIVISOR_HPP
#define SANDPILE_DIVISOR_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sandpile/graph.hpp"
#include "sandpile/matrix.hpp"

namespace sandpile {

// Integer number of dollars on each vertex.
struct Divisor {
    IntegerVector values;

    Divisor() = default;
    explicit Divisor(std::size_t n) : values(n) {}
    explicit Divisor(IntegerVector v) : values(std::move(v)) {}
    Divisor(std::initializer_list<long> v);

    std::size_t size() const noexcept { return values.size(); }
    Integer& operator[](Vertex v) { return values[v]; }
    const Integer& operator[](Vertex v) const { return values[v]; }

    Divisor& operator+=(const Divisor& other);
    Divisor& operator-=(const Divisor& other);

    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator-(Divisor a);
    friend Divisor operator*(const Integer& k, Divisor a);
    friend bool operator==(const Divisor&, const Divisor&) = default;
};

// Per-vertex fire counts: positive fires, negative borrows.
struct FiringScript {
    IntegerVector counts;

    FiringScript() = default;
    explicit FiringScript(std::size_t n) : counts(n) {}
    explicit FiringScript(IntegerVector c) : counts(std::move(c)) {}
    FiringScript(std::initializer_list<long> c);

    std::size_t size() const noexcept { return counts.size(); }
    friend bool operator==(const FiringScript&, const FiringScript&) = default;
};

// Vertex moves spent by the reduction. Step 3 counts a k-fold firing of a
// set A as k * |A| single-vertex moves.
struct MoveStats {
    Integer step2_moves = 0;
    Integer step3_moves = 0;
    std::size_t dhar_restarts = 0;
};

Integer degree(const Divisor& d);

// D - Q x. Throws DimensionMismatch.
Divisor apply_firing(const Multigraph& g, const Divisor& d, const FiringScript& x);

// --- Dhar's burning test ---------------------------------------------------

struct BurningOrder {
    std::vector<Vertex> order;  // v_1 .. v_{n-1}
};
struct NegativeVertex {
    Vertex vertex;
};
struct StuckSet {
    std::vector<Vertex> vertices;  // every v here has D(v) >= outdeg_A(v)
};

struct DharResult {
    std::variant<BurningOrder, NegativeVertex, StuckSet> certificate;

    bool reduced() const noexcept { return std::holds_alternative<BurningOrder>(certificate); }
    explicit operator bool() const noexcept { return reduced(); }
};

// Throws BadVertexId / DimensionMismatch.
DharResult is_reduced(const Multigraph& g, const Divisor& d, Vertex q);

// --- Reduction ---------------------------------------------------------------

enum class BorrowOrder { Ascending, Descending };

struct ReduceResult {
    Divisor reduced;
    FiringScript script;  // d - Q * script == reduced, script[q] == 0
    MoveStats stats;
    Divisor after_step1;
    Divisor after_step2;
};

/*
 * Reduction context for a fixed (graph, base vertex).
 *
 * Holds the Laplacian and the generalized inverse L_(q), which is computed
 * once at construction. Const member functions are safe to call concurrently.
 */
class Reducer {
public:
    Reducer(Multigraph g, Vertex q);

    const Multigraph& graph() const noexcept { return graph_; }
    Vertex base() const noexcept { return q_; }
    const IntegerMatrix& laplacian() const noexcept { return laplacian_; }
    const RationalMatrix& generalized_inverse() const noexcept { return lq_; }

    ReduceResult reduce(const Divisor& d, BorrowOrder order = BorrowOrder::Ascending) const;

    // Step 1 alone: D - Q floor(L_(q) D), with the floor vector written to script.
    Divisor bound_values(const Divisor& d, FiringScript* script = nullptr) const;

    // Step 3 alone: fires stalled burning sets until d is q-reduced,
    // accumulating into script and stats. Throws ValueOutOfRange if d is
    // negative off q.
    void fire_stuck_sets(Divisor& d, FiringScript& script, MoveStats& stats) const;

    // Unique x with x(q) = 0 and from - Q x = to; nullopt when from and to
    // are not equivalent.
    std::optional<FiringScript> script_between(const Divisor& from, const Divisor& to) const;

    double lambda2() const noexcept { return lambda2_; }

private:
    void check(const Divisor& d) const;

    Multigraph graph_;
    Vertex q_;
    IntegerMatrix laplacian_;
    RationalMatrix lq_;
    double lambda2_;
};

ReduceResult reduce(const Multigraph& g, const Divisor& d, Vertex q);

struct Equivalence {
    bool equivalent = false;
    std::optional<FiringScript> script;  // d1 - Q * script == d2
};

// Lattice-membership test through the Smith normal form of Q; independent
// of the reduction algorithm. Throws DimensionMismatch.
Equivalence equivalent(const Multigraph& g, const Divisor& d1, const Divisor& d2);

// c(v) = deg(v) - 1 - D(v) off q, with c(q) chosen to preserve the degree.
Divisor to_critical(const Multigraph& g, const Divisor& d, Vertex q);

// sum_{v != q} |D(v)|
Integer reduced_l1_norm(const Divisor& d, Vertex q);

struct MoveBound {
    double lambda2 = 0.0;
    double endpoint = 0.0;  // (sqrt(n) / lambda2) * (|in|'_1 + |out|'_1)
    double coarse = 0.0;    // 4 sqrt(n) m / lambda2
};

MoveBound move_bound(const Multigraph& g, Vertex q, const Divisor& in, const Divisor& out);
MoveBound move_bound(double lambda2, const Multigraph& g, Vertex q, const Divisor& in, const Divisor& out);

} // namespace sandpile

#endif
