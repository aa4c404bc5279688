#ifndef SANDPILE_JACOBIAN_HPP
#define SANDPILE_JACOBIAN_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sandpile/divisor.hpp"
#include "sandpile/graph.hpp"

namespace sandpile {

// Jac(G) ~= Z/n_1 + ... + Z/n_s with n_i | n_{i+1} and every n_i >= 2.
struct JacobianPresentation {
    std::vector<Integer> invariant_factors;
    std::vector<Divisor> generators;  // degree zero, generator i has order n_i
    Integer order;
    Vertex base = 0;
};

JacobianPresentation jacobian(const Multigraph& g, Vertex q);

// Class of a degree-zero divisor, held by its q-reduced representative.
struct GroupElement {
    Divisor rep;
    std::uint64_t group_tag = 0;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/*
 * Group law on q-reduced divisors: add representatives in Div(G), then reduce.
 *
 * Copies share the presentation and reduction context. Elements from groups
 * built on a different (graph, q) are rejected with GraphMismatch.
 */
class SandpileGroup {
public:
    SandpileGroup(Multigraph g, Vertex q);

    const JacobianPresentation& presentation() const noexcept;
    const Reducer& reducer() const noexcept;
    const Multigraph& graph() const noexcept { return reducer().graph(); }
    Vertex base() const noexcept { return reducer().base(); }
    std::uint64_t tag() const noexcept;

    // Throws NonzeroDegree.
    GroupElement canonical(const Divisor& d) const;
    GroupElement identity() const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement scalar_mul(const Integer& k, const GroupElement& a) const;

    // a_i uniform in [0, n_i) from a SplitMix64 stream seeded with `seed`,
    // then canonical(sum a_i g_i).
    GroupElement random_element(std::uint64_t seed) const;

    // Element sum a_i g_i for an explicit coordinate vector.
    GroupElement element_at(const std::vector<Integer>& coords) const;

private:
    void check(const GroupElement& e) const;

    struct State;
    std::shared_ptr<const State> state_;
};

// Identifies the (graph, base vertex) a GroupElement belongs to.
std::uint64_t group_tag(const Multigraph& g, Vertex q);

GroupElement canonical(const Multigraph& g, Vertex q, const Divisor& d);

} // namespace sandpile

#endif
