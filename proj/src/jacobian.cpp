#include "sandpile/jacobian.hpp"

#include "sandpile/error.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/random.hpp"

namespace sandpile {

namespace {

/*
 * Div^0(G) -> Z^{n-1} by restriction to V \ {q} carries Prin(G) onto the
 * column lattice of the reduced Laplacian Q_q, so Jac(G) ~= coker(Q_q).
 * With U Q_q V = S, y -> U y maps coker(Q_q) onto coker(S), hence column i of
 * U^-1 is a generator of order s_i.
 */
JacobianPresentation present(const Multigraph& g, Vertex q, const Reducer& reducer) {
    const std::size_t n = g.vertex_count();
    const SnfDecomposition snf = smith_normal_form(reduced_laplacian(g, q));

    JacobianPresentation p;
    p.base = q;
    p.order = 1;
    const IntegerVector diag = snf.invariant_factors();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        p.order *= diag[i];
        if (diag[i] <= 1) continue;
        Divisor gen(n);
        Integer off_q = 0;
        for (std::size_t r = 0, v = 0; v < n; ++v) {
            if (v == q) continue;
            gen[v] = snf.U_inverse(r++, i);
            off_q += gen[v];
        }
        gen[q] = -off_q;
        p.invariant_factors.push_back(diag[i]);
        p.generators.push_back(reducer.reduce(gen).reduced);
    }
    return p;
}

} // namespace

std::uint64_t group_tag(const Multigraph& g, Vertex q) { return mix64(g.fingerprint() ^ mix64(q + 1)); }

JacobianPresentation jacobian(const Multigraph& g, Vertex q) {
    g.check_vertex(q);
    return present(g, q, Reducer(g, q));
}

struct SandpileGroup::State {
    Reducer reducer;
    JacobianPresentation presentation;
    std::uint64_t tag;
};

SandpileGroup::SandpileGroup(Multigraph g, Vertex q) {
    g.check_vertex(q);
    const std::uint64_t tag = group_tag(g, q);
    Reducer reducer(std::move(g), q);
    JacobianPresentation p = present(reducer.graph(), q, reducer);
    state_ = std::make_shared<const State>(State{std::move(reducer), std::move(p), tag});
}

const JacobianPresentation& SandpileGroup::presentation() const noexcept { return state_->presentation; }
const Reducer& SandpileGroup::reducer() const noexcept { return state_->reducer; }
std::uint64_t SandpileGroup::tag() const noexcept { return state_->tag; }

void SandpileGroup::check(const GroupElement& e) const {
    if (e.group_tag != state_->tag)
        throw Error(ErrorKind::GraphMismatch, "group element belongs to a different graph or base vertex");
}

GroupElement SandpileGroup::canonical(const Divisor& d) const {
    if (d.size() != graph().vertex_count())
        throw Error(ErrorKind::DimensionMismatch, "canonical: divisor length does not match the graph");
    if (sgn(degree(d)) != 0)
        throw Error(ErrorKind::NonzeroDegree, "canonical: divisor has degree " + degree(d).get_str());
    return GroupElement{reducer().reduce(d).reduced, state_->tag};
}

GroupElement SandpileGroup::identity() const { return GroupElement{Divisor(graph().vertex_count()), state_->tag}; }

GroupElement SandpileGroup::add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    return canonical(a.rep + b.rep);
}

GroupElement SandpileGroup::neg(const GroupElement& a) const {
    check(a);
    return canonical(-a.rep);
}

GroupElement SandpileGroup::scalar_mul(const Integer& k, const GroupElement& a) const {
    check(a);
    GroupElement base = sgn(k) < 0 ? neg(a) : a;
    Integer e = abs(k);
    GroupElement acc = identity();
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = add(acc, base);
        e >>= 1;
        if (sgn(e) > 0) base = add(base, base);
    }
    return acc;
}

GroupElement SandpileGroup::element_at(const std::vector<Integer>& coords) const {
    const auto& p = presentation();
    if (coords.size() != p.generators.size())
        throw Error(ErrorKind::DimensionMismatch, "element_at: expected one coordinate per generator");
    Divisor d(graph().vertex_count());
    for (std::size_t i = 0; i < coords.size(); ++i) d += coords[i] * p.generators[i];
    return canonical(d);
}

GroupElement SandpileGroup::random_element(std::uint64_t seed) const {
    SplitMix64 rng(seed);
    const auto& factors = presentation().invariant_factors;
    std::vector<Integer> coords;
    coords.reserve(factors.size());
    for (const auto& n : factors) coords.push_back(uniform_below(rng, n));
    return element_at(coords);
}

GroupElement canonical(const Multigraph& g, Vertex q, const Divisor& d) {
    g.check_vertex(q);
    if (d.size() != g.vertex_count())
        throw Error(ErrorKind::DimensionMismatch, "canonical: divisor length does not match the graph");
    if (sgn(degree(d)) != 0)
        throw Error(ErrorKind::NonzeroDegree, "canonical: divisor has degree " + degree(d).get_str());
    return GroupElement{Reducer(g, q).reduce(d).reduced, group_tag(g, q)};
}

} // namespace sandpile
