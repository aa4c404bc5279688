#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sandpile/error.hpp"
#include "sandpile/jacobian.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/random.hpp"
#include "support/corpus.hpp"

using namespace sandpile;
namespace t = sandpile::testing;

namespace {

// Every coordinate vector in the box prod [0, n_i).
std::vector<std::vector<Integer>> coordinate_box(const JacobianPresentation& p) {
    std::vector<std::vector<Integer>> out;
    std::vector<Integer> a(p.invariant_factors.size(), 0);
    for (;;) {
        out.push_back(a);
        std::size_t i = 0;
        for (; i < a.size(); ++i) {
            a[i] += 1;
            if (a[i] < p.invariant_factors[i]) break;
            a[i] = 0;
        }
        if (i == a.size()) break;
    }
    return out;
}

IntegerVector key(const GroupElement& e) { return e.rep.values; }

} // namespace

TEST(Jacobian, Examples) {
    const JacobianPresentation k3 = jacobian(t::complete_graph(3), 0);
    EXPECT_EQ(k3.invariant_factors, (std::vector<Integer>{3}));
    EXPECT_EQ(k3.order, 3);

    const JacobianPresentation b2 = jacobian(t::banana(2), 0);
    EXPECT_EQ(b2.invariant_factors, (std::vector<Integer>{2}));
    EXPECT_EQ(b2.order, 2);

    const JacobianPresentation p3 = jacobian(t::path_graph(3), 1);
    EXPECT_TRUE(p3.invariant_factors.empty());
    EXPECT_TRUE(p3.generators.empty());
    EXPECT_EQ(p3.order, 1);

    const JacobianPresentation k5 = jacobian(t::complete_graph(5), 2);
    EXPECT_EQ(k5.invariant_factors, (std::vector<Integer>{5, 5, 5}));
}

TEST(Jacobian, PresentationInvariants) {
    for (const auto& [name, g] : t::corpus()) {
        SCOPED_TRACE(name);
        for (Vertex q = 0; q < g.vertex_count(); q += 3) {
            const JacobianPresentation p = jacobian(g, q);
            EXPECT_EQ(p.order, determinant(reduced_laplacian(g, q)));
            ASSERT_EQ(p.generators.size(), p.invariant_factors.size());
            for (std::size_t i = 0; i < p.invariant_factors.size(); ++i) {
                EXPECT_GE(p.invariant_factors[i], 2);
                if (i + 1 < p.invariant_factors.size())
                    EXPECT_TRUE(mpz_divisible_p(p.invariant_factors[i + 1].get_mpz_t(), p.invariant_factors[i].get_mpz_t()));
                EXPECT_EQ(degree(p.generators[i]), 0);
                EXPECT_TRUE(is_reduced(g, p.generators[i], q));
                // n_i * g_i ~ 0
                EXPECT_TRUE(equivalent(g, p.invariant_factors[i] * p.generators[i], Divisor(g.vertex_count())).equivalent);
            }
        }
    }
}

TEST(Jacobian, GeneratorsPresentWholeGroup) {
    // The coordinate box maps injectively, so |image| = order = number of elements.
    for (const auto& [name, g] : t::corpus()) {
        const SandpileGroup group(g, 0);
        const JacobianPresentation& p = group.presentation();
        if (p.order > 100) continue;
        std::set<IntegerVector> seen;
        for (const auto& coords : coordinate_box(p)) seen.insert(key(group.element_at(coords)));
        EXPECT_EQ(seen.size(), p.order.get_ui()) << name;
    }
}

TEST(Canonical, Examples) {
    const Multigraph k3 = t::complete_graph(3);
    EXPECT_EQ(canonical(k3, 0, Divisor(3)).rep, Divisor(3));

    const GroupElement once = canonical(k3, 0, Divisor{-1, 1, 0});
    EXPECT_EQ(canonical(k3, 0, once.rep), once);
    EXPECT_TRUE(is_reduced(k3, once.rep, 0));

    EXPECT_EQ(canonical(k3, 0, Divisor{-3, 3, 0}).rep, Divisor(3));

    try {
        canonical(k3, 0, Divisor{1, 0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonzeroDegree);
    }
}

TEST(GroupLaw, Examples) {
    const SandpileGroup k3(t::complete_graph(3), 0);
    const GroupElement g = k3.element_at({1});
    EXPECT_NE(g, k3.identity());
    EXPECT_EQ(k3.add(g, k3.identity()), g);
    EXPECT_EQ(k3.add(k3.add(g, g), g), k3.identity());
    EXPECT_EQ(k3.add(g, k3.neg(g)), k3.identity());
    EXPECT_EQ(k3.scalar_mul(3, g), k3.identity());
    EXPECT_EQ(k3.scalar_mul(-1, g), k3.neg(g));
    EXPECT_EQ(k3.scalar_mul(0, g), k3.identity());
}

TEST(GroupLaw, GraphMismatch) {
    const SandpileGroup a(t::complete_graph(3), 0);
    const SandpileGroup b(t::complete_graph(3), 1);
    try {
        a.add(a.identity(), b.identity());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GraphMismatch);
    }
    // Same graph and base vertex built separately is the same group.
    const SandpileGroup c(t::complete_graph(3), 0);
    EXPECT_NO_THROW(a.add(a.identity(), c.identity()));
}

TEST(GroupLaw, AxiomsOnSampledTriples) {
    for (const auto& [name, g] : t::corpus(6)) {
        SCOPED_TRACE(name);
        const SandpileGroup group(g, 0);
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 1000; ++trial) {
            const GroupElement a = group.random_element(rng());
            const GroupElement b = group.random_element(rng());
            const GroupElement c = group.random_element(rng());
            ASSERT_EQ(group.add(group.add(a, b), c), group.add(a, group.add(b, c)));
            ASSERT_EQ(group.add(a, b), group.add(b, a));
            ASSERT_EQ(group.add(a, group.identity()), a);
            ASSERT_EQ(group.add(a, group.neg(a)), group.identity());
        }
    }
}

TEST(GroupLaw, ScalarMulMatchesRepeatedAddition) {
    const SandpileGroup group(t::cube_graph(), 0);
    const GroupElement a = group.random_element(5);
    GroupElement acc = group.identity();
    for (int k = 0; k < 20; ++k) {
        EXPECT_EQ(group.scalar_mul(k, a), acc);
        acc = group.add(acc, a);
    }
}

TEST(RandomElement, TrivialGroup) {
    const SandpileGroup tree(t::path_graph(4), 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(tree.random_element(seed), tree.identity());
}

TEST(RandomElement, Deterministic) {
    const SandpileGroup k3(t::complete_graph(3), 0);
    const GroupElement first = k3.random_element(42);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(k3.random_element(42), first);
    EXPECT_EQ(SandpileGroup(t::complete_graph(3), 0).random_element(42), first);
}

TEST(RandomElement, BananaIsBalanced) {
    const SandpileGroup b2(t::banana(2), 0);
    std::size_t identity_hits = 0;
    const std::size_t draws = 10000;
    for (std::uint64_t seed = 0; seed < draws; ++seed)
        if (b2.random_element(seed) == b2.identity()) ++identity_hits;
    const double expected = draws / 2.0;
    const double chi2 = 2 * (identity_hits - expected) * (identity_hits - expected) / expected;
    EXPECT_LT(chi2, t::chi_square_critical_001(1));
}

TEST(UniformBelow, InRangeAndCoversSmallBounds) {
    SplitMix64 rng(9);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const Integer x = uniform_below(rng, 7);
        ASSERT_GE(x, 0);
        ASSERT_LT(x, 7);
        ++hits[x.get_ui()];
    }
    double chi2 = 0;
    for (int h : hits) chi2 += (h - 1000.0) * (h - 1000.0) / 1000.0;
    EXPECT_LT(chi2, t::chi_square_critical_001(6));
}

TEST(UniformBelow, MultiWordBound) {
    SplitMix64 rng(10);
    const Integer bound("340282366920938463463374607431768211507");  // > 2^128
    bool high_half = false;
    for (int i = 0; i < 200; ++i) {
        const Integer x = uniform_below(rng, bound);
        ASSERT_GE(x, 0);
        ASSERT_LT(x, bound);
        if (x > bound / 2) high_half = true;
    }
    EXPECT_TRUE(high_half);
}

TEST(SplitMix64, KnownStream) {
    // Reference outputs of SplitMix64 seeded with 0.
    SplitMix64 rng(0);
    EXPECT_EQ(rng(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(rng(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(rng(), 0x06c45d188009454fULL);
}
