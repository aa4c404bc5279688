#include <gtest/gtest.h>

#include <random>

#include "sandpile/applications.hpp"
#include "sandpile/error.hpp"
#include "sandpile/random.hpp"
#include "support/corpus.hpp"

using namespace sandpile;
namespace t = sandpile::testing;

namespace {

bool effective(const Divisor& d) {
    for (const auto& v : d.values)
        if (v < 0) return false;
    return true;
}

} // namespace

TEST(TreeSampler, Deterministic) {
    const TreeSampler sampler(t::complete_graph(4), 0, EdgeOrder(6));
    const SpanningTree first = sampler.sample(99);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(sampler.sample(99), first);
    EXPECT_EQ(sample_tree(t::complete_graph(4), 0, EdgeOrder(6), 99), first);
    EXPECT_TRUE(is_spanning_tree(t::complete_graph(4), first.edges));
}

TEST(TreeSampler, BananaFrequency) {
    const SampleReport r = sample_trees(t::banana(2), 0, EdgeOrder(2), 7, 10000);
    ASSERT_EQ(r.trees.size(), 10000u);
    const double first = static_cast<double>(r.counts.at(SpanningTree{{0}})) / 10000.0;
    EXPECT_GE(first, 0.47);
    EXPECT_LE(first, 0.53);
}

TEST(TreeSampler, TriangleChiSquare) {
    const SampleReport r = sample_trees(t::complete_graph(3), 0, EdgeOrder(3), 8, 9000);
    ASSERT_EQ(r.counts.size(), 3u);
    double chi2 = 0;
    for (const auto& [tree, c] : r.counts) chi2 += (c - 3000.0) * (c - 3000.0) / 3000.0;
    EXPECT_LT(chi2, t::chi_square_critical_001(2));
}

TEST(TreeSampler, K4SeesEveryTree) {
    const SampleReport r = sample_trees(t::complete_graph(4), 1, EdgeOrder::reversed(6), 9, 16000);
    EXPECT_EQ(r.counts.size(), 16u);
    double chi2 = 0;
    for (const auto& [tree, c] : r.counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    EXPECT_LT(chi2, t::chi_square_critical_001(15));
}

TEST(TreeSampler, SampleManyUsesDerivedSeeds) {
    const TreeSampler sampler(t::cube_graph(), 0, EdgeOrder(12));
    const SampleReport one = sampler.sample_many(123, 1);
    ASSERT_EQ(one.trees.size(), 1u);
    EXPECT_EQ(one.trees[0], sampler.sample(derive_seed(123, 0)));
    const SampleReport many = sampler.sample_many(123, 50);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(many.trees[i], sampler.sample(derive_seed(123, i)));
}

TEST(TreeSampler, ThreadCountDoesNotMatter) {
    const TreeSampler sampler(t::complete_graph(5), 2, EdgeOrder(10));
    const SampleReport a = sampler.sample_many(5, 3000, 1);
    const SampleReport b = sampler.sample_many(5, 3000, 4);
    EXPECT_EQ(a.trees, b.trees);
    EXPECT_EQ(a.counts, b.counts);
}

TEST(Winnable, Examples) {
    const Multigraph k3 = t::complete_graph(3);
    EXPECT_FALSE(winnable(k3, Divisor{0, 1, -1}, 0).winnable);
    const WinnableResult w = winnable(k3, Divisor{-3, 3, 0}, 0);
    EXPECT_TRUE(w.winnable);
    EXPECT_EQ(w.reduced, Divisor(3));
    EXPECT_FALSE(winnable(k3, Divisor{-1, 0, 0}, 0).winnable);
    EXPECT_TRUE(winnable(k3, Divisor{5, 0, 0}, 1).winnable);
}

TEST(WinningStrategy, Examples) {
    const Multigraph k3 = t::complete_graph(3);
    const FiringScript x = winning_strategy(k3, Divisor{-2, 1, 1}, 0);
    EXPECT_EQ(x, (FiringScript{0, 1, 1}));
    EXPECT_EQ(apply_firing(k3, Divisor{-2, 1, 1}, x), Divisor(3));
    try {
        winning_strategy(k3, Divisor{0, 1, -1}, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotWinnable);
    }
}

TEST(Winnable, AgreesWithLatticeSearch) {
    std::mt19937_64 rng(61);
    for (const auto& [name, g] : t::corpus(25)) {
        if (g.vertex_count() > 4) continue;
        SCOPED_TRACE(name);
        const Reducer reducer(g, 0);
        const SnfDecomposition snf = smith_normal_form(laplacian(g));
        for (int trial = 0; trial < 40; ++trial) {
            const Divisor d = t::random_divisor(rng, g.vertex_count(), -3, 3);
            const WinnableResult w = winnable(reducer, d);
            if (w.winnable) {
                const FiringScript x = winning_strategy(reducer, d);
                EXPECT_EQ(x.counts[0], 0);
                EXPECT_TRUE(effective(apply_firing(g, d, x)));
                EXPECT_EQ(apply_firing(g, d, x), w.reduced);
            }
            EXPECT_EQ(w.winnable, t::winnable_by_lattice(g, snf, d));
        }
    }
}

TEST(RankAtLeast, Examples) {
    const Multigraph k3 = t::complete_graph(3);
    const Divisor d{1, 1, 1};
    EXPECT_TRUE(rank_at_least(k3, d, 0, 0));
    EXPECT_TRUE(rank_at_least(k3, d, 0, 1));
    EXPECT_TRUE(rank_at_least(k3, d, 0, 2));
    EXPECT_FALSE(rank_at_least(k3, d, 0, 3));
    EXPECT_FALSE(rank_at_least(k3, Divisor{-1, 0, 0}, 0, 0));
    EXPECT_FALSE(rank_at_least(k3, Divisor{2, -5, 1}, 0, 1));
    try {
        rank_at_least(k3, d, 0, -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadConstant);
    }
}

TEST(RankAtLeast, MonotoneInConstant) {
    std::mt19937_64 rng(62);
    for (const auto& [name, g] : t::corpus(8)) {
        if (g.vertex_count() > 5) continue;
        const Reducer reducer(g, 0);
        for (int trial = 0; trial < 10; ++trial) {
            const Divisor d = t::random_divisor(rng, g.vertex_count(), -1, 3);
            bool previous = true;
            for (long c = 0; c <= 3; ++c) {
                const bool now = rank_at_least(reducer, d, c);
                if (now) EXPECT_TRUE(previous) << name;
                previous = now;
            }
            EXPECT_EQ(rank_at_least(reducer, d, 0), winnable(reducer, d).winnable);
        }
    }
}
