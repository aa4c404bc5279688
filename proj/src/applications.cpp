#include "sandpile/applications.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "sandpile/error.hpp"
#include "sandpile/random.hpp"

namespace sandpile {

TreeSampler::TreeSampler(Multigraph g, Vertex q, EdgeOrder order) : group_(std::move(g), q), order_(std::move(order)) {
    if (order_.size() != group_.graph().edge_count())
        throw Error(ErrorKind::DimensionMismatch, "edge order does not match the graph");
}

SpanningTree TreeSampler::sample(std::uint64_t seed) const {
    const GroupElement x = group_.random_element(seed);
    return tree_from_reduced(group_.graph(), group_.base(), order_, x.rep);
}

SampleReport TreeSampler::sample_many(std::uint64_t master_seed, std::size_t count, unsigned threads) const {
    SampleReport report;
    report.seed = master_seed;
    report.trees.resize(count);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count / 256)));

    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < count; i += stride) report.trees[i] = sample(derive_seed(master_seed, i));
    };
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    work(t, threads);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (const auto& t : report.trees) ++report.counts[t];
    return report;
}

SpanningTree sample_tree(const Multigraph& g, Vertex q, const EdgeOrder& order, std::uint64_t seed) {
    return TreeSampler(g, q, order).sample(seed);
}

SampleReport sample_trees(const Multigraph& g, Vertex q, const EdgeOrder& order, std::uint64_t master_seed,
                          std::size_t count) {
    return TreeSampler(g, q, order).sample_many(master_seed, count);
}

WinnableResult winnable(const Reducer& reducer, const Divisor& d) {
    WinnableResult r;
    r.reduced = reducer.reduce(d).reduced;
    r.winnable = sgn(r.reduced[reducer.base()]) >= 0;
    return r;
}

WinnableResult winnable(const Multigraph& g, const Divisor& d, Vertex q) { return winnable(Reducer(g, q), d); }

FiringScript winning_strategy(const Reducer& reducer, const Divisor& d) {
    const WinnableResult w = winnable(reducer, d);
    if (!w.winnable) throw Error(ErrorKind::NotWinnable, "no effective divisor is equivalent to the input");
    // Q_q is invertible, so x with x(q) = 0 and Q x = D - D' is unique: x = L_(q) (D - D').
    auto x = reducer.script_between(d, w.reduced);
    if (!x) throw Error(ErrorKind::NotWinnable, "winning configuration is not reachable from the input");
    return *x;
}

FiringScript winning_strategy(const Multigraph& g, const Divisor& d, Vertex q) {
    return winning_strategy(Reducer(g, q), d);
}

bool rank_at_least(const Reducer& reducer, const Divisor& d, long c) {
    if (c < 0) throw Error(ErrorKind::BadConstant, "rank threshold must be nonnegative, got " + std::to_string(c));
    const std::size_t n = reducer.graph().vertex_count();
    if (d.size() != n) throw Error(ErrorKind::DimensionMismatch, "rank_at_least: divisor length mismatch");
    // D - E has negative degree for every E, and nothing of negative degree is winnable.
    if (degree(d) < c) return false;
    if (c == 0) return winnable(reducer, d).winnable;

    // Effective E of degree c as nondecreasing vertex sequences (multisets).
    std::vector<Vertex> pick(static_cast<std::size_t>(c), 0);
    for (;;) {
        Divisor target = d;
        for (Vertex v : pick) target[v] -= 1;
        if (!winnable(reducer, target).winnable) return false;

        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == n - 1) --i;
        if (i == 0) return true;
        const Vertex next = pick[i - 1] + 1;
        for (std::size_t j = i - 1; j < pick.size(); ++j) pick[j] = next;
    }
}

bool rank_at_least(const Multigraph& g, const Divisor& d, Vertex q, long c) {
    return rank_at_least(Reducer(g, q), d, c);
}

} // namespace sandpile
