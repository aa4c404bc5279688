#ifndef SANDPILE_APPLICATIONS_HPP
#define SANDPILE_APPLICATIONS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sandpile/divisor.hpp"
#include "sandpile/jacobian.hpp"
#include "sandpile/trees.hpp"

namespace sandpile {

struct SampleReport {
    std::uint64_t seed = 0;
    std::vector<SpanningTree> trees;  // sample-index order
    std::map<SpanningTree, std::size_t> counts;
};

// Uniform spanning trees: uniform group element -> q-reduced divisor -> tree.
class TreeSampler {
public:
    TreeSampler(Multigraph g, Vertex q, EdgeOrder order);

    const SandpileGroup& group() const noexcept { return group_; }

    SpanningTree sample(std::uint64_t seed) const;

    // Sample i uses derive_seed(master_seed, i). Runs on up to `threads`
    // workers (0 = hardware concurrency); the result does not depend on it.
    SampleReport sample_many(std::uint64_t master_seed, std::size_t count, unsigned threads = 0) const;

private:
    SandpileGroup group_;
    EdgeOrder order_;
};

SpanningTree sample_tree(const Multigraph& g, Vertex q, const EdgeOrder& order, std::uint64_t seed);
SampleReport sample_trees(const Multigraph& g, Vertex q, const EdgeOrder& order, std::uint64_t master_seed,
                          std::size_t count);

struct WinnableResult {
    bool winnable = false;
    Divisor reduced;
};

WinnableResult winnable(const Reducer& reducer, const Divisor& d);
WinnableResult winnable(const Multigraph& g, const Divisor& d, Vertex q);

// Firing script x with x(q) = 0 taking d to its q-reduced winning
// configuration. Throws NotWinnable.
FiringScript winning_strategy(const Reducer& reducer, const Divisor& d);
FiringScript winning_strategy(const Multigraph& g, const Divisor& d, Vertex q);

// r(D) >= c, by checking winnability of D - E for every effective E of
// degree c. Throws BadConstant for c < 0.
bool rank_at_least(const Reducer& reducer, const Divisor& d, long c);
bool rank_at_least(const Multigraph& g, const Divisor& d, Vertex q, long c);

} // namespace sandpile

#endif
