#pragma once

#include <cstdint>
#include <vector>

#include "ledp/graph.hpp"
#include "ledp/kcore.hpp"
#include "ledp/noise.hpp"

namespace ledp {

// Core-threshold extraction: S = { v : k^(v) >= k^_max / gamma - alpha }.
// gamma = 1 for the additive-peeling cores, 2 + eta for the level cores.
std::vector<int> densest_from_cores(const CoreEstimates& cores, double gamma, double alpha);

// Upper-triangular randomized-response bits, one per unordered pair,
// reported by the endpoint earlier in the identity permutation.
class RRGraph {
public:
    RRGraph(int n, double p);

    int n() const { return n_; }
    double p() const { return p_; }
    std::size_t pair_count() const { return static_cast<std::size_t>(n_) * (n_ - 1) / 2; }

    bool bit(int u, int v) const;       // u != v, order-insensitive
    void set_bit(int u, int v, bool b);

    // Number of reported edges inside a vertex subset given as a bitmask.
    std::int64_t edges_inside(std::uint32_t mask) const;

private:
    std::size_t index(int u, int v) const;

    int n_ = 0;
    double p_ = 0.5;
    std::vector<std::uint64_t> words_;
};

// Per-pair randomized response with keep probability p = e^eps/(1+e^eps).
// eps = +infinity (or zero-noise mode) keeps every bit.
RRGraph randomize_response(const Graph& g, double epsilon, const NoiseSource& src);

// Debiased edge-count estimate for a subset of the randomized graph.
struct EdgeEstimate {
    std::vector<int> subset;
    std::int64_t raw_count = 0;  // E_R(S)
    double estimate = 0.0;       // (2p-1)^-1 (E_R(S) - C(|S|,2)(1-p))
    double density_estimate = 0.0;
};

EdgeEstimate estimate_edges(const RRGraph& rr, std::span<const int> subset);

// Brute-force argmax of the estimated density over all non-empty subsets;
// ties toward the smaller subset, then lexicographic. n <= kEnumerationCap.
struct OneRoundResult {
    std::vector<int> subset;
    double estimated_density = 0.0;
};

OneRoundResult one_round_densest(const RRGraph& rr);

}  // namespace ledp
