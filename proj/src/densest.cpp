#include "ledp/densest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ledp {

std::vector<int> densest_from_cores(const CoreEstimates& cores, double gamma, double alpha) {
    if (cores.labels.empty()) throw std::invalid_argument("densest_from_cores: empty estimates");
    if (!(gamma >= 1.0)) throw std::invalid_argument("densest_from_cores: gamma must be >= 1");
    const double k_max = *std::max_element(cores.labels.begin(), cores.labels.end());
    const double cutoff = k_max / gamma - alpha;
    std::vector<int> s;
    for (int v = 0; v < static_cast<int>(cores.labels.size()); ++v)
        if (cores.labels[static_cast<std::size_t>(v)] >= cutoff) s.push_back(v);
    return s;
}

RRGraph::RRGraph(int n, double p) : n_(n), p_(p) {
    if (n < 0) throw std::invalid_argument("rr: negative vertex count");
    if (!(p > 0.5) || p > 1.0) throw std::invalid_argument("rr: p must be in (1/2, 1]");
    words_.assign((pair_count() + 63) / 64, 0);
}

std::size_t RRGraph::index(int u, int v) const {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_ || u == v) throw std::invalid_argument("rr: bad pair");
    const auto uu = static_cast<std::size_t>(u);
    // Row-major upper triangle: row u holds n-1-u pairs.
    return uu * static_cast<std::size_t>(n_) - uu * (uu + 1) / 2 +
           static_cast<std::size_t>(v - u - 1);
}

bool RRGraph::bit(int u, int v) const {
    const std::size_t i = index(u, v);
    return (words_[i / 64] >> (i % 64)) & 1u;
}

void RRGraph::set_bit(int u, int v, bool b) {
    const std::size_t i = index(u, v);
    if (b)
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    else
        words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::int64_t RRGraph::edges_inside(std::uint32_t mask) const {
    std::int64_t count = 0;
    for (std::uint32_t rest = mask; rest != 0;) {
        const int u = std::countr_zero(rest);
        rest &= rest - 1;
        for (std::uint32_t other = rest; other != 0;) {
            const int v = std::countr_zero(other);
            other &= other - 1;
            count += bit(u, v);
        }
    }
    return count;
}

RRGraph randomize_response(const Graph& g, double epsilon, const NoiseSource& src) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("rr: epsilon must be positive");
    const double p = std::isinf(epsilon) ? 1.0 : std::exp(epsilon) / (1.0 + std::exp(epsilon));
    RRGraph rr(g.n(), p);
    for (int u = 0; u < g.n(); ++u) {
        for (int v = u + 1; v < g.n(); ++v) {
            const bool truth = g.has_edge(u, v);
            const bool keep = src.stream(static_cast<std::uint64_t>(u),
                                         static_cast<std::uint64_t>(v),
                                         StreamTag::RandomizedResponse)
                                  .bernoulli(p);
            rr.set_bit(u, v, keep ? truth : !truth);
        }
    }
    return rr;
}

EdgeEstimate estimate_edges(const RRGraph& rr, std::span<const int> subset) {
    if (subset.empty()) throw std::invalid_argument("estimate_edges: empty subset");
    EdgeEstimate e;
    e.subset.assign(subset.begin(), subset.end());
    std::sort(e.subset.begin(), e.subset.end());
    for (std::size_t i = 0; i < e.subset.size(); ++i)
        for (std::size_t j = i + 1; j < e.subset.size(); ++j)
            e.raw_count += rr.bit(e.subset[i], e.subset[j]);
    const double s = static_cast<double>(e.subset.size());
    const double pairs = s * (s - 1.0) / 2.0;
    e.estimate = (static_cast<double>(e.raw_count) - pairs * (1.0 - rr.p())) /
                 (2.0 * rr.p() - 1.0);
    e.density_estimate = e.estimate / s;
    return e;
}

namespace {

bool lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t d = a ^ b;
    return d != 0 && (a & (d & -d)) != 0;
}

}  // namespace

OneRoundResult one_round_densest(const RRGraph& rr) {
    const int n = rr.n();
    if (n > kEnumerationCap)
        throw CapExceeded("one_round_densest: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(kEnumerationCap));
    if (n == 0) throw std::invalid_argument("one_round_densest: empty graph");
    std::vector<std::uint32_t> adj_mask(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rr.bit(u, v)) adj_mask[static_cast<std::size_t>(u)] |= 1u << v;

    const double q = 1.0 - rr.p();
    // rho~(S) compared through the numerator N(S) = E_R(S) - C(|S|,2) q over
    // |S|; the positive factor 2p-1 cannot change the argmax. Cross products
    // keep every term integral except the single constant q, so the argmax
    // is deterministic and exact ties (both integer cross terms equal) are
    // detected exactly.
    std::uint32_t cur = 0;
    std::int64_t raw = 0;
    std::uint32_t best_mask = 0;
    std::int64_t best_raw = 0;
    bool have_best = false;
    auto pairs_of = [](int size) {
        return static_cast<std::int64_t>(size) * (size - 1) / 2;
    };
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);
        const std::uint32_t vbit = 1u << bit;
        if (cur & vbit) {
            cur ^= vbit;
            raw -= std::popcount(adj_mask[static_cast<std::size_t>(bit)] & cur);
        } else {
            raw += std::popcount(adj_mask[static_cast<std::size_t>(bit)] & cur);
            cur ^= vbit;
        }
        const int size = std::popcount(cur);
        if (!have_best) {
            best_mask = cur;
            best_raw = raw;
            have_best = true;
            continue;
        }
        const int best_size = std::popcount(best_mask);
        // N(S)/|S| > N(B)/|B|  <=>  A > q*B with integers
        // A = raw*|B| - best_raw*|S|, B = C(|S|,2)|B| - C(|B|,2)|S|.
        const std::int64_t a = raw * best_size - best_raw * size;
        const std::int64_t b = pairs_of(size) * best_size - pairs_of(best_size) * size;
        const double diff = static_cast<double>(a) - q * static_cast<double>(b);
        if (diff > 0.0 ||
            (diff == 0.0 &&
             (size < best_size || (size == best_size && lex_less(cur, best_mask))))) {
            best_mask = cur;
            best_raw = raw;
        }
    }

    OneRoundResult out;
    for (int v = 0; v < n; ++v)
        if (best_mask & (1u << v)) out.subset.push_back(v);
    const double s = static_cast<double>(out.subset.size());
    const double est =
        (static_cast<double>(best_raw) - s * (s - 1.0) / 2.0 * q) / (2.0 * rr.p() - 1.0);
    out.estimated_density = est / s;
    return out;
}

}  // namespace ledp
