#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ledp {

// Brute-force subset enumeration is capped at this many vertices.
inline constexpr int kEnumerationCap = 26;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1. Immutable after construction;
// adjacency lists are sorted, free of self-loops and duplicates, and
// symmetric.
class Graph {
public:
    Graph() = default;

    // Deduplicates edges and validates ids; throws on self-loops and
    // out-of-range endpoints.
    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

    int n() const { return n_; }
    std::size_t m() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<int>> adj_;
};

// Text edge-list format: optional first line "n <count>", then one "u v"
// per line; '#' starts a comment, blank lines are skipped.
Graph load_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(std::istream& in);
void save_edge_list(const Graph& g, std::ostream& out);  // canonical form
void save_edge_list(const Graph& g, const std::filesystem::path& path);

Graph make_clique(int n);
Graph make_path(int n);
Graph make_star(int leaves);  // center is vertex 0, n = leaves + 1
Graph make_gnp(int n, double p, std::uint64_t seed);
Graph disjoint_union(const Graph& a, const Graph& b);

struct GraphStats {
    int max_degree = 0;
    int degeneracy = 0;  // max exact core number
};

// Exact, rational density report for a vertex subset.
struct DensityReport {
    std::vector<int> subset;
    std::int64_t edges_inside = 0;
    double density() const {
        return static_cast<double>(edges_inside) / static_cast<double>(subset.size());
    }
};

// Exact core numbers via threshold peeling: for k = 1..n repeatedly remove
// every vertex of induced degree < k; survivors of iteration k are the
// k-core and keep label k.
std::vector<int> exact_core_numbers(const Graph& g);

GraphStats graph_stats(const Graph& g);

// Induced edge count for a non-empty subset; throws on empty or invalid s.
DensityReport density_of(const Graph& g, std::span<const int> s);

// Maximum-density subset by enumeration of all 2^n - 1 non-empty subsets.
// Ties break toward the smaller subset, then lexicographic vertex order.
// Requires n <= kEnumerationCap.
DensityReport exact_densest_subset(const Graph& g);

}  // namespace ledp
