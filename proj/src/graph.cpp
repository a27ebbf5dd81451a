#include "ledp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ledp/noise.hpp"

namespace ledp {

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id");
        if (u >= n || v >= n)
            throw std::invalid_argument("vertex id " + std::to_string(std::max(u, v)) +
                                        " out of range for n=" + std::to_string(n));
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        g.m_ += nbrs.size();
    }
    g.m_ /= 2;
    return g;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& nbrs : adj_) best = std::max(best, static_cast<int>(nbrs.size()));
    return best;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = -1;
    int max_id = -1;
    std::string line;
    std::size_t lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank or comment-only
        if (first_content_line && tok == "n") {
            if (!(ls >> declared_n) || declared_n < 0)
                throw ParseError("line " + std::to_string(lineno) + ": bad vertex count");
            std::string extra;
            if (ls >> extra)
                throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
            first_content_line = false;
            continue;
        }
        first_content_line = false;
        int u = 0, v = 0;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> u >> v))
            throw ParseError("line " + std::to_string(lineno) + ": expected \"u v\"");
        if (es >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
        if (u < 0 || v < 0)
            throw ParseError("line " + std::to_string(lineno) + ": negative vertex id");
        edges.emplace_back(u, v);
        max_id = std::max({max_id, u, v});
    }
    const int n = declared_n >= 0 ? declared_n : max_id + 1;
    try {
        return Graph::from_edges(n, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Graph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    out << "n " << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    save_edge_list(g, out);
}

Graph make_clique(int n) {
    if (n < 0) throw std::invalid_argument("clique size must be non-negative");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph make_path(int n) {
    if (n < 0) throw std::invalid_argument("path size must be non-negative");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
    return Graph::from_edges(n, edges);
}

Graph make_star(int leaves) {
    if (leaves < 0) throw std::invalid_argument("leaf count must be non-negative");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, edges);
}

Graph make_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gnp: n must be non-negative");
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("gnp: p must be in [0, 1]");
    std::vector<std::pair<int, int>> edges;
    if (n >= 2 && p > 0.0) {
        if (p == 1.0) return make_clique(n);
        // Skip-sampling over the linearized pair index space: each pair is
        // included independently with probability p in O(n + m) time.
        Stream s = NoiseSource(seed).stream(static_cast<std::uint64_t>(n), 0,
                                            StreamTag::Generator);
        const double log1mp = std::log1p(-p);
        int v = 1;
        std::int64_t w = -1;
        while (v < n) {
            w += 1 + static_cast<std::int64_t>(std::floor(std::log(s.u01()) / log1mp));
            while (w >= v && v < n) {
                w -= v;
                ++v;
            }
            if (v < n) edges.emplace_back(static_cast<int>(w), v);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.n(), v + a.n());
    return Graph::from_edges(a.n() + b.n(), edges);
}

std::vector<int> exact_core_numbers(const Graph& g) {
    const int n = g.n();
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    int remaining = n;
    for (int k = 1; k <= n && remaining > 0; ++k) {
        // Peel everything of induced degree < k to a fixed point.
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] < k)
                queue.push_back(v);
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            if (!alive[static_cast<std::size_t>(v)]) continue;
            alive[static_cast<std::size_t>(v)] = 0;
            --remaining;
            for (int u : g.neighbors(v)) {
                if (!alive[static_cast<std::size_t>(u)]) continue;
                if (--deg[static_cast<std::size_t>(u)] < k) queue.push_back(u);
            }
        }
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<std::size_t>(v)]) label[static_cast<std::size_t>(v)] = k;
    }
    return label;
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.max_degree = g.max_degree();
    const auto cores = exact_core_numbers(g);
    for (int k : cores) s.degeneracy = std::max(s.degeneracy, k);
    return s;
}

DensityReport density_of(const Graph& g, std::span<const int> s) {
    if (s.empty()) throw std::invalid_argument("density_of: empty subset");
    std::vector<char> in_set(static_cast<std::size_t>(g.n()), 0);
    for (int v : s) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("density_of: vertex out of range");
        if (in_set[static_cast<std::size_t>(v)])
            throw std::invalid_argument("density_of: duplicate vertex");
        in_set[static_cast<std::size_t>(v)] = 1;
    }
    DensityReport r;
    r.subset.assign(s.begin(), s.end());
    std::sort(r.subset.begin(), r.subset.end());
    for (int v : r.subset)
        for (int u : g.neighbors(v))
            if (v < u && in_set[static_cast<std::size_t>(u)]) ++r.edges_inside;
    return r;
}

namespace {

std::vector<int> mask_to_subset(std::uint32_t mask) {
    std::vector<int> out;
    for (int v = 0; mask != 0; ++v, mask >>= 1)
        if (mask & 1u) out.push_back(v);
    return out;
}

// a precedes b in lexicographic order of the sorted vertex lists iff the
// lowest differing vertex belongs to a.
bool lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t d = a ^ b;
    return d != 0 && (a & (d & -d)) != 0;
}

}  // namespace

DensityReport exact_densest_subset(const Graph& g) {
    const int n = g.n();
    if (n > kEnumerationCap)
        throw CapExceeded("exact_densest_subset: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(kEnumerationCap));
    if (n == 0) throw std::invalid_argument("exact_densest_subset: empty graph");
    std::vector<std::uint32_t> adj_mask(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) adj_mask[static_cast<std::size_t>(v)] |= 1u << u;

    // Gray-code walk over all non-empty subsets: each step toggles one
    // vertex, so the induced edge count updates in O(1) popcounts.
    std::uint32_t cur = 0;
    std::int64_t count = 0;
    std::uint32_t best_mask = 0;
    std::int64_t best_count = -1;  // density compared as count/size, exactly
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);
        const std::uint32_t vbit = 1u << bit;
        if (cur & vbit) {
            cur ^= vbit;
            count -= std::popcount(adj_mask[static_cast<std::size_t>(bit)] & cur);
        } else {
            count += std::popcount(adj_mask[static_cast<std::size_t>(bit)] & cur);
            cur ^= vbit;
        }
        const int size = std::popcount(cur);
        if (best_count < 0) {
            best_count = count;
            best_mask = cur;
            continue;
        }
        const int best_size = std::popcount(best_mask);
        // count/size vs best_count/best_size via integer cross products.
        const std::int64_t lhs = count * best_size;
        const std::int64_t rhs = best_count * size;
        if (lhs > rhs ||
            (lhs == rhs && (size < best_size || (size == best_size && lex_less(cur, best_mask))))) {
            best_count = count;
            best_mask = cur;
        }
    }
    DensityReport r;
    r.subset = mask_to_subset(best_mask);
    r.edges_inside = best_count;
    return r;
}

}  // namespace ledp
