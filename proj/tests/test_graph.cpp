#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ledp/graph.hpp"
#include "ledp/noise.hpp"

using namespace ledp;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) { return make_gnp(n, p, seed); }

// Independent density check used against exact_densest_subset.
long long count_induced(const Graph& g, const std::vector<int>& s) {
    std::set<int> in(s.begin(), s.end());
    long long c = 0;
    for (int v : s)
        for (int u : g.neighbors(v))
            if (v < u && in.count(u)) ++c;
    return c;
}

}  // namespace

TEST_CASE("parse a two-edge file with header") {
    std::istringstream in("n 3\n0 1\n1 2\n");
    const Graph g = parse_edge_list(in);
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(!g.has_edge(0, 2));
}

TEST_CASE("self-loop is an error") {
    std::istringstream in("0 0\n");
    CHECK_THROWS_AS(parse_edge_list(in), ParseError);
}

TEST_CASE("duplicate edges collapse (set semantics)") {
    std::istringstream in("0 1\n1 0\n");
    const Graph g = parse_edge_list(in);
    CHECK(g.n() == 2);
    CHECK(g.m() == 1);
}

TEST_CASE("parse failures and id range errors") {
    {
        std::istringstream in("0 x\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);
    }
    {
        std::istringstream in("n 2\n0 5\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);
    }
    {
        std::istringstream in("-1 0\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);
    }
    {
        std::istringstream in("# only a comment\n\n0 1 2\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);
    }
}

TEST_CASE("comments, blank lines and inferred n") {
    std::istringstream in("# header comment\n\n0 1  # inline\n2 3\n");
    const Graph g = parse_edge_list(in);
    CHECK(g.n() == 4);
    CHECK(g.m() == 2);
}

TEST_CASE("save then load is identity on canonical form") {
    const Graph g = random_graph(23, 0.2, 5);
    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream in(out.str());
    const Graph h = parse_edge_list(in);
    CHECK(h.n() == g.n());
    CHECK(h.m() == g.m());
    CHECK(h.edges() == g.edges());
    std::ostringstream out2;
    save_edge_list(h, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("generators: clique, path, star") {
    const Graph k4 = make_clique(4);
    CHECK(k4.m() == 6);
    for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

    const Graph p4 = make_path(4);
    CHECK(p4.m() == 3);
    CHECK(p4.degree(0) == 1);
    CHECK(p4.degree(3) == 1);
    CHECK(p4.degree(1) == 2);

    const Graph star = make_star(9);
    CHECK(star.n() == 10);
    CHECK(star.degree(0) == 9);
    CHECK(star.m() == 9);
}

TEST_CASE("gnp is seed-reproducible and roughly calibrated") {
    const Graph a = make_gnp(100, 0.1, 7);
    const Graph b = make_gnp(100, 0.1, 7);
    CHECK(a.edges() == b.edges());
    const Graph c = make_gnp(100, 0.1, 8);
    CHECK(a.edges() != c.edges());
    // mean 495, sd ~21
    CHECK(a.m() > 350);
    CHECK(a.m() < 650);
    CHECK(make_gnp(50, 0.0, 1).m() == 0);
    CHECK(make_gnp(5, 1.0, 1).m() == 10);
    CHECK_THROWS_AS(make_gnp(10, 1.5, 0), std::invalid_argument);
}

TEST_CASE("exact cores: triangle, path, clique plus pendant") {
    const Graph k3 = make_clique(3);
    CHECK(exact_core_numbers(k3) == std::vector<int>{2, 2, 2});

    const Graph p4 = make_path(4);
    CHECK(exact_core_numbers(p4) == std::vector<int>{1, 1, 1, 1});

    // K4 plus one pendant hanging off vertex 0.
    std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2},
                                           {1, 3}, {2, 3}, {0, 4}};
    const Graph g = Graph::from_edges(5, edges);
    CHECK(exact_core_numbers(g) == std::vector<int>{3, 3, 3, 3, 1});
}

TEST_CASE("core sets induce the promised minimum degree and are maximal") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 16 + static_cast<int>(seed) * 4;  // up to 60
        const Graph g = random_graph(n, 0.15, seed);
        const std::vector<int> core = exact_core_numbers(g);
        const int kmax = *std::max_element(core.begin(), core.end());
        for (int c = 1; c <= kmax; ++c) {
            std::vector<char> in_core(static_cast<std::size_t>(n), 0);
            for (int v = 0; v < n; ++v) in_core[static_cast<std::size_t>(v)] = core[static_cast<std::size_t>(v)] >= c;
            for (int v = 0; v < n; ++v) {
                int d = 0;
                for (int u : g.neighbors(v)) d += in_core[static_cast<std::size_t>(u)];
                if (in_core[static_cast<std::size_t>(v)]) {
                    CHECK(d >= c);  // induced min degree
                } else {
                    CHECK(d < c);  // adding v back would violate maximality
                }
            }
        }
    }
}

TEST_CASE("core numbers never exceed degree") {
    const Graph g = random_graph(40, 0.2, 3);
    const auto core = exact_core_numbers(g);
    for (int v = 0; v < g.n(); ++v) {
        CHECK(core[static_cast<std::size_t>(v)] <= g.degree(v));
        CHECK(core[static_cast<std::size_t>(v)] >= 0);
    }
}

TEST_CASE("graph_stats: degeneracy from cores, max degree") {
    const GraphStats k4 = graph_stats(make_clique(4));
    CHECK(k4.max_degree == 3);
    CHECK(k4.degeneracy == 3);

    const GraphStats star = graph_stats(make_star(9));
    CHECK(star.max_degree == 9);
    CHECK(star.degeneracy == 1);

    const GraphStats p5 = graph_stats(make_path(5));
    CHECK(p5.max_degree == 2);
    CHECK(p5.degeneracy == 1);

    const GraphStats g = graph_stats(random_graph(48, 0.2, 9));
    CHECK(g.degeneracy <= g.max_degree);
}

TEST_CASE("density_of counts induced edges exactly") {
    const Graph k4 = make_clique(4);
    const std::vector<int> all{0, 1, 2, 3};
    CHECK(density_of(k4, all).density() == doctest::Approx(1.5));

    const Graph p4 = make_path(4);
    const std::vector<int> pair{0, 1};
    CHECK(density_of(p4, pair).density() == doctest::Approx(0.5));

    const Graph g = disjoint_union(make_clique(5), make_clique(2));
    const std::vector<int> left{0, 1, 2, 3, 4};
    CHECK(density_of(g, left).density() == doctest::Approx(2.0));

    CHECK_THROWS_AS(density_of(k4, std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(density_of(k4, std::vector<int>{0, 0}), std::invalid_argument);
}

TEST_CASE("densest subset: clique, star, empty graph") {
    const DensityReport k5 = exact_densest_subset(make_clique(5));
    CHECK(k5.subset == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(k5.density() == doctest::Approx(2.0));

    const DensityReport star = exact_densest_subset(make_star(3));
    CHECK(star.subset == std::vector<int>{0, 1, 2, 3});
    CHECK(star.density() == doctest::Approx(0.75));

    const DensityReport empty3 = exact_densest_subset(Graph::from_edges(3, {}));
    CHECK(empty3.density() == 0.0);
    CHECK(empty3.subset.size() == 1);  // smallest, lexicographic tie-break
    CHECK(empty3.subset[0] == 0);
}

TEST_CASE("densest subset respects the enumeration cap") {
    CHECK_THROWS_AS(exact_densest_subset(make_gnp(27, 0.1, 0)), CapExceeded);
}

TEST_CASE("densest density sits between degeneracy/2 and degeneracy") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 8 + static_cast<int>(seed * 2);
        const Graph g = random_graph(n, 0.3, seed + 100);
        const GraphStats stats = graph_stats(g);
        if (stats.degeneracy == 0) continue;
        const DensityReport best = exact_densest_subset(g);
        CHECK(count_induced(g, best.subset) == best.edges_inside);
        CHECK(best.density() >= static_cast<double>(stats.degeneracy) / 2.0);
        CHECK(best.density() <= static_cast<double>(stats.degeneracy));
    }
}

TEST_CASE("densest subset matches exhaustive recount on a fixture") {
    // K5 with a path(5) hanging around: densest must be the clique side.
    const Graph g = disjoint_union(make_clique(5), make_path(5));
    const DensityReport best = exact_densest_subset(g);
    CHECK(best.subset == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(best.density() == doctest::Approx(2.0));
}

TEST_CASE("header preserves trailing isolated vertices through a roundtrip") {
    std::istringstream in("n 6\n0 1\n");
    const Graph g = parse_edge_list(in);
    CHECK(g.n() == 6);
    CHECK(g.degree(5) == 0);
    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream back(out.str());
    const Graph h = parse_edge_list(back);
    CHECK(h.n() == 6);
    CHECK(h.m() == 1);
    CHECK(exact_core_numbers(h) == std::vector<int>{1, 1, 0, 0, 0, 0});
}
