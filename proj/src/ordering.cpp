#include "ledp/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ledp {

OrderingResult dp_ordering(const Graph& g, double epsilon, const NoiseSource& src,
                           double constant_c) {
    PeelConfig cfg;
    cfg.epsilon = epsilon;
    cfg.schedule = StepSchedule::Additive;
    cfg.constant_c = constant_c;
    PeelResult run = dp_core_additive(g, cfg, src);
    OrderingResult out;
    out.ordering.order = std::move(run.removal_order);
    out.ordering.provenance = "removal-order";
    out.transcript = std::move(run.transcript);
    out.removal_degree = std::move(run.removal_degree);
    return out;
}

OrderingResult dp_ordering_low_rounds(const Graph& g, double epsilon, double eta,
                                      const NoiseSource& src) {
    LevelResult run = dp_core_levels(g, epsilon, eta, src);
    OrderingResult out;
    out.ordering.order.resize(static_cast<std::size_t>(g.n()));
    std::iota(out.ordering.order.begin(), out.ordering.order.end(), 0);
    std::sort(out.ordering.order.begin(), out.ordering.order.end(), [&](int a, int b) {
        const int la = run.level_estimate[static_cast<std::size_t>(a)];
        const int lb = run.level_estimate[static_cast<std::size_t>(b)];
        return la != lb ? la < lb : a < b;
    });
    out.ordering.provenance = "level-sorted";
    out.transcript = std::move(run.transcript);
    out.levels = std::move(run.level_estimate);
    return out;
}

OrientationReport orientation_outdegrees(const Graph& g, const Ordering& ord) {
    const int n = g.n();
    if (static_cast<int>(ord.order.size()) != n)
        throw std::invalid_argument("ordering length does not match vertex count");
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    for (int idx = 0; idx < n; ++idx) {
        const int v = ord.order[static_cast<std::size_t>(idx)];
        if (v < 0 || v >= n || position[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("ordering is not a permutation of V");
        position[static_cast<std::size_t>(v)] = idx;
    }
    OrientationReport r;
    r.out_degree.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        int d = 0;
        for (int u : g.neighbors(v))
            d += position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(v)];
        r.out_degree[static_cast<std::size_t>(v)] = d;
        r.max_out_degree = std::max(r.max_out_degree, d);
    }
    return r;
}

}  // namespace ledp
