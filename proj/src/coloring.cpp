#include "ledp/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ledp/ordering.hpp"

namespace ledp {

namespace {

struct Cell {
    int count = 0;
    double threshold = 0.0;
    bool exceeded = false;
};

// Shared greedy engine. group[v] selects the palette {n*group+1, ...,
// n*(group+1)}; the single-palette variant passes group = 0 everywhere.
// A vertex's colour must avoid every colour its same-group neighbours have
// announced as exceeded; the announcement for pair (u, c) is made by u.
ColoringResult run_greedy(const Graph& g, const ColorConfig& cfg, const NoiseSource& src,
                          std::vector<int> order, Transcript ordering_transcript,
                          const std::vector<int>& group) {
    const int n = g.n();
    const double base_threshold =
        cfg.threshold_override
            ? *cfg.threshold_override
            : 100.0 * std::log(static_cast<double>(std::max(n, 2))) / cfg.epsilon;
    const double threshold_scale = 4.0 / cfg.epsilon;
    const double check_scale = 8.0 / cfg.epsilon;

    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto& row = cells[static_cast<std::size_t>(v)];
        row.resize(static_cast<std::size_t>(n));
        for (int idx = 0; idx < n; ++idx)
            row[static_cast<std::size_t>(idx)].threshold =
                base_threshold + src.stream(static_cast<std::uint64_t>(v),
                                            static_cast<std::uint64_t>(idx),
                                            StreamTag::ColorThreshold)
                                     .laplace(threshold_scale);
    }

    ColoringResult out;
    out.order = order;
    out.transcript = std::move(ordering_transcript);
    out.coloring.color.assign(static_cast<std::size_t>(n), 0);
    out.group = group;

    auto check_pair = [&](int w, int idx, int step, std::vector<Answer>& round) {
        Cell& cell = cells[static_cast<std::size_t>(w)][static_cast<std::size_t>(idx)];
        if (cell.exceeded) return;
        const double noise = src.stream(static_cast<std::uint64_t>(w),
                                        static_cast<std::uint64_t>(idx),
                                        static_cast<std::uint64_t>(step), StreamTag::ColorNoise)
                                 .laplace(check_scale);
        if (static_cast<double>(cell.count) + noise >= cell.threshold) {
            cell.exceeded = true;
            const int color = n * group[static_cast<std::size_t>(w)] + idx + 1;
            out.announcements.push_back({step, w, color, cell.count});
            round[static_cast<std::size_t>(w)] = Answer::Above;
        } else if (round[static_cast<std::size_t>(w)] != Answer::Above) {
            round[static_cast<std::size_t>(w)] = Answer::Below;
        }
    };

    int step = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        ++step;
        const auto vi = static_cast<std::size_t>(v);

        int chosen = -1;
        for (int idx = 0; idx < n; ++idx) {
            bool banned = false;
            for (int u : g.neighbors(v)) {
                if (group[static_cast<std::size_t>(u)] != group[vi]) continue;
                if (cells[static_cast<std::size_t>(u)][static_cast<std::size_t>(idx)].exceeded) {
                    banned = true;
                    break;
                }
            }
            if (!banned) {
                chosen = idx;
                break;
            }
        }
        if (chosen < 0) throw std::logic_error("coloring: palette exhausted");
        out.coloring.color[vi] = n * group[vi] + chosen + 1;

        std::vector<int> changed;
        for (int u : g.neighbors(v)) {
            if (group[static_cast<std::size_t>(u)] != group[vi]) continue;
            ++cells[static_cast<std::size_t>(u)][static_cast<std::size_t>(chosen)].count;
            changed.push_back(u);
        }

        std::vector<Answer> round(static_cast<std::size_t>(n), Answer::Inactive);
        if (cfg.literal_loop) {
            for (int w = 0; w < n; ++w)
                for (int idx = 0; idx < n; ++idx) check_pair(w, idx, step, round);
        } else {
            for (int u : changed) check_pair(u, chosen, step, round);
        }
        out.transcript.append_round(std::move(round));
    }

    std::set<int> used(out.coloring.color.begin(), out.coloring.color.end());
    out.coloring.distinct_colors = static_cast<int>(used.size());
    return out;
}

}  // namespace

ColoringResult dp_color(const Graph& g, const ColorConfig& cfg, const NoiseSource& src) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("coloring: epsilon must be positive");
    OrderingResult ord = dp_ordering(g, cfg.epsilon / 2.0, src);
    std::vector<int> group(static_cast<std::size_t>(g.n()), 0);
    return run_greedy(g, cfg, src, std::move(ord.ordering.order), std::move(ord.transcript),
                      group);
}

ColoringResult dp_color_low_rounds(const Graph& g, const ColorConfig& cfg,
                                   const NoiseSource& src) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("coloring: epsilon must be positive");
    if (!(cfg.eta > 0.0)) throw std::invalid_argument("coloring: eta must be positive");
    OrderingResult ord = dp_ordering_low_rounds(g, cfg.epsilon / 2.0, cfg.eta, src);
    return run_greedy(g, cfg, src, std::move(ord.ordering.order), std::move(ord.transcript),
                      ord.levels);
}

DefectReport defect_of(const Graph& g, const Coloring& col) {
    const int n = g.n();
    if (static_cast<int>(col.color.size()) != n)
        throw std::invalid_argument("defect_of: coloring size mismatch");
    DefectReport r;
    r.defect.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (col.color[static_cast<std::size_t>(v)] < 1)
            throw std::invalid_argument("defect_of: uncolored vertex " + std::to_string(v));
        int d = 0;
        for (int u : g.neighbors(v))
            d += col.color[static_cast<std::size_t>(u)] == col.color[static_cast<std::size_t>(v)];
        r.defect[static_cast<std::size_t>(v)] = d;
        r.max_defect = std::max(r.max_defect, d);
    }
    return r;
}

}  // namespace ledp
