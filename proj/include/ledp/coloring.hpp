#pragma once

#include <optional>
#include <vector>

#include "ledp/graph.hpp"
#include "ledp/noise.hpp"
#include "ledp/transcript.hpp"

namespace ledp {

struct Coloring {
    std::vector<int> color;  // >= 1 for every vertex
    int distinct_colors = 0;
};

// Public "threshold exceeded" event: vertex announced that color's count
// crossed its noisy threshold at the given coloring step.
struct BanAnnouncement {
    int step = 0;  // 1-based index of the coloring step that triggered it
    int vertex = 0;
    int color = 0;
    int count_at_ban = 0;
};

struct ColoringResult {
    Coloring coloring;
    Transcript transcript;  // ordering-phase rounds then one per coloring step
    std::vector<BanAnnouncement> announcements;
    std::vector<int> order;  // the ordering the greedy pass reversed
    std::vector<int> group;  // palette group per vertex (level, or all zero)
};

struct ColorConfig {
    double epsilon = 1.0;
    double eta = 1.0;  // low-rounds variant only
    // Replaces the default 100*ln(n)/epsilon base threshold.
    std::optional<double> threshold_override;
    // Re-check every active (vertex, color) pair each step instead of only
    // the pairs whose count changed.
    bool literal_loop = false;
};

// Greedy coloring over the reverse private ordering with per-(vertex,color)
// above-threshold monitors (budget eps/2 each for ordering and thresholds).
ColoringResult dp_color(const Graph& g, const ColorConfig& cfg, const NoiseSource& src);

// Level-partitioned variant: disjoint palette per level, greedy restricted
// to own-level palette and own-level neighbour announcements.
ColoringResult dp_color_low_rounds(const Graph& g, const ColorConfig& cfg,
                                   const NoiseSource& src);

struct DefectReport {
    std::vector<int> defect;  // same-colored neighbour count per vertex
    int max_defect = 0;
};

DefectReport defect_of(const Graph& g, const Coloring& col);

}  // namespace ledp
