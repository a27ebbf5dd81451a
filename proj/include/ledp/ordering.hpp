#pragma once

#include <string>
#include <vector>

#include "ledp/graph.hpp"
#include "ledp/kcore.hpp"
#include "ledp/noise.hpp"
#include "ledp/transcript.hpp"

namespace ledp {

struct Ordering {
    std::vector<int> order;  // permutation of 0..n-1
    std::string provenance;  // "removal-order" or "level-sorted"
};

struct OrderingResult {
    Ordering ordering;
    Transcript transcript;
    // Induced degree at (sequential) removal; equals the orientation
    // out-degree for the removal-order variant.
    std::vector<int> removal_degree;
    // Level partition backing the level-sorted variant (empty otherwise).
    std::vector<int> levels;
};

struct OrientationReport {
    std::vector<int> out_degree;  // edges oriented from earlier to later
    int max_out_degree = 0;
};

// Peeling-order variant: the additive loop with step constant_c*ln(n)/eps,
// appending each vertex to the ordering at the pass it is peeled (ascending
// id within a pass); never-peeled vertices close the list in id order.
OrderingResult dp_ordering(const Graph& g, double epsilon, const NoiseSource& src,
                           double constant_c = 60.0);

// Level-sorted variant: runs the level decomposition and sorts vertices by
// (final level ascending, id ascending).
OrderingResult dp_ordering_low_rounds(const Graph& g, double epsilon, double eta,
                                      const NoiseSource& src);

// Out-degrees induced by orienting every edge from its earlier endpoint to
// its later endpoint. Throws if ord is not a permutation of V.
OrientationReport orientation_outdegrees(const Graph& g, const Ordering& ord);

}  // namespace ledp
