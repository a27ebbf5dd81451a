#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ledp/graph.hpp"
#include "ledp/noise.hpp"
#include "ledp/transcript.hpp"

namespace ledp {

// Threshold schedule of the private peeling algorithms.
enum class StepSchedule {
    Additive,        // k = s, 2s, 3s, ... while k <= n
    Multiplicative,  // k = s, (1+eta)s, (1+eta)^2 s, ... while k <= n
};

struct PeelConfig {
    double epsilon = 1.0;
    StepSchedule schedule = StepSchedule::Additive;
    // Explicit step / start threshold s; 0 means the default
    // constant_c * ln(n) / epsilon.
    double step = 0.0;
    double eta = 0.0;          // multiplicative growth, required > 0 for that schedule
    double constant_c = 60.0;  // multiplier of the default ln(n)/epsilon step
    bool fast_inner_loop = false;

    void validate() const;
    // Explicit step if given, else constant_c * ln(n) / epsilon. Both
    // schedules start at this threshold.
    double step_value(int n) const;
};

// Per-vertex estimates released by one of the core-decomposition runs.
struct CoreEstimates {
    std::string algorithm;
    double epsilon = 0.0;
    double eta = 0.0;
    std::vector<double> labels;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
};

// Output of the peeling algorithms, with the removal instrumentation the
// ordering layer consumes.
struct PeelResult {
    CoreEstimates estimates;
    std::vector<int> removal_order;   // peeled vertices, then survivors by id
    std::vector<int> removal_pass;    // global pass index; survivors get last+1
    std::vector<int> removal_degree;  // induced degree at (sequential) removal
    Transcript transcript;
};

// Additive-step private peeling: per threshold k, repeatedly remove every
// alive v with d(v) + Lap(8/eps) <= k + l~(v); survivors of k are labelled k.
PeelResult dp_core_additive(const Graph& g, const PeelConfig& cfg, const NoiseSource& src);

// Same loop with the geometric threshold schedule; with cfg.fast_inner_loop
// each repeat-loop phase runs through fast_peel_phase.
PeelResult dp_core_multiplicative(const Graph& g, const PeelConfig& cfg, const NoiseSource& src);

// One repeat-loop phase (a fixed per-vertex threshold), executed pass by
// pass with fresh Lap(8/eps) noise per alive vertex. Returns the surviving
// subset of `alive`; appends one transcript round per pass and removal
// bookkeeping to the output vectors (indexed by vertex, -1 = untouched).
struct PhaseOutcome {
    std::vector<char> alive;
    std::size_t passes = 0;
};

PhaseOutcome naive_peel_phase(const Graph& g, const std::vector<char>& alive,
                              const std::vector<double>& threshold_of, double epsilon,
                              const NoiseSource& src, std::uint64_t first_round_id);

// Equivalent-in-distribution implementation of one phase: schedules each
// vertex's removal pass with a geometric draw at its current per-pass
// removal probability and re-samples only when a neighbour is removed.
// Runs in O((n + m) polylog) per phase.
PhaseOutcome fast_peel_phase(const Graph& g, const std::vector<char>& alive,
                             const std::vector<double>& threshold_of, double epsilon,
                             const NoiseSource& src, std::uint64_t phase_id);

// Level-based decomposition in ceil(4 log2(n)^2) rounds.
struct LevelResult {
    CoreEstimates estimates;
    std::vector<int> level_end;       // levels after the final round
    std::vector<int> level_estimate;  // levels used by the estimate formula
    std::size_t round_bound = 0;
    Transcript transcript;
};

LevelResult dp_core_levels(const Graph& g, double epsilon, double eta, const NoiseSource& src);

// Number of rounds the level algorithm runs for an n-vertex graph. A
// log(n)-round schedule is possible at query sensitivity 2*log(n), at the
// cost of a log^2(n)/eps additive error; this library only provides the
// log^2(n)-round / log(n)/eps-error point.
std::size_t level_round_bound(int n);

// Estimate (2+lambda)(1+psi)^max(floor((l'+1)/(4 ceil(log_{1+psi} n))) - 1, 0)
// with psi = 0.1 eta and lambda = 2(30-eta)eta/(eta+10)^2.
double core_estimate_from_level(int final_level, int n, double eta);

}  // namespace ledp
