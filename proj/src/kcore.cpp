#include "ledp/kcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace ledp {

namespace {

constexpr double kMatSensitivity = 2.0;  // one edge touches two coordinates

// Flat adjacency copy; the per-pass inner loops walk it sequentially.
struct Csr {
    int n = 0;
    std::vector<std::size_t> offsets;
    std::vector<int> targets;

    explicit Csr(const Graph& g) : n(g.n()) {
        offsets.reserve(static_cast<std::size_t>(n) + 1);
        targets.reserve(2 * g.m());
        offsets.push_back(0);
        for (int v = 0; v < n; ++v) {
            const auto& nbrs = g.neighbors(v);
            targets.insert(targets.end(), nbrs.begin(), nbrs.end());
            offsets.push_back(targets.size());
        }
    }

    std::span<const int> neighbors(int v) const {
        const auto vi = static_cast<std::size_t>(v);
        return {targets.data() + offsets[vi], offsets[vi + 1] - offsets[vi]};
    }
};

std::vector<int> induced_degrees(const Csr& g, const std::vector<char>& alive) {
    std::vector<int> deg(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        if (!alive[static_cast<std::size_t>(v)]) continue;
        int d = 0;
        for (int u : g.neighbors(v)) d += alive[static_cast<std::size_t>(u)];
        deg[static_cast<std::size_t>(v)] = d;
    }
    return deg;
}

struct PhaseRemovals {
    // removed[p] lists the vertices peeled in pass p, ascending id. The
    // terminating pass removes nobody, so the last entry is always empty.
    std::vector<std::vector<int>> removed;
};

PhaseRemovals run_naive_phase(const Csr& g, std::vector<char> alive,
                              const std::vector<double>& threshold_of, double epsilon,
                              const NoiseSource& src, std::uint64_t first_round_id) {
    PhaseRemovals out;
    std::vector<int> deg = induced_degrees(g, alive);
    const double scale = 8.0 / epsilon;
    std::uint64_t round_id = first_round_id;
    while (true) {
        std::vector<int> removed_now;
        for (int v = 0; v < g.n; ++v) {
            const auto vi = static_cast<std::size_t>(v);
            if (!alive[vi]) continue;
            const double nu =
                src.stream(static_cast<std::uint64_t>(v), round_id, StreamTag::PeelNoise)
                    .laplace(scale);
            if (static_cast<double>(deg[vi]) + nu <= threshold_of[vi]) removed_now.push_back(v);
        }
        ++round_id;
        for (int v : removed_now) {
            alive[static_cast<std::size_t>(v)] = 0;
            for (int u : g.neighbors(v))
                if (alive[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
        }
        const bool done = removed_now.empty();
        out.removed.push_back(std::move(removed_now));
        if (done) break;
    }
    return out;
}

PhaseRemovals run_fast_phase(const Csr& g, std::vector<char> alive,
                             const std::vector<double>& threshold_of, double epsilon,
                             const NoiseSource& src, std::uint64_t phase_id) {
    PhaseRemovals out;
    const int n = g.n;
    std::vector<int> deg = induced_degrees(g, alive);
    const double scale = 8.0 / epsilon;
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    std::vector<std::int64_t> remove_time(static_cast<std::size_t>(n), kNever);
    std::vector<std::uint32_t> draws(static_cast<std::size_t>(n), 0);
    std::unordered_map<std::int64_t, std::vector<int>> buckets;
    buckets.reserve(static_cast<std::size_t>(n) / 2 + 8);
    std::vector<int> updated;
    updated.reserve(static_cast<std::size_t>(n));
    std::vector<std::int64_t> touched(static_cast<std::size_t>(n), -1);

    for (int v = 0; v < n; ++v)
        if (alive[static_cast<std::size_t>(v)]) updated.push_back(v);

    std::int64_t t = 0;
    while (true) {
        for (int v : updated) {
            const auto vi = static_cast<std::size_t>(v);
            if (!alive[vi]) continue;
            // Per-pass removal probability at the current induced degree;
            // stale bucket entries are invalidated by the remove_time check.
            double p;
            if (src.zero_noise()) {
                p = static_cast<double>(deg[vi]) <= threshold_of[vi] ? 1.0 : 0.0;
            } else {
                p = laplace_le_prob(threshold_of[vi] - static_cast<double>(deg[vi]), scale);
            }
            if (p <= 0.0) {
                remove_time[vi] = kNever;
                continue;
            }
            const std::int64_t gap =
                src.stream(static_cast<std::uint64_t>(v), phase_id, draws[vi]++,
                           StreamTag::PeelGeom)
                    .geometric(p);
            // A schedule beyond t + n + 1 can never fire before termination.
            if (gap > static_cast<std::int64_t>(n) + 1) {
                remove_time[vi] = kNever;
                continue;
            }
            remove_time[vi] = t + gap;
            buckets[t + gap].push_back(v);
        }
        updated.clear();
        ++t;

        std::vector<int> removed_now;
        if (auto it = buckets.find(t); it != buckets.end()) {
            for (int v : it->second) {
                const auto vi = static_cast<std::size_t>(v);
                if (alive[vi] && remove_time[vi] == t) {
                    alive[vi] = 0;
                    removed_now.push_back(v);
                }
            }
            buckets.erase(it);
        }
        std::sort(removed_now.begin(), removed_now.end());
        for (int v : removed_now) {
            for (int u : g.neighbors(v)) {
                const auto ui = static_cast<std::size_t>(u);
                if (!alive[ui]) continue;
                --deg[ui];
                if (touched[ui] != t) {
                    touched[ui] = t;
                    updated.push_back(u);
                }
            }
        }
        const bool done = removed_now.empty();
        out.removed.push_back(std::move(removed_now));
        if (done) break;
    }
    return out;
}

PhaseOutcome phase_outcome_from(const std::vector<char>& alive_in, const PhaseRemovals& rem) {
    PhaseOutcome out;
    out.alive = alive_in;
    out.passes = rem.removed.size();
    for (const auto& pass : rem.removed)
        for (int v : pass) out.alive[static_cast<std::size_t>(v)] = 0;
    return out;
}

struct PeelEngineResult {
    std::vector<double> labels;
    std::vector<int> removal_order;
    std::vector<int> removal_pass;
    std::vector<int> removal_degree;
    Transcript transcript;
};

PeelEngineResult run_peeling(const Graph& graph, const PeelConfig& cfg, const NoiseSource& src) {
    cfg.validate();
    const Csr g(graph);
    const int n = g.n;
    PeelEngineResult out;
    out.labels.assign(static_cast<std::size_t>(n), 0.0);
    out.removal_pass.assign(static_cast<std::size_t>(n), -1);
    out.removal_degree.assign(static_cast<std::size_t>(n), -1);
    out.transcript = Transcript(static_cast<std::size_t>(n), cfg.epsilon, kMatSensitivity);

    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<int> deg = induced_degrees(g, alive);
    std::vector<double> offsets(static_cast<std::size_t>(n));
    const double offset_scale = 4.0 / cfg.epsilon;
    for (int v = 0; v < n; ++v)
        offsets[static_cast<std::size_t>(v)] =
            src.stream(static_cast<std::uint64_t>(v), 0, StreamTag::PeelOffset)
                .laplace(offset_scale);

    // Commits one pass worth of removals sequentially in ascending id; the
    // recorded degree is the vertex's induced degree at its own turn, which
    // is exactly its out-degree in the removal ordering.
    int global_pass = 0;
    auto commit_pass = [&](const std::vector<int>& removed_now) {
        ++global_pass;
        std::vector<Answer> round(static_cast<std::size_t>(n), Answer::Inactive);
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<std::size_t>(v)]) round[static_cast<std::size_t>(v)] = Answer::Below;
        for (int v : removed_now) round[static_cast<std::size_t>(v)] = Answer::Above;
        out.transcript.append_round(std::move(round));
        for (int v : removed_now) {
            const auto vi = static_cast<std::size_t>(v);
            out.removal_order.push_back(v);
            out.removal_pass[v] = global_pass;
            out.removal_degree[v] = deg[vi];
            alive[vi] = 0;
            for (int u : g.neighbors(v))
                if (alive[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
        }
    };

    double k = cfg.step_value(n);
    std::uint64_t phase_id = 0;
    std::uint64_t next_round_id = 1;
    std::vector<double> threshold_of(static_cast<std::size_t>(n));
    while (k <= static_cast<double>(n)) {
        ++phase_id;
        for (int v = 0; v < n; ++v)
            threshold_of[static_cast<std::size_t>(v)] = k + offsets[static_cast<std::size_t>(v)];
        const PhaseRemovals rem =
            cfg.fast_inner_loop
                ? run_fast_phase(g, alive, threshold_of, cfg.epsilon, src, phase_id)
                : run_naive_phase(g, alive, threshold_of, cfg.epsilon, src, next_round_id);
        next_round_id += rem.removed.size();
        for (const auto& pass : rem.removed) commit_pass(pass);
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<std::size_t>(v)]) out.labels[static_cast<std::size_t>(v)] = k;
        k = cfg.schedule == StepSchedule::Additive ? k + cfg.step_value(n)
                                                   : k * (1.0 + cfg.eta);
    }

    // Vertices never peeled close out the ordering in ascending id.
    for (int v = 0; v < n; ++v) {
        const auto vi = static_cast<std::size_t>(v);
        if (!alive[vi]) continue;
        out.removal_order.push_back(v);
        out.removal_pass[v] = global_pass + 1;
        out.removal_degree[v] = deg[vi];
        alive[vi] = 0;
        for (int u : g.neighbors(v))
            if (alive[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
    }
    return out;
}

CoreEstimates make_estimates(std::string algorithm, const PeelConfig& cfg,
                             const NoiseSource& src, const PeelEngineResult& run) {
    CoreEstimates est;
    est.algorithm = std::move(algorithm);
    est.epsilon = cfg.epsilon;
    est.eta = cfg.schedule == StepSchedule::Multiplicative ? cfg.eta : 0.0;
    est.rounds = run.transcript.round_count();
    est.seed = src.seed();
    return est;
}

}  // namespace

void PeelConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("peel: epsilon must be positive");
    if (step < 0.0) throw std::invalid_argument("peel: step must be non-negative");
    if (schedule == StepSchedule::Additive) {
        if (step == 0.0 && !(constant_c > 0.0))
            throw std::invalid_argument("peel: constant_c must be positive");
    } else {
        if (!(eta > 0.0)) throw std::invalid_argument("peel: eta must be positive");
    }
}

double PeelConfig::step_value(int n) const {
    if (step > 0.0) return step;
    return constant_c * std::log(static_cast<double>(std::max(n, 2))) / epsilon;
}

PhaseOutcome naive_peel_phase(const Graph& g, const std::vector<char>& alive,
                              const std::vector<double>& threshold_of, double epsilon,
                              const NoiseSource& src, std::uint64_t first_round_id) {
    return phase_outcome_from(
        alive, run_naive_phase(Csr(g), alive, threshold_of, epsilon, src, first_round_id));
}

PhaseOutcome fast_peel_phase(const Graph& g, const std::vector<char>& alive,
                             const std::vector<double>& threshold_of, double epsilon,
                             const NoiseSource& src, std::uint64_t phase_id) {
    return phase_outcome_from(alive,
                              run_fast_phase(Csr(g), alive, threshold_of, epsilon, src, phase_id));
}

PeelResult dp_core_additive(const Graph& g, const PeelConfig& cfg, const NoiseSource& src) {
    PeelConfig c = cfg;
    c.schedule = StepSchedule::Additive;
    PeelEngineResult run = run_peeling(g, c, src);
    PeelResult r;
    r.estimates = make_estimates("kcore-dp-additive", c, src, run);
    r.removal_order = std::move(run.removal_order);
    r.removal_pass = std::move(run.removal_pass);
    r.removal_degree = std::move(run.removal_degree);
    r.transcript = std::move(run.transcript);
    r.estimates.labels = std::move(run.labels);
    return r;
}

PeelResult dp_core_multiplicative(const Graph& g, const PeelConfig& cfg,
                                  const NoiseSource& src) {
    PeelConfig c = cfg;
    c.schedule = StepSchedule::Multiplicative;
    PeelEngineResult run = run_peeling(g, c, src);
    PeelResult r;
    r.estimates = make_estimates("kcore-dp-multiplicative", c, src, run);
    r.removal_order = std::move(run.removal_order);
    r.removal_pass = std::move(run.removal_pass);
    r.removal_degree = std::move(run.removal_degree);
    r.transcript = std::move(run.transcript);
    r.estimates.labels = std::move(run.labels);
    return r;
}

std::size_t level_round_bound(int n) {
    if (n <= 1) return 0;
    const double l = std::log2(static_cast<double>(n));
    return static_cast<std::size_t>(std::ceil(4.0 * l * l));
}

double core_estimate_from_level(int final_level, int n, double eta) {
    if (final_level < 0) throw std::invalid_argument("negative level");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    const double psi = 0.1 * eta;
    const double lambda = 2.0 * (30.0 - eta) * eta / ((eta + 10.0) * (eta + 10.0));
    const double group =
        n >= 2 ? 4.0 * std::ceil(std::log(static_cast<double>(n)) / std::log1p(psi)) : 0.0;
    double exponent = 0.0;
    if (group > 0.0)
        exponent = std::max(std::floor((static_cast<double>(final_level) + 1.0) / group) - 1.0, 0.0);
    return (2.0 + lambda) * std::pow(1.0 + psi, exponent);
}

LevelResult dp_core_levels(const Graph& g, double epsilon, double eta, const NoiseSource& src) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("levels: epsilon must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("levels: eta must be positive");
    const int n = g.n();
    const std::size_t rounds = level_round_bound(n);
    const double psi = 0.1 * eta;
    const double two_log_n = n >= 2 ? 2.0 * std::log2(static_cast<double>(n)) : 1.0;

    std::vector<double> offsets(static_cast<std::size_t>(n));
    const double offset_scale = 4.0 / epsilon;
    const double query_scale = 8.0 / epsilon;
    for (int v = 0; v < n; ++v)
        offsets[static_cast<std::size_t>(v)] =
            src.stream(static_cast<std::uint64_t>(v), 0, StreamTag::LevelOffset)
                .laplace(offset_scale);

    LevelResult out;
    out.round_bound = rounds;
    out.transcript = Transcript(static_cast<std::size_t>(n), epsilon, kMatSensitivity);

    std::vector<int> level(static_cast<std::size_t>(n), 0);
    std::vector<int> level_estimate = level;  // L_{R-1}
    for (std::size_t r = 0; r < rounds; ++r) {
        const double threshold =
            std::pow(1.0 + psi, std::floor(static_cast<double>(r) / two_log_n));
        std::vector<Answer> answers(static_cast<std::size_t>(n), Answer::Inactive);
        std::vector<int> ups;
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            if (level[ii] != static_cast<int>(r)) continue;
            int up_neighbors = 0;
            for (int j : g.neighbors(i))
                up_neighbors += level[static_cast<std::size_t>(j)] == static_cast<int>(r);
            const double x =
                src.stream(static_cast<std::uint64_t>(i), r, StreamTag::LevelNoise)
                    .laplace(query_scale);
            if (static_cast<double>(up_neighbors) + x <= threshold + offsets[ii]) {
                answers[ii] = Answer::Above;  // crossing: i stops forever
            } else {
                answers[ii] = Answer::Below;
                ups.push_back(i);
            }
        }
        for (int i : ups) ++level[static_cast<std::size_t>(i)];
        out.transcript.append_round(std::move(answers));
        if (r + 2 == rounds) level_estimate = level;
    }
    if (rounds < 2) level_estimate = level;

    out.level_end = level;
    out.level_estimate = level_estimate;
    out.estimates.algorithm = "kcore-levels";
    out.estimates.epsilon = epsilon;
    out.estimates.eta = eta;
    out.estimates.rounds = out.transcript.round_count();
    out.estimates.seed = src.seed();
    out.estimates.labels.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.estimates.labels[static_cast<std::size_t>(i)] =
            core_estimate_from_level(level_estimate[static_cast<std::size_t>(i)], n, eta);
    return out;
}

}  // namespace ledp
