#include "ledp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ledp/coloring.hpp"
#include "ledp/densest.hpp"
#include "ledp/graph.hpp"
#include "ledp/kcore.hpp"
#include "ledp/mat.hpp"
#include "ledp/ordering.hpp"

namespace ledp {

namespace {

using nlohmann::ordered_json;

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

int parse_int(const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

Graph generate_single(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty generator spec");
    const std::string& kind = parts[0];
    if (kind == "clique" && parts.size() == 2) return make_clique(parse_int(parts[1]));
    if (kind == "path" && parts.size() == 2) return make_path(parse_int(parts[1]));
    if (kind == "star" && parts.size() == 2) return make_star(parse_int(parts[1]));
    if (kind == "gnp" && (parts.size() == 3 || parts.size() == 4)) {
        const int n = parse_int(parts[1]);
        const double p = std::stod(parts[2]);
        const std::uint64_t seed = parts.size() == 4 ? std::stoull(parts[3]) : 0;
        return make_gnp(n, p, seed);
    }
    throw std::invalid_argument("bad generator spec '" + spec + "' (expected clique:K, path:K, "
                                "star:LEAVES, gnp:N:P[:SEED], or union:SPEC,SPEC)");
}

Graph generate_graph(const std::string& spec) {
    if (spec.rfind("union:", 0) == 0) {
        const auto parts = split(spec.substr(6), ',');
        if (parts.size() < 2) throw std::invalid_argument("union needs at least two parts");
        Graph g = generate_single(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i)
            g = disjoint_union(g, generate_single(parts[i]));
        return g;
    }
    return generate_single(spec);
}

Graph load_input(const RunConfig& cfg) {
    const bool has_input = !cfg.input_path.empty();
    const bool has_spec = !cfg.generate_spec.empty();
    if (has_input == has_spec)
        throw std::invalid_argument("exactly one of --input and --generate is required");
    return has_input ? load_edge_list(cfg.input_path) : generate_graph(cfg.generate_spec);
}

double default_densest_alpha(int n, double epsilon) {
    return 120.0 * std::log(static_cast<double>(std::max(n, 2))) / epsilon;
}

void require_positive_epsilon(const RunConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
}

void check_or_throw(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation("invariant violated: " + what);
}

bool is_permutation_of_v(const std::vector<int>& order, int n) {
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

// Replays a coloring run: every colour choice must have been free of
// neighbour announcements made at strictly earlier steps, and every
// (vertex, colour) pair may be announced at most once.
void check_coloring(const Graph& g, const ColoringResult& res) {
    const int n = g.n();
    check_or_throw(static_cast<int>(res.coloring.color.size()) == n, "coloring incomplete");
    for (int c : res.coloring.color) check_or_throw(c >= 1, "colors must be >= 1");
    std::vector<std::vector<std::pair<int, int>>> banned_at(
        static_cast<std::size_t>(n));  // vertex -> (color, step)
    std::set<std::pair<int, int>> seen;
    for (const auto& a : res.announcements) {
        check_or_throw(seen.emplace(a.vertex, a.color).second,
                       "duplicate announcement for a (vertex, color) pair");
        banned_at[static_cast<std::size_t>(a.vertex)].emplace_back(a.color, a.step);
    }
    int step = 0;
    for (auto it = res.order.rbegin(); it != res.order.rend(); ++it) {
        ++step;
        const int v = *it;
        const int c = res.coloring.color[static_cast<std::size_t>(v)];
        for (int u : g.neighbors(v))
            for (auto [bc, bs] : banned_at[static_cast<std::size_t>(u)])
                check_or_throw(!(bc == c && bs < step),
                               "vertex colored with a color banned by a neighbor");
    }
}

ordered_json core_estimates_json(const CoreEstimates& est) {
    return ordered_json{{"algorithm", est.algorithm}, {"epsilon", est.epsilon},
                        {"eta", est.eta},             {"labels", est.labels},
                        {"rounds", est.rounds},       {"seed", est.seed}};
}

// ---- single-run command bodies ------------------------------------------

ordered_json cmd_kcore_exact(const Graph& g) {
    return ordered_json{{"algorithm", "kcore-exact"}, {"labels", exact_core_numbers(g)}};
}

PeelConfig peel_config_from(const RunConfig& cfg) {
    PeelConfig pc;
    pc.epsilon = cfg.epsilon;
    pc.step = cfg.step;
    if (cfg.eta > 0.0) {
        pc.schedule = StepSchedule::Multiplicative;
        pc.eta = cfg.eta;
        pc.fast_inner_loop = cfg.fast;
    }
    return pc;
}

ordered_json cmd_kcore_dp(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    const PeelConfig pc = peel_config_from(cfg);
    const PeelResult res = pc.schedule == StepSchedule::Multiplicative
                               ? dp_core_multiplicative(g, pc, src)
                               : dp_core_additive(g, pc, src);
    if (cfg.check) {
        check_or_throw(res.transcript.stop_semantics_ok(), "transcript stop semantics");
        check_or_throw(is_permutation_of_v(res.removal_order, g.n()),
                       "removal order is a permutation");
    }
    return core_estimates_json(res.estimates);
}

ordered_json cmd_kcore_levels(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    const double eta = cfg.eta > 0.0 ? cfg.eta : 1.0;
    const LevelResult res = dp_core_levels(g, cfg.epsilon, eta, src);
    if (cfg.check) {
        check_or_throw(res.transcript.stop_semantics_ok(), "transcript stop semantics");
        check_or_throw(res.transcript.round_count() == res.round_bound,
                       "level algorithm round count");
    }
    return core_estimates_json(res.estimates);
}

ordered_json cmd_densest(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    double gamma = 1.0;
    CoreEstimates cores;
    if (cfg.low_rounds) {
        const double eta = cfg.eta > 0.0 ? cfg.eta : 1.0;
        gamma = 2.0 + eta;
        cores = dp_core_levels(g, cfg.epsilon, eta, src).estimates;
    } else {
        cores = dp_core_additive(g, peel_config_from(cfg), src).estimates;
    }
    const double alpha = cfg.alpha >= 0.0 ? cfg.alpha : default_densest_alpha(g.n(), cfg.epsilon);
    const std::vector<int> subset = densest_from_cores(cores, gamma, alpha);
    if (cfg.check) check_or_throw(!subset.empty(), "densest subset non-empty");
    const DensityReport true_density = density_of(g, subset);
    const double rho_upper = g.n() <= kEnumerationCap
                                 ? exact_densest_subset(g).density()
                                 : static_cast<double>(graph_stats(g).degeneracy);
    const double bound_rhs =
        rho_upper / (2.0 * gamma) - 2.0 * default_densest_alpha(g.n(), cfg.epsilon);
    return ordered_json{{"algorithm", cfg.low_rounds ? "densest-low-rounds" : "densest"},
                        {"subset", subset},
                        {"estimated_density", nullptr},
                        {"true_density", true_density.density()},
                        {"bound_rhs", bound_rhs}};
}

ordered_json cmd_densest_1round(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    if (g.n() > kEnumerationCap)
        throw CapExceeded("densest-1round: n=" + std::to_string(g.n()) + " exceeds cap " +
                          std::to_string(kEnumerationCap));
    const RRGraph rr = randomize_response(g, cfg.epsilon, src);
    const OneRoundResult res = one_round_densest(rr);
    if (cfg.check) check_or_throw(!res.subset.empty(), "densest subset non-empty");
    const double rho_star = exact_densest_subset(g).density();
    const double bound_rhs =
        rho_star - 2.0 * std::sqrt(static_cast<double>(g.n()) +
                                   2.0 * std::log(static_cast<double>(std::max(g.n(), 2)))) *
                       (std::exp(cfg.epsilon) + 1.0) / (std::exp(cfg.epsilon) - 1.0);
    return ordered_json{{"algorithm", "densest-1round"},
                        {"subset", res.subset},
                        {"estimated_density", res.estimated_density},
                        {"true_density", density_of(g, res.subset).density()},
                        {"bound_rhs", bound_rhs}};
}

ordered_json cmd_ordering(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    OrderingResult res;
    const GraphStats stats = graph_stats(g);
    double bound_rhs;
    if (cfg.low_rounds) {
        const double eta = cfg.eta > 0.0 ? cfg.eta : 1.0;
        res = dp_ordering_low_rounds(g, cfg.epsilon, eta, src);
        bound_rhs = (2.0 + eta) * stats.degeneracy +
                    240.0 * std::log(static_cast<double>(std::max(g.n(), 2))) / cfg.epsilon;
    } else {
        res = dp_ordering(g, cfg.epsilon, src);
        bound_rhs = stats.degeneracy +
                    120.0 * std::log(static_cast<double>(std::max(g.n(), 2))) / cfg.epsilon;
    }
    const OrientationReport orient = orientation_outdegrees(g, res.ordering);
    if (cfg.check) {
        check_or_throw(is_permutation_of_v(res.ordering.order, g.n()),
                       "ordering is a permutation");
        check_or_throw(res.transcript.stop_semantics_ok(), "transcript stop semantics");
        long long total = 0;
        for (int d : orient.out_degree) total += d;
        check_or_throw(total == static_cast<long long>(g.m()), "out-degrees sum to m");
        if (!cfg.low_rounds)
            check_or_throw(orient.out_degree == res.removal_degree,
                           "out-degree equals induced degree at removal");
    }
    return ordered_json{{"order", res.ordering.order},
                        {"out_degrees", orient.out_degree},
                        {"max_out_degree", orient.max_out_degree},
                        {"degeneracy", stats.degeneracy},
                        {"bound_rhs", bound_rhs}};
}

ordered_json cmd_coloring(const Graph& g, const RunConfig& cfg, const NoiseSource& src) {
    ColorConfig cc;
    cc.epsilon = cfg.epsilon;
    cc.eta = cfg.eta > 0.0 ? cfg.eta : 1.0;
    cc.threshold_override = cfg.threshold_override;
    cc.literal_loop = cfg.literal_loop;
    const ColoringResult res =
        cfg.low_rounds ? dp_color_low_rounds(g, cc, src) : dp_color(g, cc, src);
    const DefectReport defect = defect_of(g, res.coloring);
    if (cfg.check) check_coloring(g, res);
    const double log_n = std::log(static_cast<double>(std::max(g.n(), 2)));
    const int degeneracy = graph_stats(g).degeneracy;
    const double bound_rhs_colors =
        cfg.low_rounds
            ? 8.0 * (degeneracy * cfg.epsilon * log_n + log_n * log_n)
            : 40.0 * (1.0 + cfg.epsilon * degeneracy / log_n);
    return ordered_json{{"colors", res.coloring.color},
                        {"distinct_colors", res.coloring.distinct_colors},
                        {"max_defect", defect.max_defect},
                        {"bound_rhs_colors", bound_rhs_colors},
                        {"bound_rhs_defect", 160.0 * log_n / cfg.epsilon}};
}

// ---- eval -----------------------------------------------------------------

struct TrialOutcome {
    std::uint64_t seed = 0;
    double metric = 0.0;
    std::size_t rounds = 0;
    bool within_bound = true;
    int band_violations = 0;
    std::vector<double> errors;  // per-vertex |estimate - exact|, core algorithms
};

ordered_json cmd_eval(const Graph& g, const RunConfig& cfg, std::ostream& human_err) {
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (cfg.eval_algo.empty())
        throw std::invalid_argument("eval requires --algo (kcore-dp, kcore-levels, ordering, "
                                    "ordering-low-rounds, coloring, coloring-low-rounds, "
                                    "densest, densest-1round)");
    const std::string& algo = cfg.eval_algo;
    const double log_n = std::log(static_cast<double>(std::max(g.n(), 2)));
    const std::vector<int> exact = exact_core_numbers(g);
    const GraphStats stats = graph_stats(g);
    const double eta = cfg.eta > 0.0 ? cfg.eta : 1.0;

    double bound_rhs = 0.0;
    std::string metric_name = "max_abs_error";
    if (algo == "kcore-dp") {
        bound_rhs = 120.0 * log_n / cfg.epsilon;
    } else if (algo == "kcore-levels") {
        bound_rhs = 240.0 * log_n / cfg.epsilon;
    } else if (algo == "ordering") {
        bound_rhs = stats.degeneracy + 120.0 * log_n / cfg.epsilon;
        metric_name = "max_out_degree";
    } else if (algo == "ordering-low-rounds") {
        bound_rhs = (2.0 + eta) * stats.degeneracy + 240.0 * log_n / cfg.epsilon;
        metric_name = "max_out_degree";
    } else if (algo == "coloring" || algo == "coloring-low-rounds") {
        bound_rhs = 160.0 * log_n / cfg.epsilon;
        metric_name = "max_defect";
    } else if (algo == "densest") {
        const double rho_upper = g.n() <= kEnumerationCap
                                     ? exact_densest_subset(g).density()
                                     : static_cast<double>(stats.degeneracy);
        bound_rhs = rho_upper / 2.0 - 240.0 * log_n / cfg.epsilon;
        metric_name = "density";
    } else if (algo == "densest-1round") {
        if (g.n() > kEnumerationCap) throw CapExceeded("densest-1round: n exceeds cap");
        bound_rhs = exact_densest_subset(g).density() -
                    2.0 * std::sqrt(g.n() + 2.0 * log_n) * (std::exp(cfg.epsilon) + 1.0) /
                        (std::exp(cfg.epsilon) - 1.0);
        metric_name = "density";
    } else {
        throw std::invalid_argument("unknown eval algorithm '" + algo + "'");
    }

    auto run_trial = [&](int t) {
        TrialOutcome out;
        out.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
        const NoiseSource src = NoiseSource::make(out.seed, cfg.zero_noise);
        if (algo == "kcore-dp") {
            const PeelResult res = dp_core_additive(g, peel_config_from(cfg), src);
            double worst = 0.0;
            for (int v = 0; v < g.n(); ++v) {
                const double err = std::fabs(res.estimates.labels[static_cast<std::size_t>(v)] -
                                             exact[static_cast<std::size_t>(v)]);
                out.errors.push_back(err);
                worst = std::max(worst, err);
            }
            out.metric = worst;
            out.rounds = res.estimates.rounds;
            out.within_bound = worst <= bound_rhs;
        } else if (algo == "kcore-levels") {
            const LevelResult res = dp_core_levels(g, cfg.epsilon, eta, src);
            double worst = 0.0;
            for (int v = 0; v < g.n(); ++v) {
                const double kv = exact[static_cast<std::size_t>(v)];
                const double est = res.estimates.labels[static_cast<std::size_t>(v)];
                out.errors.push_back(std::fabs(est - kv));
                worst = std::max(worst, std::fabs(est - kv));
                const bool inside = est >= kv / (2.0 + eta) - bound_rhs &&
                                    est <= (2.0 + eta) * kv + bound_rhs;
                out.band_violations += !inside;
            }
            out.metric = worst;
            out.rounds = res.estimates.rounds;
            out.within_bound = out.band_violations == 0;
        } else if (algo == "ordering" || algo == "ordering-low-rounds") {
            const OrderingResult res = algo == "ordering"
                                           ? dp_ordering(g, cfg.epsilon, src)
                                           : dp_ordering_low_rounds(g, cfg.epsilon, eta, src);
            const OrientationReport orient = orientation_outdegrees(g, res.ordering);
            out.metric = orient.max_out_degree;
            out.rounds = res.transcript.round_count();
            out.within_bound = orient.max_out_degree <= bound_rhs;
        } else if (algo == "coloring" || algo == "coloring-low-rounds") {
            ColorConfig cc;
            cc.epsilon = cfg.epsilon;
            cc.eta = eta;
            cc.threshold_override = cfg.threshold_override;
            cc.literal_loop = cfg.literal_loop;
            const ColoringResult res = algo == "coloring" ? dp_color(g, cc, src)
                                                          : dp_color_low_rounds(g, cc, src);
            const DefectReport defect = defect_of(g, res.coloring);
            out.metric = defect.max_defect;
            out.rounds = res.transcript.round_count();
            out.within_bound = defect.max_defect <= bound_rhs;
        } else if (algo == "densest") {
            const CoreEstimates cores = dp_core_additive(g, peel_config_from(cfg), src).estimates;
            const double alpha =
                cfg.alpha >= 0.0 ? cfg.alpha : default_densest_alpha(g.n(), cfg.epsilon);
            const std::vector<int> subset = densest_from_cores(cores, 1.0, alpha);
            out.metric = density_of(g, subset).density();
            out.rounds = cores.rounds;
            out.within_bound = out.metric >= bound_rhs;
        } else {  // densest-1round
            const RRGraph rr = randomize_response(g, cfg.epsilon, src);
            const OneRoundResult res = one_round_densest(rr);
            out.metric = density_of(g, res.subset).density();
            out.rounds = 1;
            out.within_bound = out.metric >= bound_rhs;
        }
        return out;
    };

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(cfg.trials));
    if (workers <= 1) {
        for (int t = 0; t < cfg.trials; ++t) outcomes[static_cast<std::size_t>(t)] = run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    outcomes[static_cast<std::size_t>(t)] = run_trial(t);
            });
        for (auto& th : pool) th.join();
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    ordered_json per_trial = ordered_json::array();
    int within = 0;
    double worst_overall = 0.0;
    const bool density_metric = metric_name == "density";
    for (int t = 0; t < cfg.trials; ++t) {
        const TrialOutcome& o = outcomes[static_cast<std::size_t>(t)];
        within += o.within_bound;
        worst_overall = density_metric ? std::min(t == 0 ? o.metric : worst_overall, o.metric)
                                       : std::max(worst_overall, o.metric);
        ordered_json row{{"trial", t},
                         {"seed", o.seed},
                         {metric_name, o.metric},
                         {"rounds", o.rounds},
                         {"within_bound", o.within_bound}};
        if (algo == "kcore-levels") row["band_violations"] = o.band_violations;
        if (!o.errors.empty()) row["errors"] = o.errors;
        per_trial.push_back(std::move(row));
    }
    human_err << "eval " << algo << ": " << within << "/" << cfg.trials
              << " trials within bound, wall time " << wall_ms << " ms\n";
    return ordered_json{{"algorithm", algo},
                        {"command", "eval"},
                        {"trials", cfg.trials},
                        {"bound_rhs", bound_rhs},
                        {"fraction_within_bound",
                         static_cast<double>(within) / static_cast<double>(cfg.trials)},
                        {metric_name + "_overall", worst_overall},
                        {"per_trial", std::move(per_trial)}};
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& json_out, std::ostream& human_err) {
    try {
        if (cfg.command == "generate") {
            if (cfg.generate_spec.empty())
                throw std::invalid_argument("generate requires --generate SPEC");
            const Graph g = generate_graph(cfg.generate_spec);
            if (cfg.output_path.empty()) {
                save_edge_list(g, json_out);
            } else {
                save_edge_list(g, std::filesystem::path(cfg.output_path));
            }
            human_err << "generated graph: n=" << g.n() << " m=" << g.m() << "\n";
            return kExitOk;
        }

        const Graph g = load_input(cfg);
        const NoiseSource src = NoiseSource::make(cfg.seed, cfg.zero_noise);
        ordered_json result;
        if (cfg.command == "kcore-exact") {
            result = cmd_kcore_exact(g);
        } else if (cfg.command == "kcore-dp") {
            require_positive_epsilon(cfg);
            result = cmd_kcore_dp(g, cfg, src);
        } else if (cfg.command == "kcore-levels") {
            require_positive_epsilon(cfg);
            result = cmd_kcore_levels(g, cfg, src);
        } else if (cfg.command == "densest") {
            require_positive_epsilon(cfg);
            result = cmd_densest(g, cfg, src);
        } else if (cfg.command == "densest-1round") {
            require_positive_epsilon(cfg);
            result = cmd_densest_1round(g, cfg, src);
        } else if (cfg.command == "ordering") {
            require_positive_epsilon(cfg);
            result = cmd_ordering(g, cfg, src);
        } else if (cfg.command == "coloring") {
            require_positive_epsilon(cfg);
            result = cmd_coloring(g, cfg, src);
        } else if (cfg.command == "eval") {
            require_positive_epsilon(cfg);
            result = cmd_eval(g, cfg, human_err);
        } else {
            throw std::invalid_argument("unknown command '" + cfg.command + "'");
        }

        const std::string payload = result.dump(2) + "\n";
        if (cfg.output_path.empty()) {
            json_out << payload;
        } else {
            std::ofstream f(cfg.output_path);
            if (!f) throw std::runtime_error("cannot open " + cfg.output_path);
            f << payload;
        }
        return kExitOk;
    } catch (const CapExceeded& e) {
        human_err << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const InvariantViolation& e) {
        human_err << "error: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const std::exception& e) {
        human_err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace ledp
