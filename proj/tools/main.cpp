#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ledp/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, ledp::RunConfig& cfg, bool needs_graph = true) {
    if (needs_graph) {
        cmd->add_option("--input", cfg.input_path, "edge-list file (\"n <count>\" header optional)");
        cmd->add_option("--generate", cfg.generate_spec,
                        "generator spec: clique:K path:K star:LEAVES gnp:N:P[:SEED] "
                        "union:SPEC,SPEC");
    }
    cmd->add_option("--epsilon", cfg.epsilon, "privacy parameter");
    cmd->add_option("--seed", cfg.seed, "randomness seed");
    cmd->add_flag("--zero-noise", cfg.zero_noise, "deterministic zero-noise mode");
    cmd->add_option("--output", cfg.output_path, "write JSON here instead of stdout");
    cmd->add_flag("--check", cfg.check, "validate run invariants (exit 2 on violation)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally edge-differentially-private graph decompositions"};
    app.require_subcommand(1);

    ledp::RunConfig cfg;

    auto* gen = app.add_subcommand("generate", "emit a generated graph as an edge list");
    gen->add_option("--generate", cfg.generate_spec, "generator spec")->required();
    gen->add_option("--output", cfg.output_path, "write the edge list here");

    auto* kexact = app.add_subcommand("kcore-exact", "exact core numbers");
    add_common_flags(kexact, cfg);

    auto* kdp = app.add_subcommand("kcore-dp", "private peeling core estimates");
    add_common_flags(kdp, cfg);
    kdp->add_option("--step", cfg.step, "explicit additive threshold step");
    kdp->add_option("--eta", cfg.eta, "use the multiplicative schedule with this growth");
    kdp->add_flag("--fast", cfg.fast, "geometric-sampling inner loop");

    auto* klv = app.add_subcommand("kcore-levels", "level-based core estimates");
    add_common_flags(klv, cfg);
    klv->add_option("--eta", cfg.eta, "approximation parameter (default 1)");

    auto* dns = app.add_subcommand("densest", "densest subgraph from private cores");
    add_common_flags(dns, cfg);
    dns->add_option("--step", cfg.step, "explicit step of the additive core schedule");
    dns->add_option("--eta", cfg.eta, "eta of the level cores (with --low-rounds)");
    dns->add_flag("--low-rounds", cfg.low_rounds, "use the level-based cores");
    dns->add_option("--alpha", cfg.alpha, "core cutoff (default 120 ln(n)/epsilon)");

    auto* one = app.add_subcommand("densest-1round", "randomized-response densest subgraph");
    add_common_flags(one, cfg);

    auto* ord = app.add_subcommand("ordering", "low out-degree vertex ordering");
    add_common_flags(ord, cfg);
    ord->add_option("--eta", cfg.eta, "eta of the level variant (with --low-rounds)");
    ord->add_flag("--low-rounds", cfg.low_rounds, "level-sorted variant");

    auto* col = app.add_subcommand("coloring", "defective coloring");
    add_common_flags(col, cfg);
    col->add_option("--eta", cfg.eta, "eta of the level variant (with --low-rounds)");
    col->add_flag("--low-rounds", cfg.low_rounds, "palette-per-level variant");
    double override_value = -1.0;
    auto* ovr = col->add_option("--threshold-override", override_value,
                                "replace the 100 ln(n)/epsilon ban threshold");
    col->add_flag("--literal-loop", cfg.literal_loop,
                  "re-check every (vertex, color) pair each step");

    auto* ev = app.add_subcommand("eval", "repeated runs vs the exact oracles");
    add_common_flags(ev, cfg);
    ev->add_option("--algo", cfg.eval_algo,
                   "kcore-dp | kcore-levels | ordering | ordering-low-rounds | coloring | "
                   "coloring-low-rounds | densest | densest-1round")
        ->required();
    ev->add_option("--trials", cfg.trials, "number of seeded trials");
    ev->add_option("--eta", cfg.eta, "eta for level-based algorithms");
    ev->add_option("--step", cfg.step, "explicit additive threshold step");
    ev->add_option("--alpha", cfg.alpha, "densest core cutoff");
    auto* eval_ovr =
        ev->add_option("--threshold-override", override_value, "coloring ban threshold");
    ev->add_flag("--literal-loop", cfg.literal_loop, "literal coloring check loop");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ledp::kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (ovr->count() > 0 || eval_ovr->count() > 0) cfg.threshold_override = override_value;
    return ledp::run_command(cfg, std::cout, std::cerr);
}
