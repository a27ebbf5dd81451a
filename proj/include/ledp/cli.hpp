#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ledp {

// Exit codes of the command driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantViolation = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitCapExceeded = 4;

struct RunConfig {
    std::string command;  // kcore-exact kcore-dp kcore-levels densest
                          // densest-1round ordering coloring eval generate
    std::string input_path;
    std::string generate_spec;
    double epsilon = 1.0;
    double eta = 0.0;
    std::uint64_t seed = 0;
    bool zero_noise = false;
    int trials = 1;
    double step = 0.0;  // explicit additive step for kcore-dp
    std::optional<double> threshold_override;
    bool literal_loop = false;
    bool check = false;
    bool fast = false;        // fast inner loop (multiplicative schedule)
    bool low_rounds = false;  // level-based variant of ordering/coloring/densest
    double alpha = -1.0;      // densest core cutoff; < 0 selects the default
    std::string eval_algo;    // algorithm evaluated by `eval`
    std::string output_path;  // empty = stdout
};

// Executes one command: structured JSON to json_out (or cfg.output_path),
// human-readable summary to human_err. Returns an exit code.
int run_command(const RunConfig& cfg, std::ostream& json_out, std::ostream& human_err);

}  // namespace ledp
