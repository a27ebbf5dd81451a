#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ledp {

// Per-coordinate released answer of one protocol round.
enum class Answer : std::uint8_t {
    Below = 0,     // query did not cross its threshold
    Above = 1,     // query crossed; the coordinate stops afterwards
    Inactive = 2,  // coordinate already stopped (or not queried this round)
};

std::string_view answer_name(Answer a);

// Ordered public record of a round-based protocol: one answer vector per
// round. Its length is the round complexity.
class Transcript {
public:
    Transcript() = default;
    Transcript(std::size_t dims, double epsilon, double sensitivity)
        : dims_(dims), epsilon_(epsilon), sensitivity_(sensitivity) {}

    void append_round(std::vector<Answer> answers);

    std::size_t dims() const { return dims_; }
    std::size_t round_count() const { return rounds_.size(); }
    const std::vector<Answer>& round(std::size_t r) const { return rounds_[r]; }
    double epsilon() const { return epsilon_; }
    double sensitivity() const { return sensitivity_; }

    // True iff every coordinate's released sequence matches
    // Below* Above? Inactive*.
    bool stop_semantics_ok() const;

    // Appends every round of other after the current ones (dims must match).
    void extend(const Transcript& other);

    nlohmann::ordered_json to_json() const;

private:
    std::size_t dims_ = 0;
    double epsilon_ = 0.0;
    double sensitivity_ = 0.0;
    std::vector<std::vector<Answer>> rounds_;
};

}  // namespace ledp
