#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ledp/noise.hpp"
#include "ledp/transcript.hpp"

namespace ledp {

// Configuration of a multidimensional above-threshold monitor: d coordinates
// with public thresholds, a privacy parameter, and the joint sensitivity D
// of every submitted query vector.
struct MatConfig {
    std::size_t dims = 0;
    std::vector<double> thresholds;
    double epsilon = 0.0;
    double sensitivity = 0.0;

    void validate() const;
};

// d parallel noisy-threshold monitors. Each coordinate answers Below until
// its first Above, then stops (answers Inactive forever). Coordinate j's
// noise is drawn from the substream owned by j, so the engine also serves
// as the local-protocol form: a coordinate's behaviour depends only on its
// own values, its private noisy threshold, and the public transcript.
class MatState {
public:
    MatState(MatConfig cfg, const NoiseSource& src);

    // Submits one query vector (length d); values at inactive coordinates
    // are ignored. Appends a round to the transcript.
    std::vector<Answer> query(std::span<const double> values);

    std::size_t dims() const { return cfg_.dims; }
    std::size_t query_count() const { return query_count_; }
    bool active(std::size_t j) const { return active_[j] != 0; }
    bool all_stopped() const;
    double noisy_threshold(std::size_t j) const { return noisy_thresholds_[j]; }

    // 1-based index of the query answered Above for coordinate j, if any.
    std::optional<std::size_t> crossing_index(std::size_t j) const;
    std::vector<std::optional<std::size_t>> crossing_indices() const;

    const Transcript& transcript() const { return transcript_; }

private:
    MatConfig cfg_;
    NoiseSource src_;
    std::vector<double> noisy_thresholds_;
    std::vector<char> active_;
    std::vector<std::size_t> crossing_;  // 0 = not crossed
    std::size_t query_count_ = 0;
    Transcript transcript_;
};

}  // namespace ledp
