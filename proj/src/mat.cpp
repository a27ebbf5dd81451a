#include "ledp/mat.hpp"

#include <stdexcept>

namespace ledp {

void MatConfig::validate() const {
    if (dims < 1) throw std::invalid_argument("mat: need at least one coordinate");
    if (thresholds.size() != dims) throw std::invalid_argument("mat: threshold vector length");
    if (!(epsilon > 0.0)) throw std::invalid_argument("mat: epsilon must be positive");
    if (!(sensitivity > 0.0)) throw std::invalid_argument("mat: sensitivity must be positive");
}

MatState::MatState(MatConfig cfg, const NoiseSource& src)
    : cfg_(std::move(cfg)),
      src_(src),
      active_(cfg_.dims, 1),
      crossing_(cfg_.dims, 0),
      transcript_(cfg_.dims, cfg_.epsilon, cfg_.sensitivity) {
    cfg_.validate();
    noisy_thresholds_.resize(cfg_.dims);
    const double scale = 2.0 * cfg_.sensitivity / cfg_.epsilon;
    for (std::size_t j = 0; j < cfg_.dims; ++j)
        noisy_thresholds_[j] =
            cfg_.thresholds[j] + src_.stream(j, 0, StreamTag::MatThreshold).laplace(scale);
}

std::vector<Answer> MatState::query(std::span<const double> values) {
    if (values.size() != cfg_.dims) throw std::invalid_argument("mat: query vector length");
    ++query_count_;
    const double scale = 4.0 * cfg_.sensitivity / cfg_.epsilon;
    std::vector<Answer> answers(cfg_.dims, Answer::Inactive);
    for (std::size_t j = 0; j < cfg_.dims; ++j) {
        if (!active_[j]) continue;
        const double nu = src_.stream(j, query_count_, StreamTag::MatQuery).laplace(scale);
        if (values[j] + nu >= noisy_thresholds_[j]) {
            answers[j] = Answer::Above;
            active_[j] = 0;
            crossing_[j] = query_count_;
        } else {
            answers[j] = Answer::Below;
        }
    }
    transcript_.append_round(answers);
    return answers;
}

bool MatState::all_stopped() const {
    for (char a : active_)
        if (a) return false;
    return true;
}

std::optional<std::size_t> MatState::crossing_index(std::size_t j) const {
    if (crossing_[j] == 0) return std::nullopt;
    return crossing_[j];
}

std::vector<std::optional<std::size_t>> MatState::crossing_indices() const {
    std::vector<std::optional<std::size_t>> out(cfg_.dims);
    for (std::size_t j = 0; j < cfg_.dims; ++j) out[j] = crossing_index(j);
    return out;
}

}  // namespace ledp
