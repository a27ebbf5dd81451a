#include "ledp/transcript.hpp"

#include <stdexcept>

namespace ledp {

std::string_view answer_name(Answer a) {
    switch (a) {
        case Answer::Below: return "bot";
        case Answer::Above: return "top";
        case Answer::Inactive: return "inactive";
    }
    return "?";
}

void Transcript::append_round(std::vector<Answer> answers) {
    if (answers.size() != dims_)
        throw std::invalid_argument("transcript round has wrong dimension");
    rounds_.push_back(std::move(answers));
}

bool Transcript::stop_semantics_ok() const {
    for (std::size_t j = 0; j < dims_; ++j) {
        // 0 = still below, 1 = crossed, 2 = inactive tail
        int phase = 0;
        for (const auto& round : rounds_) {
            switch (round[j]) {
                case Answer::Below:
                    if (phase != 0) return false;
                    break;
                case Answer::Above:
                    if (phase != 0) return false;
                    phase = 1;
                    break;
                case Answer::Inactive:
                    if (phase == 0) return false;
                    phase = 2;
                    break;
            }
        }
    }
    return true;
}

void Transcript::extend(const Transcript& other) {
    if (other.dims_ != dims_)
        throw std::invalid_argument("transcript dimension mismatch in extend");
    for (const auto& round : other.rounds_) rounds_.push_back(round);
}

nlohmann::ordered_json Transcript::to_json() const {
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const auto& round : rounds_) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Answer a : round) row.push_back(answer_name(a));
        rounds.push_back(std::move(row));
    }
    return nlohmann::ordered_json{{"rounds", std::move(rounds)},
                                  {"d", dims_},
                                  {"epsilon", epsilon_},
                                  {"sensitivity", sensitivity_}};
}

}  // namespace ledp
