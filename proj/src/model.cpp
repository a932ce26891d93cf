#include "rcga/model.hpp"

#include <stdexcept>
#include <string>

namespace rcga {

void ModelParams::validate() const {
    if (n < 1)
        throw std::invalid_argument("ModelParams: n must be >= 1, got " + std::to_string(n));
    if (r < 2)
        throw std::invalid_argument("ModelParams: r must be >= 2, got " + std::to_string(r));
    if (K < 1)
        throw std::invalid_argument("ModelParams: K must be >= 1, got " + std::to_string(K));
    if (K % r != 0)
        throw std::invalid_argument("ModelParams: r must divide K (1/r has to be a multiple of 1/K), got r=" +
                                    std::to_string(r) + ", K=" + std::to_string(K));
}

FrequencyMatrix FrequencyMatrix::uniform(const ModelParams& params) {
    params.validate();
    std::vector<int> counts(std::size_t(params.n) * params.r, params.K / params.r);
    return FrequencyMatrix(params, std::move(counts));
}

FrequencyMatrix::FrequencyMatrix(const ModelParams& params, std::vector<int> counts)
    : params_(params), counts_(std::move(counts)) {
    params_.validate();
    if (counts_.size() != std::size_t(params_.n) * params_.r)
        throw std::invalid_argument("FrequencyMatrix: count grid has wrong size");
    check_invariants();
}

void FrequencyMatrix::check_invariants() const {
    for (int i = 0; i < params_.n; ++i) {
        long long sum = 0;
        for (int j = 0; j < params_.r; ++j) {
            const int c = count(i, j);
            if (c < 0 || c > params_.K)
                throw std::logic_error("FrequencyMatrix: count out of [0, K] at row " + std::to_string(i));
            sum += c;
        }
        if (sum != params_.K)
            throw std::logic_error("FrequencyMatrix: row " + std::to_string(i) + " sums to " +
                                   std::to_string(sum) + ", expected K=" + std::to_string(params_.K));
    }
}

Individual FrequencyMatrix::sample(RandomSource& rng) const {
    Individual out;
    sample_into(out, rng);
    return out;
}

void FrequencyMatrix::sample_into(Individual& out, RandomSource& rng) const {
    out.values.resize(std::size_t(params_.n));
    const auto bound = std::uint32_t(params_.K);
    const int r = params_.r;
    const int* row = counts_.data();
    for (int i = 0; i < params_.n; ++i, row += r) {
        const auto u = std::int64_t(rng.below(bound));
        std::int64_t cum = 0;
        int j = 0;
        for (; j < r - 1; ++j) {
            cum += row[j];
            if (u < cum)
                break;
        }
        out.values[std::size_t(i)] = j;
    }
}

void FrequencyMatrix::update(const Individual& winner, const Individual& loser) {
    const int r = params_.r;
    for (int i = 0; i < params_.n; ++i) {
        const int w = winner.values[std::size_t(i)];
        const int l = loser.values[std::size_t(i)];
        if (w == l)
            continue;
        int* row = counts_.data() + std::size_t(i) * r;
        ++row[w];
        if (--row[l] < 0)
            throw std::logic_error("FrequencyMatrix::update: count went negative at row " +
                                   std::to_string(i) + " (loser value was not sampleable)");
    }
}

} // namespace rcga
