#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcga/rng.hpp"

namespace rcga {

// Problem dimensions and the update strength 1/K. K must be a multiple
// of r so that the initial frequency 1/r is an exact multiple of 1/K.
struct ModelParams {
    int n = 0; // number of positions
    int r = 0; // alphabet size
    int K = 0; // hypothetical population size (update step is 1/K)

    // Throws std::invalid_argument if any invariant is violated.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

// A string over {0,...,r-1}^n sampled from the model.
struct Individual {
    std::vector<int> values;

    bool operator==(const Individual&) const = default;
};

// The n x r frequency matrix. Frequencies are stored as integer counts
// in units of 1/K: p_{i,j} = count(i,j)/K. Row sums are exactly K at all
// times, so there is no floating-point drift anywhere in the model.
class FrequencyMatrix {
  public:
    // Uniform initialization: every frequency is 1/r (count K/r).
    static FrequencyMatrix uniform(const ModelParams& params);

    // Direct construction from a row-major count grid (tests, probes,
    // pre-seeded runs). Throws if the counts violate the row invariants.
    FrequencyMatrix(const ModelParams& params, std::vector<int> counts);

    const ModelParams& params() const { return params_; }
    int count(int i, int j) const { return counts_[std::size_t(i) * params_.r + j]; }
    double frequency(int i, int j) const { return double(count(i, j)) / params_.K; }
    std::span<const int> row(int i) const {
        return {counts_.data() + std::size_t(i) * params_.r, std::size_t(params_.r)};
    }

    // Samples each position independently from its row's categorical
    // distribution; value j is drawn with probability count(i,j)/K exactly.
    Individual sample(RandomSource& rng) const;
    void sample_into(Individual& out, RandomSource& rng) const;

    // The 1/K update rule: at every position where winner and loser
    // differ, the winner's value gains one count and the loser's value
    // loses one. Frequencies may reach 0 or 1; there are no borders.
    // Throws std::logic_error if a count would go negative (cannot
    // happen when the loser was actually sampled from this model).
    void update(const Individual& winner, const Individual& loser);

    // Throws std::logic_error if a row sum differs from K or a count is
    // out of [0, K]. Used by tests and by the checked constructor.
    void check_invariants() const;

    bool operator==(const FrequencyMatrix&) const = default;

  private:
    ModelParams params_;
    std::vector<int> counts_; // n*r, row-major
};

} // namespace rcga
