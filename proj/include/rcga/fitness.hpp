#pragma once

#include <cstdint>
#include <string>

#include "rcga/model.hpp"

namespace rcga {

// Fitness values are exact integers; every comparison in the main loop
// is exact.
using Fitness = std::int64_t;

enum class FitnessKind {
    r_onemax,    // counts positions holding the top value r-1; max n
    g_onemax,    // sums all position values; max n*(r-1)
    r_onemax_at, // n minus Hamming distance to an arbitrary optimum
    g_onemax_at, // n*(r-1) minus ring distance to an arbitrary optimum
};

const char* to_string(FitnessKind kind);

// Building blocks for the four kinds (positions are 0-based throughout).
Fitness eval_r_onemax(const Individual& x, int r);
Fitness eval_g_onemax(const Individual& x);
Fitness eval_r_onemax_at(const Individual& a, const Individual& b);
Fitness eval_g_onemax_at(const Individual& a, const Individual& b, int r);

// An r-valued objective with a declared maximum and a unique maximizer.
// Immutable after construction; safe to share across threads.
class FitnessFunction {
  public:
    static FitnessFunction r_onemax(int n, int r);
    static FitnessFunction g_onemax(int n, int r);
    static FitnessFunction r_onemax_at(int n, int r, Individual optimum);
    static FitnessFunction g_onemax_at(int n, int r, Individual optimum);
    // Convenience constructors that draw the optimum uniformly at random.
    static FitnessFunction r_onemax_at_random(int n, int r, std::uint64_t seed);
    static FitnessFunction g_onemax_at_random(int n, int r, std::uint64_t seed);

    // r-OneMax with one position excluded from the sum. The excluded
    // position is neutral: its value never affects the fitness.
    static FitnessFunction r_onemax_ignoring(int n, int r, int neutral_position);

    Fitness evaluate(const Individual& x) const;
    Fitness max_value() const { return max_value_; }
    bool is_max(Fitness f) const { return f == max_value_; }

    // The unique maximizer for the four plain kinds; for the ignoring
    // variant this is the canonical all-(r-1)s maximizer.
    const Individual& optimum() const { return optimum_; }

    FitnessKind kind() const { return kind_; }
    int n() const { return n_; }
    int r() const { return r_; }
    bool has_neutral_position() const { return neutral_position_ >= 0; }
    int neutral_position() const { return neutral_position_; }

    // Optimum as a comma-separated integer list, for trace files.
    std::string optimum_csv() const;

  private:
    FitnessFunction(FitnessKind kind, int n, int r, Individual optimum, int neutral_position);

    FitnessKind kind_;
    int n_;
    int r_;
    Individual optimum_;
    Fitness max_value_;
    int neutral_position_; // -1 unless built by r_onemax_ignoring
};

// Uniformly random string in {0,...,r-1}^n; used for the _at variants.
Individual random_individual(int n, int r, std::uint64_t seed);

} // namespace rcga
