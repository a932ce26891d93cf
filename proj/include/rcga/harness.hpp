#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcga/algorithm.hpp"

namespace rcga {

// Inclusive K grid with stride.
struct KRange {
    int lo = 0;
    int hi = 0;
    int stride = 1;
};

enum class SweepFitness { r_onemax, g_onemax, r_onemax_at_random, g_onemax_at_random };

const char* to_string(SweepFitness kind);

struct SweepSpec {
    int n = 0;
    std::vector<int> r_list;
    KRange k_range;
    SweepFitness fitness_kind = SweepFitness::r_onemax;
    int repetitions = 1;
    std::uint64_t master_seed = 0;
    std::int64_t max_iterations = 0; // 0 = automatic per-run cap
    int workers = 0;                 // 0 = RCGA_WORKERS env var or hardware
};

struct SweepCell {
    int r = 0;
    int K = 0;
    int repetitions = 0;
    int success_count = 0;
    int stagnation_count = 0;
    int cap_count = 0;
    double mean_iterations = 0; // over successful runs; NaN when none succeeded
    double std_iterations = 0;  // sample standard deviation; NaN when none succeeded
    double success_rate() const { return double(success_count) / repetitions; }
    bool all_failed() const { return success_count == 0; }
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;             // ordered by (r, K)
    std::vector<std::pair<int, int>> skipped; // (r, K) cells with r not dividing K
};

// Deterministic mixing of (master_seed, r, K, trial_index) into one run
// seed. The mapping is a fixed chain of splitmix64 steps and is part of
// the reproducibility contract: it must never change.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t r, std::uint64_t K,
                                std::uint64_t trial_index);

// Runs repetitions independent r-cGA runs per (r, K) cell and aggregates
// them. Cells where r does not divide K are skipped and reported as such.
// Trials execute on a bounded worker pool; aggregation is a deterministic
// fold in (r, K, trial) order, so results do not depend on scheduling.
SweepResult sweep(const SweepSpec& spec);

// A double with 6 significant digits, trailing zeros kept (1234.5 ->
// "1234.50", 200 -> "200.000", 1 -> "1.00000").
std::string format_sig6(double v);

// CSV for one r series: header "K,mean_iterations,std_iterations,success_rate"
// plus one row per K in ascending order.
std::string series_csv(const SweepResult& result, int r);

// Writes one file per (r, fitness) series into out_dir, named
// <fitness>-n<n>-r<r>.csv. Returns the written paths. I/O failures throw
// with the offending path in the message.
std::vector<std::string> emit_csv(const SweepResult& result, const std::string& out_dir);

struct SeriesRow {
    int K = 0;
    double mean_iterations = 0;
    double std_iterations = 0;
    double success_rate = 0;
};

// Parses what series_csv emits (header + rows).
std::vector<SeriesRow> parse_series_csv(const std::string& text);

// Diagnostic for the conjectured O(K*sqrt(n)*log r) scaling on G-OneMax:
// runs at K = (smallest multiple of r) >= c*r*sqrt(n)*ln(r)*ln(n) for
// c in {1, 2, 4} and reports mean iterations normalized by K*sqrt(n)*ln r.
// Explicitly non-conclusive; the ratios are a shape check, not a proof.
struct ConjectureRow {
    double c = 0;
    int n = 0;
    int r = 0;
    int K = 0;
    int repetitions = 0;
    int success_count = 0;
    double mean_iterations = 0; // over successes; NaN when none
    double normalized = 0;      // mean / (K * sqrt(n) * ln r)
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    std::string to_text() const;
};

ConjectureReport conjecture_probe(std::span<const int> ns, int r, int reps, std::uint64_t seed,
                                  int workers = 0);

} // namespace rcga
