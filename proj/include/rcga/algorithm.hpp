#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rcga/fitness.hpp"
#include "rcga/model.hpp"
#include "rcga/rng.hpp"

namespace rcga {

enum class TraceLevel { off, summary, full };

enum class RunStatus {
    optimum_sampled,       // one of the current iteration's samples hit max_value
    iteration_cap_reached, // max_iterations elapsed without sampling the optimum
    stagnated,             // the unique maximizer can no longer be sampled
};

const char* to_string(RunStatus status);

struct RunConfig {
    ModelParams params;
    FitnessFunction fitness;
    std::int64_t max_iterations = 0; // 0 = automatic cap (default_iteration_cap)
    std::uint64_t seed = 0;
    TraceLevel trace = TraceLevel::off;
    // Stagnation detection flags runs whose unique maximizer has become
    // unsampleable (count 0 at the optimum value of some position).
    // Unset = on for r-OneMax kinds, off otherwise.
    std::optional<bool> stagnation_check;
};

// One count change applied by an update: counts[position][value] += change.
struct CountDelta {
    int position;
    int value;
    int change; // +1 or -1
};

// Per-iteration trace. x and y are the individuals as sampled, before
// any swap; `swapped` says whether f(x) < f(y) made y the winner.
struct StepRecord {
    std::int64_t t = 0;
    int r = 0;
    Individual x, y;
    bool swapped = false;
    Fitness fx = 0, fy = 0;
    std::vector<CountDelta> delta; // empty when x == y elementwise
};

// Allocation-free step result for hot loops.
struct StepSummary {
    Fitness fx = 0, fy = 0;
    bool swapped = false;
};

struct RunOutcome {
    RunStatus status;
    std::int64_t iterations = 0;
    std::int64_t evaluations = 0; // exactly 2 * iterations
    FrequencyMatrix final_model;
    std::vector<StepRecord> trace; // filled only at TraceLevel::full
};

// Default cap: 50 * K * sqrt(n) * (1 + log2 r) * (1 + log2 n). A constant
// multiple of the expected-runtime shape, so ordinary runs never hit it.
std::int64_t default_iteration_cap(const ModelParams& params);

// One iteration of the main loop: sample x and y independently, let the
// fitter one win (ties keep x, matching the strict inequality of the
// update rule), apply the 1/K update. Returns the full trace record.
StepRecord step(FrequencyMatrix& model, const FitnessFunction& fitness, RandomSource& rng);

// Same iteration without building a record; x and y are caller-owned
// buffers that receive the sampled pair.
StepSummary step(FrequencyMatrix& model, const FitnessFunction& fitness, RandomSource& rng,
                 Individual& x, Individual& y);

// Selection plus update on an already sampled pair. Returns true if the
// pair was swapped (f(x) < f(y)).
bool select_and_update(FrequencyMatrix& model, const Individual& x, const Individual& y,
                       Fitness fx, Fitness fy);

// Full run from the uniform model, or from a caller-supplied one.
RunOutcome run(const RunConfig& config);
RunOutcome run(const RunConfig& config, FrequencyMatrix initial);

} // namespace rcga
