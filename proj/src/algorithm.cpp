#include "rcga/algorithm.hpp"

#include <cmath>
#include <stdexcept>

namespace rcga {

const char* to_string(RunStatus status) {
    switch (status) {
    case RunStatus::optimum_sampled: return "OptimumSampled";
    case RunStatus::iteration_cap_reached: return "IterationCapReached";
    case RunStatus::stagnated: return "Stagnated";
    }
    return "?";
}

std::int64_t default_iteration_cap(const ModelParams& params) {
    const double cap = 50.0 * params.K * std::sqrt(double(params.n)) *
                       (1.0 + std::log2(double(params.r))) * (1.0 + std::log2(double(params.n)));
    return std::int64_t(std::ceil(cap));
}

bool select_and_update(FrequencyMatrix& model, const Individual& x, const Individual& y,
                       Fitness fx, Fitness fy) {
    const bool swapped = fx < fy;
    if (swapped)
        model.update(y, x);
    else
        model.update(x, y);
    return swapped;
}

namespace {

// Shared iteration kernel. When `stop_at` is set and a sample reaches
// that fitness, the update is skipped (the run terminates on the sampled
// pair, before touching the model). When `watched_optimum` is set, the
// return value reports whether this update zeroed a count at some
// position's optimal value, making that optimum unsampleable.
struct StepOutcome {
    Fitness fx, fy;
    bool swapped;
    bool updated;
    bool watched_absorbed;
};

StepOutcome do_step(FrequencyMatrix& model, const FitnessFunction& fitness, RandomSource& rng,
                    Individual& x, Individual& y, const Fitness* stop_at,
                    const Individual* watched_optimum, StepRecord* record) {
    model.sample_into(x, rng);
    model.sample_into(y, rng);
    const Fitness fx = fitness.evaluate(x);
    const Fitness fy = fitness.evaluate(y);

    StepOutcome out{fx, fy, false, false, false};
    if (record) {
        record->r = model.params().r;
        record->x = x;
        record->y = y;
        record->fx = fx;
        record->fy = fy;
        record->swapped = false;
        record->delta.clear();
    }
    if (stop_at && (fx == *stop_at || fy == *stop_at))
        return out;

    out.swapped = fx < fy;
    const Individual& winner = out.swapped ? y : x;
    const Individual& loser = out.swapped ? x : y;
    model.update(winner, loser);
    out.updated = true;

    if (record) {
        record->swapped = out.swapped;
        const int n = model.params().n;
        for (int i = 0; i < n; ++i) {
            const int w = winner.values[std::size_t(i)];
            const int l = loser.values[std::size_t(i)];
            if (w != l) {
                record->delta.push_back({i, w, +1});
                record->delta.push_back({i, l, -1});
            }
        }
    }
    if (watched_optimum) {
        const int n = model.params().n;
        for (int i = 0; i < n; ++i) {
            const int l = loser.values[std::size_t(i)];
            if (l != winner.values[std::size_t(i)] && l == watched_optimum->values[std::size_t(i)] &&
                model.count(i, l) == 0) {
                out.watched_absorbed = true;
                break;
            }
        }
    }
    return out;
}

bool optimum_unreachable(const FrequencyMatrix& model, const Individual& optimum) {
    for (int i = 0; i < model.params().n; ++i)
        if (model.count(i, optimum.values[std::size_t(i)]) == 0)
            return true;
    return false;
}

bool default_stagnation_check(const FitnessFunction& fitness) {
    return !fitness.has_neutral_position() &&
           (fitness.kind() == FitnessKind::r_onemax || fitness.kind() == FitnessKind::r_onemax_at);
}

} // namespace

StepRecord step(FrequencyMatrix& model, const FitnessFunction& fitness, RandomSource& rng) {
    StepRecord record;
    Individual x, y;
    do_step(model, fitness, rng, x, y, nullptr, nullptr, &record);
    return record;
}

StepSummary step(FrequencyMatrix& model, const FitnessFunction& fitness, RandomSource& rng,
                 Individual& x, Individual& y) {
    const StepOutcome out = do_step(model, fitness, rng, x, y, nullptr, nullptr, nullptr);
    return {out.fx, out.fy, out.swapped};
}

RunOutcome run(const RunConfig& config) {
    return run(config, FrequencyMatrix::uniform(config.params));
}

RunOutcome run(const RunConfig& config, FrequencyMatrix initial) {
    config.params.validate();
    if (config.max_iterations < 0)
        throw std::invalid_argument("RunConfig: max_iterations must be >= 0");
    if (config.fitness.n() != config.params.n || config.fitness.r() != config.params.r)
        throw std::invalid_argument("RunConfig: fitness dimensions do not match model params");
    if (initial.params().n != config.params.n || initial.params().r != config.params.r ||
        initial.params().K != config.params.K)
        throw std::invalid_argument("run: initial model does not match params");

    const std::int64_t cap =
        config.max_iterations > 0 ? config.max_iterations : default_iteration_cap(config.params);
    const bool stagnation = config.stagnation_check.value_or(default_stagnation_check(config.fitness));
    const Fitness max_value = config.fitness.max_value();
    const Individual& optimum = config.fitness.optimum();

    FrequencyMatrix model = std::move(initial);
    RandomSource rng(config.seed);
    Individual x, y;
    std::vector<StepRecord> trace;
    const bool record_full = config.trace == TraceLevel::full;

    // Pre-seeded models can already be unreachable; scan once up front.
    bool unreachable = stagnation && optimum_unreachable(model, optimum);

    for (std::int64_t t = 1; t <= cap; ++t) {
        StepRecord record;
        const StepOutcome out = do_step(model, config.fitness, rng, x, y, &max_value,
                                        stagnation ? &optimum : nullptr,
                                        record_full ? &record : nullptr);
        if (record_full) {
            record.t = t;
            trace.push_back(std::move(record));
        }
        if (out.fx == max_value || out.fy == max_value)
            return {RunStatus::optimum_sampled, t, 2 * t, std::move(model), std::move(trace)};
        unreachable = unreachable || out.watched_absorbed;
        if (stagnation && unreachable)
            return {RunStatus::stagnated, t, 2 * t, std::move(model), std::move(trace)};
    }
    return {RunStatus::iteration_cap_reached, cap, 2 * cap, std::move(model), std::move(trace)};
}

} // namespace rcga
