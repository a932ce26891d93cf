#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "rcga/algorithm.hpp"
#include "rcga/analysis.hpp"

using namespace rcga;

TEST_CASE("pre-seeded degenerate model samples the optimum at iteration 1") {
    const ModelParams params{1, 2, 8};
    RunConfig config{params, FitnessFunction::r_onemax(1, 2), 100, 3, TraceLevel::off, {}};
    const auto outcome = run(config, FrequencyMatrix(params, {0, 8}));
    CHECK(outcome.status == RunStatus::optimum_sampled);
    CHECK(outcome.iterations == 1);
    CHECK(outcome.evaluations == 2);
    // termination happens on the sampled pair, before any update
    CHECK(outcome.final_model.count(0, 1) == 8);
}

TEST_CASE("absorbed optimum frequency stagnates at iteration 1") {
    const ModelParams params{1, 2, 8};
    RunConfig config{params, FitnessFunction::r_onemax(1, 2), 100, 3, TraceLevel::off, true};
    const auto outcome = run(config, FrequencyMatrix(params, {8, 0}));
    CHECK(outcome.status == RunStatus::stagnated);
    CHECK(outcome.iterations == 1);
    CHECK(outcome.evaluations == 2);
}

TEST_CASE("stagnation detection defaults off for G-OneMax") {
    const ModelParams params{1, 2, 8};
    RunConfig config{params, FitnessFunction::g_onemax(1, 2), 25, 3, TraceLevel::off, {}};
    const auto outcome = run(config, FrequencyMatrix(params, {8, 0}));
    CHECK(outcome.status == RunStatus::iteration_cap_reached);
    CHECK(outcome.iterations == 25);
}

TEST_CASE("tiny instance finishes as fast as the exact chain predicts") {
    // Oracle: for n=1, r=2, K=2 the frequency chain over {0, 1/2, 1}
    // never moves before termination (a sampled 1 ends the run; two 0s
    // leave the model unchanged), so iterations ~ Geometric(3/4) and
    // E[iterations] = 4/3, Var = (1/4)/(3/4)^2 = 4/9.
    const double expected_mean = 4.0 / 3.0;
    const double expected_sd = 2.0 / 3.0;

    const ModelParams params{1, 2, 2};
    const int trials = 2000;
    double sum = 0;
    for (int t = 0; t < trials; ++t) {
        RunConfig config{params, FitnessFunction::r_onemax(1, 2), 10000, std::uint64_t(t), TraceLevel::off, {}};
        const auto outcome = run(config);
        REQUIRE(outcome.status == RunStatus::optimum_sampled);
        CHECK(outcome.iterations >= 1);
        sum += double(outcome.iterations);
    }
    const double mean = sum / trials;
    const double se = expected_sd / std::sqrt(double(trials));
    CHECK(std::abs(mean - expected_mean) <= 4 * se);
    CHECK(mean <= 10.0);
}

TEST_CASE("ties keep the first sample as winner") {
    // forced pair with equal fitness but different values
    const ModelParams params{2, 2, 4};
    auto m = FrequencyMatrix::uniform(params);
    const Individual x{{1, 0}};
    const Individual y{{0, 1}};
    const auto f = FitnessFunction::r_onemax(2, 2);
    const bool swapped = select_and_update(m, x, y, f.evaluate(x), f.evaluate(y));
    CHECK_FALSE(swapped);
    // winner x pushed value 1 at position 0 and value 0 at position 1
    CHECK(m.count(0, 1) == 3);
    CHECK(m.count(0, 0) == 1);
    CHECK(m.count(1, 0) == 3);
    CHECK(m.count(1, 1) == 1);
}

TEST_CASE("forced samples drive the uniform two-bit model to the corner") {
    const ModelParams params{2, 2, 2};
    auto m = FrequencyMatrix::uniform(params);
    const Individual x{{1, 1}};
    const Individual y{{0, 0}};
    select_and_update(m, x, y, 2, 0);
    CHECK(m.count(0, 0) == 0);
    CHECK(m.count(0, 1) == 2);
    CHECK(m.count(1, 0) == 0);
    CHECK(m.count(1, 1) == 2);
}

TEST_CASE("identical samples leave the model unchanged regardless of fitness") {
    const ModelParams params{3, 3, 9};
    auto m = FrequencyMatrix::uniform(params);
    const auto before = m;
    select_and_update(m, Individual{{0, 1, 2}}, Individual{{0, 1, 2}}, 7, 0);
    CHECK(m == before);
}

TEST_CASE("runs are bit-identical for identical configs") {
    RunConfig config{{6, 3, 12}, FitnessFunction::r_onemax(6, 3), 0, 777, TraceLevel::full, {}};
    const auto a = run(config);
    const auto b = run(config);
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    CHECK(a.evaluations == 2 * a.iterations);
    CHECK(a.final_model == b.final_model);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].x == b.trace[i].x);
        CHECK(a.trace[i].y == b.trace[i].y);
        CHECK(a.trace[i].swapped == b.trace[i].swapped);
    }
}

TEST_CASE("full traces replay to the final model") {
    RunConfig config{{5, 4, 8}, FitnessFunction::g_onemax(5, 4), 0, 2023, TraceLevel::full, {}};
    const auto outcome = run(config);
    REQUIRE(outcome.trace.size() == std::size_t(outcome.iterations));

    auto replay = FrequencyMatrix::uniform(config.params);
    std::int64_t expected_t = 1;
    for (const auto& rec : outcome.trace) {
        CHECK(rec.t == expected_t++);
        CHECK((rec.swapped == (rec.fx < rec.fy)));
        const Individual& winner = rec.swapped ? rec.y : rec.x;
        const Fitness fw = rec.swapped ? rec.fy : rec.fx;
        const Fitness fl = rec.swapped ? rec.fx : rec.fy;
        CHECK(fw >= fl);
        // replay the recorded deltas; the terminating iteration records none
        std::vector<int> counts;
        for (int i = 0; i < config.params.n; ++i)
            for (int j = 0; j < config.params.r; ++j)
                counts.push_back(replay.count(i, j));
        for (const auto& d : rec.delta)
            counts[std::size_t(d.position) * config.params.r + d.value] += d.change;
        replay = FrequencyMatrix(config.params, counts);
        if (!rec.delta.empty())
            CHECK(winner.values.size() == std::size_t(config.params.n));
    }
    CHECK(replay == outcome.final_model);
    if (outcome.status == RunStatus::optimum_sampled)
        CHECK(outcome.trace.back().delta.empty());
}

TEST_CASE("step records classify into a partition of rw and biased tags") {
    const ModelParams params{6, 3, 12};
    auto m = FrequencyMatrix::uniform(params);
    const auto f = FitnessFunction::r_onemax(6, 3);
    RandomSource rng(31);
    for (int t = 0; t < 300; ++t) {
        const auto rec = step(m, f, rng);
        const auto tags = classify_step(rec);
        REQUIRE(tags.size() == 6);
        for (int i = 0; i < 6; ++i) {
            const int d = compute_D(rec.x, rec.y, i, 3);
            CHECK(tags[std::size_t(i)].d == d);
            const bool biased = d == -1 || d == 0;
            CHECK((tags[std::size_t(i)].cls == (biased ? StepClass::biased_step : StepClass::rw_step)));
        }
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(run(RunConfig{{3, 3, 8}, FitnessFunction::r_onemax(3, 3), 0, 1, TraceLevel::off, {}}),
                    std::invalid_argument); // 3 does not divide 8
    CHECK_THROWS_AS(run(RunConfig{{3, 3, 9}, FitnessFunction::r_onemax(4, 3), 0, 1, TraceLevel::off, {}}),
                    std::invalid_argument); // fitness dims mismatch
    CHECK_THROWS_AS(run(RunConfig{{3, 3, 9}, FitnessFunction::r_onemax(3, 3), -5, 1, TraceLevel::off, {}}),
                    std::invalid_argument);
}

TEST_CASE("default iteration cap follows the documented shape") {
    const ModelParams p{500, 4, 100};
    const double shape = 50.0 * 100 * std::sqrt(500.0) * (1 + std::log2(4.0)) * (1 + std::log2(500.0));
    CHECK(default_iteration_cap(p) == std::int64_t(std::ceil(shape)));
    CHECK(default_iteration_cap({1, 2, 2}) >= 1);
}

namespace {

// Minimal, independent binary cGA on OneMax: frequencies as doubles,
// updates of +-1/K without borders, ties keep the first sample, stop
// when an all-ones string is sampled (checked before the update) or the
// optimum becomes unsampleable (some frequency at 0), or a cap is hit.
struct BinaryRef {
    enum class Status { success, stagnated, capped };
    Status status;
    long long iterations;
};

BinaryRef binary_cga(int n, int K, long long cap, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto coin = [&](double p) {
        return std::generate_canonical<double, 53>(gen) < p;
    };
    std::vector<double> p(std::size_t(n), 0.5);
    std::vector<int> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (long long t = 1; t <= cap; ++t) {
        int fx = 0, fy = 0;
        for (int i = 0; i < n; ++i) {
            x[std::size_t(i)] = coin(p[std::size_t(i)]);
            fx += x[std::size_t(i)];
        }
        for (int i = 0; i < n; ++i) {
            y[std::size_t(i)] = coin(p[std::size_t(i)]);
            fy += y[std::size_t(i)];
        }
        if (fx == n || fy == n)
            return {BinaryRef::Status::success, t};
        const bool swap = fx < fy;
        bool dead = false;
        for (int i = 0; i < n; ++i) {
            const int w = swap ? y[std::size_t(i)] : x[std::size_t(i)];
            const int l = swap ? x[std::size_t(i)] : y[std::size_t(i)];
            p[std::size_t(i)] += (w - l) / double(K);
            dead = dead || p[std::size_t(i)] <= 0.0;
        }
        if (dead)
            return {BinaryRef::Status::stagnated, t};
    }
    return {BinaryRef::Status::capped, cap};
}

} // namespace

TEST_CASE("r=2 restriction matches an independent binary cGA") {
    const int n = 5, K = 16, trials = 2500;
    const long long cap = default_iteration_cap({n, 2, K});

    double sum_r = 0, sumsq_r = 0;
    int succ_r = 0;
    for (int t = 0; t < trials; ++t) {
        RunConfig config{{n, 2, K}, FitnessFunction::r_onemax(n, 2), cap,
                         std::uint64_t(t) * 2654435761ULL + 17, TraceLevel::off, true};
        const auto outcome = run(config);
        if (outcome.status == RunStatus::optimum_sampled) {
            ++succ_r;
            sum_r += double(outcome.iterations);
            sumsq_r += double(outcome.iterations) * double(outcome.iterations);
        }
    }
    double sum_b = 0, sumsq_b = 0;
    int succ_b = 0;
    for (int t = 0; t < trials; ++t) {
        const auto ref = binary_cga(n, K, cap, std::uint64_t(t) * 0x9e3779b9ULL + 5);
        if (ref.status == BinaryRef::Status::success) {
            ++succ_b;
            sum_b += double(ref.iterations);
            sumsq_b += double(ref.iterations) * double(ref.iterations);
        }
    }
    REQUIRE(succ_r > trials / 2);
    REQUIRE(succ_b > trials / 2);

    const double mean_r = sum_r / succ_r;
    const double mean_b = sum_b / succ_b;
    const double var_r = (sumsq_r - sum_r * mean_r) / (succ_r - 1);
    const double var_b = (sumsq_b - sum_b * mean_b) / (succ_b - 1);
    const double se = std::sqrt(var_r / succ_r + var_b / succ_b);
    CHECK(std::abs(mean_r - mean_b) <= 3.0 * se);

    // success rates must agree too (same underlying chain)
    const double pr = double(succ_r) / trials, pb = double(succ_b) / trials;
    const double se_p = std::sqrt(pr * (1 - pr) / trials + pb * (1 - pb) / trials);
    CHECK(std::abs(pr - pb) <= 4.0 * se_p + 1e-9);
}
