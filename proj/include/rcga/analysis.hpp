#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcga/algorithm.hpp"
#include "rcga/model.hpp"

namespace rcga {

// ---------------------------------------------------------------------
// Step classification
//
// D_i is the difference between x and y in the number of top values
// (r-1) over all positions except i. It decides whether position i sees
// a fair random-walk step (D_i = 1 or |D_i| >= 2) or a biased step
// (D_i in {-1, 0}) for its top-value frequency.
// ---------------------------------------------------------------------

enum class StepClass { rw_step, biased_step };

struct PositionClass {
    int d = 0;
    StepClass cls = StepClass::rw_step;
};

// D_i for 0-based position i.
int compute_D(const Individual& x, const Individual& y, int position, int r);

constexpr StepClass classify_D(int d) {
    return (d == -1 || d == 0) ? StepClass::biased_step : StepClass::rw_step;
}

// Tags every position of a recorded step; the tags partition positions.
std::vector<PositionClass> classify_step(const StepRecord& record);

// ---------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------

struct BoundQuery {
    int n = 0;
    int r = 0;
    int K = 0;
    std::int64_t T = 0;
};

// Tail bound for a neutral position's frequency leaving [p0 - 1/(2r),
// p0 + 1/(2r)] within T steps: min(1, 2*exp(-K^2/(8*T*r^2))).
double bound_neutral_concentration(const BoundQuery& q);

// Same closed form; the bounded event is one-sided (the frequency of a
// weakly preferred value dropping below its start by 1/(2r)).
double bound_weak_preference(const BoundQuery& q);

// Lower bound on P[D_i = 0] given the top-value frequency snapshot:
// 4 / (9 * (2*sqrt(3*sigma2) + 1)) with sigma2 = sum_{j != i} p_j(1-p_j).
// `freqs` is the full row snapshot; `excluded` is the position i.
double bound_collision_probability(std::span<const double> freqs, int excluded);

// Lower bound on the expected one-step change of p_{i,r-1}:
// 8*p(1-p) / (9*K*(2*sqrt(3*sigma2) + 1)) with p = freqs[i]. Requires
// 1/K <= p <= 1 - 1/K (throws std::invalid_argument otherwise).
double bound_single_frequency_drift(std::span<const double> freqs, int i, int K);

// Lower bound on the expected one-step potential drop: 2*s*sqrt(phi)/(15K).
// Requires phi >= 1/2 and s > 0 (throws std::invalid_argument otherwise).
double bound_potential_drift(double phi, double s, int K);

// Potential phi = n - sum_i p_{i,r-1}, exact in units of 1/K.
struct ExactPotential {
    std::int64_t units = 0; // phi * K
    int K = 1;
    double value() const { return double(units) / K; }
};

ExactPotential compute_potential(const FrequencyMatrix& model);

// ---------------------------------------------------------------------
// Exact enumeration oracles
// ---------------------------------------------------------------------

// Distribution of a sum of independent Bernoulli(p_j), by dynamic
// programming over positions. Exact up to floating-point rounding.
std::vector<double> poisson_binomial_pmf(std::span<const double> probs);

// P[X = Y] for X, Y independent sums of Bernoulli(freqs[j]) over all
// positions except `excluded`; this is the exact value bounded below by
// bound_collision_probability.
double exact_collision_probability(std::span<const double> freqs, int excluded);

// ---------------------------------------------------------------------
// Monte Carlo probes
// ---------------------------------------------------------------------

struct MartingaleProbeParams {
    int n = 10;
    int r = 4;
    int K = 80;
    int neutral_position = 0;
    std::int64_t T = 200;
    int trials = 2000;
    std::uint64_t seed = 1;
    int workers = 0;
};

struct MartingaleValueStats {
    double mean_drift = 0;  // empirical mean of p^(T) - p^(0)
    double std_error = 0;   // standard error of that mean
    double exceed_rate = 0; // fraction of trials with max_t |p^(t)-p^(0)| >= 1/(2r)
};

struct MartingaleReport {
    MartingaleProbeParams params;
    std::vector<MartingaleValueStats> per_value; // index j in {0,...,r-1}
    double bound = 1;                            // neutral concentration bound for (K, T, r)
    std::string to_text() const;
};

// Runs `trials` independent r-cGA processes on an objective whose
// designated position is neutral, for T steps each, and aggregates the
// frequency drift and exceedance statistics at that position.
MartingaleReport martingale_probe(const MartingaleProbeParams& params);

struct DominanceProbeParams {
    int n = 5;
    int r = 3;
    int K = 30;
    std::int64_t T = 100;
    int trials = 5000;
    std::uint64_t seed = 1;
    int workers = 0;
};

struct DominanceReport {
    DominanceProbeParams params;
    std::vector<double> cdf_preferring; // F_P over counts 0..K at (position 0, value r-1)
    std::vector<double> cdf_neutral;    // F_Q, same grid
    double max_violation = 0;           // max_c (F_P(c) - F_Q(c))
    double tolerance = 0;               // one-sided two-sample KS threshold, alpha = 1e-3
    bool violated = false;
    std::string to_text() const;
};

// Pairs a process whose first position weakly prefers r-1 (plain
// r-OneMax) with one where it is neutral, and tests the stochastic
// dominance of the first frequency after T steps.
DominanceReport dominance_probe(const DominanceProbeParams& params);

// ---------------------------------------------------------------------
// Bound-vs-oracle consistency checks
// ---------------------------------------------------------------------

struct CollisionBoundCase {
    int n = 0;
    int excluded = 0;
    double sigma2 = 0;
    double exact = 0;
    double bound = 0;
    bool ok = false; // exact >= bound, no tolerance
};

struct CollisionBoundReport {
    std::vector<CollisionBoundCase> cases;
    bool all_ok = false;
    std::string to_text() const;
};

// Random frequency snapshots (n <= max_n) checked exact-vs-bound.
CollisionBoundReport check_collision_bound(int cases, int max_n, std::uint64_t seed);

struct PotentialDriftCase {
    int n = 0;
    int r = 0;
    int K = 0;
    double s = 0;
    double phi = 0;
    double bound = 0;
    double empirical = 0;
    double std_error = 0;
    bool ok = false; // empirical >= bound - 4 * std_error
};

struct PotentialDriftReport {
    std::vector<PotentialDriftCase> cases;
    bool all_ok = false;
    std::string to_text() const;
};

// Random snapshots satisfying the drift bound's hypotheses (frequency
// floor s, phi >= 1/2); the one-step potential drop is measured over
// `steps_per_case` Monte Carlo steps from the fixed snapshot.
PotentialDriftReport check_potential_drift(int cases, int steps_per_case, std::uint64_t seed,
                                           int workers = 0);

} // namespace rcga
