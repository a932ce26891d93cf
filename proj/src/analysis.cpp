#include "rcga/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rcga/parallel.hpp"

namespace rcga {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double sigma2_excluding(std::span<const double> freqs, int excluded) {
    double s = 0;
    for (int j = 0; j < int(freqs.size()); ++j)
        if (j != excluded)
            s += freqs[std::size_t(j)] * (1.0 - freqs[std::size_t(j)]);
    return s;
}

} // namespace

int compute_D(const Individual& x, const Individual& y, int position, int r) {
    int d = 0;
    const int n = int(x.values.size());
    for (int j = 0; j < n; ++j) {
        if (j == position)
            continue;
        d += (x.values[std::size_t(j)] == r - 1);
        d -= (y.values[std::size_t(j)] == r - 1);
    }
    return d;
}

std::vector<PositionClass> classify_step(const StepRecord& record) {
    const int n = int(record.x.values.size());
    const int top = record.r - 1;
    int total = 0;
    for (int j = 0; j < n; ++j) {
        total += (record.x.values[std::size_t(j)] == top);
        total -= (record.y.values[std::size_t(j)] == top);
    }
    std::vector<PositionClass> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int d = total - (record.x.values[std::size_t(i)] == top) +
                      (record.y.values[std::size_t(i)] == top);
        out[std::size_t(i)] = {d, classify_D(d)};
    }
    return out;
}

double bound_neutral_concentration(const BoundQuery& q) {
    if (q.K < 1 || q.r < 2 || q.T < 1)
        throw std::invalid_argument("bound_neutral_concentration: need K >= 1, r >= 2, T >= 1");
    const double e = double(q.K) * q.K / (8.0 * double(q.T) * double(q.r) * q.r);
    return std::min(1.0, 2.0 * std::exp(-e));
}

double bound_weak_preference(const BoundQuery& q) { return bound_neutral_concentration(q); }

double bound_collision_probability(std::span<const double> freqs, int excluded) {
    for (const double p : freqs)
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("bound_collision_probability: frequency outside [0,1]");
    const double sigma2 = sigma2_excluding(freqs, excluded);
    return 4.0 / (9.0 * (2.0 * std::sqrt(3.0 * sigma2) + 1.0));
}

double bound_single_frequency_drift(std::span<const double> freqs, int i, int K) {
    const double p = freqs[std::size_t(i)];
    if (p < 1.0 / K || p > 1.0 - 1.0 / K)
        throw std::invalid_argument("bound_single_frequency_drift: need 1/K <= p <= 1 - 1/K");
    const double sigma2 = sigma2_excluding(freqs, i);
    return 8.0 * p * (1.0 - p) / (9.0 * K * (2.0 * std::sqrt(3.0 * sigma2) + 1.0));
}

double bound_potential_drift(double phi, double s, int K) {
    if (phi < 0.5)
        throw std::invalid_argument("bound_potential_drift: hypothesis needs phi >= 1/2");
    if (s <= 0.0)
        throw std::invalid_argument("bound_potential_drift: hypothesis needs s > 0");
    return 2.0 * s * std::sqrt(phi) / (15.0 * K);
}

ExactPotential compute_potential(const FrequencyMatrix& model) {
    const auto& p = model.params();
    std::int64_t top = 0;
    for (int i = 0; i < p.n; ++i)
        top += model.count(i, p.r - 1);
    return {std::int64_t(p.n) * p.K - top, p.K};
}

std::vector<double> poisson_binomial_pmf(std::span<const double> probs) {
    std::vector<double> pmf{1.0};
    pmf.reserve(probs.size() + 1);
    for (const double p : probs) {
        pmf.push_back(0.0);
        for (std::size_t k = pmf.size() - 1; k > 0; --k)
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        pmf[0] *= (1.0 - p);
    }
    return pmf;
}

double exact_collision_probability(std::span<const double> freqs, int excluded) {
    std::vector<double> others;
    others.reserve(freqs.size());
    for (int j = 0; j < int(freqs.size()); ++j)
        if (j != excluded)
            others.push_back(freqs[std::size_t(j)]);
    const auto pmf = poisson_binomial_pmf(others);
    double collision = 0;
    for (const double q : pmf)
        collision += q * q;
    return collision;
}

// ---------------------------------------------------------------------
// Probes
// ---------------------------------------------------------------------

namespace {

constexpr std::uint64_t kMartingaleTag = 0x6d617274696e6761ULL;
constexpr std::uint64_t kDominancePrefTag = 0x646f6d2d70726566ULL;
constexpr std::uint64_t kDominanceNeutTag = 0x646f6d2d6e657574ULL;
constexpr std::uint64_t kDriftCaseTag = 0x706f742d64726966ULL;

} // namespace

MartingaleReport martingale_probe(const MartingaleProbeParams& params) {
    const ModelParams mp{params.n, params.r, params.K};
    mp.validate();
    if (params.trials < 1 || params.T < 0)
        throw std::invalid_argument("martingale_probe: need trials >= 1 and T >= 0");
    const auto fitness = FitnessFunction::r_onemax_ignoring(params.n, params.r, params.neutral_position);
    const int r = params.r;
    const int c0 = params.K / r;

    // per trial and value: final count and whether the deviation bar was hit
    std::vector<int> final_counts(std::size_t(params.trials) * r);
    std::vector<unsigned char> exceeded(std::size_t(params.trials) * r, 0);

    parallel_for(
        params.trials,
        [&](std::int64_t trial) {
            RandomSource rng(mix_seed(mix_seed(params.seed, kMartingaleTag), std::uint64_t(trial)));
            FrequencyMatrix model = FrequencyMatrix::uniform(mp);
            Individual x, y;
            unsigned char* hit = exceeded.data() + std::size_t(trial) * r;
            for (std::int64_t t = 0; t < params.T; ++t) {
                step(model, fitness, rng, x, y);
                for (int j = 0; j < r; ++j) {
                    // |c/K - 1/r| >= 1/(2r)  <=>  2r|c - K/r| >= K, exactly
                    const int c = model.count(params.neutral_position, j);
                    if (2 * r * std::abs(c - c0) >= params.K)
                        hit[j] = 1;
                }
            }
            for (int j = 0; j < r; ++j)
                final_counts[std::size_t(trial) * r + j] = model.count(params.neutral_position, j);
        },
        params.workers);

    MartingaleReport report;
    report.params = params;
    report.per_value.resize(std::size_t(r));
    for (int j = 0; j < r; ++j) {
        double sum = 0, sumsq = 0;
        std::int64_t hits = 0;
        for (int trial = 0; trial < params.trials; ++trial) {
            const double drift = double(final_counts[std::size_t(trial) * r + j] - c0) / params.K;
            sum += drift;
            sumsq += drift * drift;
            hits += exceeded[std::size_t(trial) * r + j];
        }
        const double mean = sum / params.trials;
        const double var = params.trials > 1
                               ? std::max(0.0, (sumsq - sum * mean) / (params.trials - 1))
                               : 0.0;
        auto& stats = report.per_value[std::size_t(j)];
        stats.mean_drift = mean;
        stats.std_error = std::sqrt(var / params.trials);
        stats.exceed_rate = double(hits) / params.trials;
    }
    report.bound = params.T > 0 ? bound_neutral_concentration({params.n, params.r, params.K, params.T})
                                : 0.0;
    return report;
}

std::string MartingaleReport::to_text() const {
    std::string out;
    out += "probe: martingale\n";
    out += "n: " + std::to_string(params.n) + "\n";
    out += "r: " + std::to_string(params.r) + "\n";
    out += "K: " + std::to_string(params.K) + "\n";
    out += "T: " + std::to_string(params.T) + "\n";
    out += "trials: " + std::to_string(params.trials) + "\n";
    out += "neutral_position: " + std::to_string(params.neutral_position) + "\n";
    out += "seed: " + std::to_string(params.seed) + "\n";
    out += "concentration_bound: " + fmt(bound) + "\n";
    for (int j = 0; j < int(per_value.size()); ++j) {
        const auto& s = per_value[std::size_t(j)];
        out += "value " + std::to_string(j) + ": mean_drift=" + fmt(s.mean_drift) +
               " std_error=" + fmt(s.std_error) + " exceed_rate=" + fmt(s.exceed_rate) + "\n";
    }
    return out;
}

DominanceReport dominance_probe(const DominanceProbeParams& params) {
    const ModelParams mp{params.n, params.r, params.K};
    mp.validate();
    if (params.trials < 1 || params.T < 0)
        throw std::invalid_argument("dominance_probe: need trials >= 1 and T >= 0");
    const auto preferring = FitnessFunction::r_onemax(params.n, params.r);
    const auto neutral = FitnessFunction::r_onemax_ignoring(params.n, params.r, 0);

    std::vector<int> count_pref(static_cast<std::size_t>(params.trials));
    std::vector<int> count_neut(static_cast<std::size_t>(params.trials));

    parallel_for(
        std::int64_t(params.trials) * 2,
        [&](std::int64_t item) {
            const bool pref = item < params.trials;
            const std::int64_t trial = pref ? item : item - params.trials;
            const std::uint64_t tag = pref ? kDominancePrefTag : kDominanceNeutTag;
            RandomSource rng(mix_seed(mix_seed(params.seed, tag), std::uint64_t(trial)));
            FrequencyMatrix model = FrequencyMatrix::uniform(mp);
            Individual x, y;
            const auto& fitness = pref ? preferring : neutral;
            for (std::int64_t t = 0; t < params.T; ++t)
                step(model, fitness, rng, x, y);
            (pref ? count_pref : count_neut)[std::size_t(trial)] = model.count(0, params.r - 1);
        },
        params.workers);

    auto cdf_of = [&](const std::vector<int>& counts) {
        std::vector<double> cdf(std::size_t(params.K) + 1, 0.0);
        for (const int c : counts)
            cdf[std::size_t(c)] += 1.0;
        double acc = 0;
        for (auto& v : cdf) {
            acc += v;
            v = acc / params.trials;
        }
        return cdf;
    };

    DominanceReport report;
    report.params = params;
    report.cdf_preferring = cdf_of(count_pref);
    report.cdf_neutral = cdf_of(count_neut);
    report.max_violation = 0;
    for (std::size_t c = 0; c < report.cdf_preferring.size(); ++c)
        report.max_violation =
            std::max(report.max_violation, report.cdf_preferring[c] - report.cdf_neutral[c]);
    // One-sided two-sample Smirnov threshold at significance 1e-3 with
    // equal sample sizes: sqrt(-ln(alpha) / trials).
    report.tolerance = std::sqrt(-std::log(1e-3) / params.trials);
    report.violated = report.max_violation > report.tolerance;
    return report;
}

std::string DominanceReport::to_text() const {
    std::string out;
    out += "probe: dominance\n";
    out += "n: " + std::to_string(params.n) + "\n";
    out += "r: " + std::to_string(params.r) + "\n";
    out += "K: " + std::to_string(params.K) + "\n";
    out += "T: " + std::to_string(params.T) + "\n";
    out += "trials: " + std::to_string(params.trials) + "\n";
    out += "seed: " + std::to_string(params.seed) + "\n";
    out += "max_violation: " + fmt(max_violation) + "\n";
    out += "tolerance: " + fmt(tolerance) + "\n";
    out += std::string("violated: ") + (violated ? "yes" : "no") + "\n";
    out += "cdf:\ncount,preferring,neutral\n";
    for (std::size_t c = 0; c < cdf_preferring.size(); ++c)
        out += std::to_string(c) + "," + fmt(cdf_preferring[c]) + "," + fmt(cdf_neutral[c]) + "\n";
    return out;
}

// ---------------------------------------------------------------------
// Consistency checks
// ---------------------------------------------------------------------

CollisionBoundReport check_collision_bound(int cases, int max_n, std::uint64_t seed) {
    if (cases < 1 || max_n < 2)
        throw std::invalid_argument("check_collision_bound: need cases >= 1, max_n >= 2");
    CollisionBoundReport report;
    report.cases.reserve(std::size_t(cases));
    RandomSource rng(mix_seed(seed, 0x636f6c6c6973696fULL));
    for (int c = 0; c < cases; ++c) {
        const int n = 2 + int(rng.below(std::uint32_t(max_n - 1)));
        std::vector<double> freqs(static_cast<std::size_t>(n));
        const bool with_extremes = rng.below(4) == 0;
        for (auto& p : freqs) {
            if (with_extremes) {
                switch (rng.below(3)) {
                case 0: p = 0.0; break;
                case 1: p = 1.0; break;
                default: p = rng.unit();
                }
            } else {
                p = rng.unit();
            }
        }
        const int excluded = int(rng.below(std::uint32_t(n)));
        CollisionBoundCase entry;
        entry.n = n;
        entry.excluded = excluded;
        entry.sigma2 = sigma2_excluding(freqs, excluded);
        entry.exact = exact_collision_probability(freqs, excluded);
        entry.bound = bound_collision_probability(freqs, excluded);
        entry.ok = entry.exact >= entry.bound;
        report.cases.push_back(entry);
    }
    report.all_ok = std::all_of(report.cases.begin(), report.cases.end(),
                                [](const CollisionBoundCase& e) { return e.ok; });
    return report;
}

std::string CollisionBoundReport::to_text() const {
    std::string out;
    out += "check: collision-probability bound vs exact enumeration\n";
    out += "cases: " + std::to_string(cases.size()) + "\n";
    out += std::string("all_ok: ") + (all_ok ? "yes" : "no") + "\n";
    for (const auto& e : cases)
        out += "n=" + std::to_string(e.n) + " sigma2=" + fmt(e.sigma2) + " exact=" + fmt(e.exact) +
               " bound=" + fmt(e.bound) + (e.ok ? " ok" : " VIOLATION") + "\n";
    return out;
}

PotentialDriftReport check_potential_drift(int cases, int steps_per_case, std::uint64_t seed,
                                           int workers) {
    if (cases < 1 || steps_per_case < 1)
        throw std::invalid_argument("check_potential_drift: need cases >= 1, steps >= 1");
    PotentialDriftReport report;
    report.cases.resize(std::size_t(cases));

    parallel_for(
        cases,
        [&](std::int64_t c) {
            RandomSource rng(mix_seed(mix_seed(seed, kDriftCaseTag), std::uint64_t(c)));
            const int r = 3 + int(rng.below(3));
            const int K = r * (8 + int(rng.below(25)));
            const int n = 4 + int(rng.below(13));
            const ModelParams mp{n, r, K};

            // Top-value counts in [1, 0.8K] keep s > 0 and phi >= 1/2.
            std::vector<int> counts(std::size_t(n) * r, 0);
            int min_top = K;
            std::int64_t top_sum = 0;
            for (int i = 0; i < n; ++i) {
                const int top = 1 + int(rng.below(std::uint32_t(std::max(1, (K * 4) / 5))));
                counts[std::size_t(i) * r + (r - 1)] = top;
                min_top = std::min(min_top, top);
                top_sum += top;
                const int rest = K - top;
                const int base = rest / (r - 1);
                int extra = rest % (r - 1);
                for (int j = 0; j < r - 1; ++j)
                    counts[std::size_t(i) * r + j] = base + (j < extra ? 1 : 0);
            }
            const FrequencyMatrix model(mp, std::move(counts));
            const double phi = double(std::int64_t(n) * K - top_sum) / K;
            const double s = double(min_top) / K;

            const auto fitness = FitnessFunction::r_onemax(n, r);
            const int top_value = r - 1;
            Individual x, y;
            double sum = 0, sumsq = 0;
            for (int t = 0; t < steps_per_case; ++t) {
                model.sample_into(x, rng);
                model.sample_into(y, rng);
                const Fitness fx = fitness.evaluate(x);
                const Fitness fy = fitness.evaluate(y);
                const Individual& w = fx < fy ? y : x;
                const Individual& l = fx < fy ? x : y;
                int drop_units = 0; // (phi - phi') * K for this hypothetical step
                for (int i = 0; i < n; ++i) {
                    drop_units += (w.values[std::size_t(i)] == top_value);
                    drop_units -= (l.values[std::size_t(i)] == top_value);
                }
                const double drop = double(drop_units) / K;
                sum += drop;
                sumsq += drop * drop;
            }
            const double mean = sum / steps_per_case;
            const double var = steps_per_case > 1
                                   ? std::max(0.0, (sumsq - sum * mean) / double(steps_per_case - 1))
                                   : 0.0;

            auto& entry = report.cases[std::size_t(c)];
            entry.n = n;
            entry.r = r;
            entry.K = K;
            entry.s = s;
            entry.phi = phi;
            entry.bound = bound_potential_drift(phi, s, K);
            entry.empirical = mean;
            entry.std_error = std::sqrt(var / steps_per_case);
            entry.ok = entry.empirical >= entry.bound - 4.0 * entry.std_error;
        },
        workers);

    report.all_ok = std::all_of(report.cases.begin(), report.cases.end(),
                                [](const PotentialDriftCase& e) { return e.ok; });
    return report;
}

std::string PotentialDriftReport::to_text() const {
    std::string out;
    out += "check: potential-drift bound vs one-step Monte Carlo\n";
    out += "cases: " + std::to_string(cases.size()) + "\n";
    out += std::string("all_ok: ") + (all_ok ? "yes" : "no") + "\n";
    for (const auto& e : cases)
        out += "n=" + std::to_string(e.n) + " r=" + std::to_string(e.r) + " K=" + std::to_string(e.K) +
               " s=" + fmt(e.s) + " phi=" + fmt(e.phi) + " bound=" + fmt(e.bound) +
               " empirical=" + fmt(e.empirical) + " std_error=" + fmt(e.std_error) +
               (e.ok ? " ok" : " VIOLATION") + "\n";
    return out;
}

} // namespace rcga
