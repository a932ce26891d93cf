#include "rcga/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "rcga/parallel.hpp"

namespace rcga {

namespace {

constexpr std::uint64_t kOptimumTag = 0x6f7074696d756d21ULL;
constexpr std::uint64_t kConjectureTag = 0x636f6e6a65637431ULL;

FitnessKind fitness_kind_of(SweepFitness kind) {
    switch (kind) {
    case SweepFitness::r_onemax: return FitnessKind::r_onemax;
    case SweepFitness::g_onemax: return FitnessKind::g_onemax;
    case SweepFitness::r_onemax_at_random: return FitnessKind::r_onemax_at;
    case SweepFitness::g_onemax_at_random: return FitnessKind::g_onemax_at;
    }
    return FitnessKind::r_onemax;
}

FitnessFunction make_fitness(SweepFitness kind, int n, int r, std::uint64_t trial_seed) {
    switch (kind) {
    case SweepFitness::r_onemax: return FitnessFunction::r_onemax(n, r);
    case SweepFitness::g_onemax: return FitnessFunction::g_onemax(n, r);
    case SweepFitness::r_onemax_at_random:
        return FitnessFunction::r_onemax_at_random(n, r, mix_seed(trial_seed, kOptimumTag));
    case SweepFitness::g_onemax_at_random:
        return FitnessFunction::g_onemax_at_random(n, r, mix_seed(trial_seed, kOptimumTag));
    }
    throw std::invalid_argument("make_fitness: unknown kind");
}

struct TrialStats {
    RunStatus status;
    std::int64_t iterations;
};

void fold_cell(SweepCell& cell, std::span<const TrialStats> trials) {
    double sum = 0;
    for (const auto& t : trials) {
        switch (t.status) {
        case RunStatus::optimum_sampled:
            ++cell.success_count;
            sum += double(t.iterations);
            break;
        case RunStatus::stagnated: ++cell.stagnation_count; break;
        case RunStatus::iteration_cap_reached: ++cell.cap_count; break;
        }
    }
    if (cell.success_count == 0) {
        cell.mean_iterations = std::numeric_limits<double>::quiet_NaN();
        cell.std_iterations = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double mean = sum / cell.success_count;
    double ss = 0;
    for (const auto& t : trials)
        if (t.status == RunStatus::optimum_sampled) {
            const double d = double(t.iterations) - mean;
            ss += d * d;
        }
    cell.mean_iterations = mean;
    cell.std_iterations = cell.success_count > 1 ? std::sqrt(ss / (cell.success_count - 1)) : 0.0;
}

} // namespace

const char* to_string(SweepFitness kind) { return to_string(fitness_kind_of(kind)); }

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t r, std::uint64_t K,
                                std::uint64_t trial_index) {
    std::uint64_t h = splitmix64(master_seed);
    h = mix_seed(h, r);
    h = mix_seed(h, K);
    h = mix_seed(h, trial_index);
    return h;
}

SweepResult sweep(const SweepSpec& spec) {
    if (spec.n < 1)
        throw std::invalid_argument("sweep: n must be >= 1");
    if (spec.repetitions < 1)
        throw std::invalid_argument("sweep: repetitions must be >= 1");
    if (spec.r_list.empty())
        throw std::invalid_argument("sweep: r_list must not be empty");
    if (spec.k_range.stride < 1 || spec.k_range.lo > spec.k_range.hi)
        throw std::invalid_argument("sweep: bad K range");

    std::vector<int> rs = spec.r_list;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    if (rs.front() < 2)
        throw std::invalid_argument("sweep: every r must be >= 2");

    SweepResult result;
    result.spec = spec;
    for (const int r : rs)
        for (int K = spec.k_range.lo; K <= spec.k_range.hi; K += spec.k_range.stride) {
            if (K % r != 0) {
                result.skipped.emplace_back(r, K);
                continue;
            }
            SweepCell cell;
            cell.r = r;
            cell.K = K;
            cell.repetitions = spec.repetitions;
            result.cells.push_back(cell);
        }
    if (result.cells.empty() && result.skipped.empty())
        throw std::invalid_argument("sweep: the (r, K) grid is empty");

    const std::int64_t reps = spec.repetitions;
    std::vector<TrialStats> stats(result.cells.size() * std::size_t(reps));
    parallel_for(
        std::int64_t(result.cells.size()) * reps,
        [&](std::int64_t item) {
            const std::size_t cell_idx = std::size_t(item / reps);
            const std::int64_t trial = item % reps;
            const SweepCell& cell = result.cells[cell_idx];
            const std::uint64_t seed = derive_trial_seed(spec.master_seed, std::uint64_t(cell.r),
                                                         std::uint64_t(cell.K), std::uint64_t(trial));
            RunConfig config{ModelParams{spec.n, cell.r, cell.K},
                             make_fitness(spec.fitness_kind, spec.n, cell.r, seed),
                             spec.max_iterations,
                             seed,
                             TraceLevel::off,
                             // Detection only flags provably unreachable optima, so it
                             // never changes success statistics; it just keeps doomed
                             // runs from burning the whole iteration cap.
                             true};
            const RunOutcome outcome = run(config);
            stats[std::size_t(item)] = {outcome.status, outcome.iterations};
        },
        spec.workers);

    for (std::size_t c = 0; c < result.cells.size(); ++c)
        fold_cell(result.cells[c], {stats.data() + c * std::size_t(reps), std::size_t(reps)});
    return result;
}

std::string format_sig6(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0.00000";
    const double a = std::abs(v);
    int decimals = 5 - int(std::floor(std::log10(a)));
    decimals = std::clamp(decimals, 0, 17);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string series_csv(const SweepResult& result, int r) {
    std::string out = "K,mean_iterations,std_iterations,success_rate\n";
    bool any = false;
    for (const auto& cell : result.cells) {
        if (cell.r != r)
            continue;
        any = true;
        out += std::to_string(cell.K) + "," + format_sig6(cell.mean_iterations) + "," +
               format_sig6(cell.std_iterations) + "," + format_sig6(cell.success_rate()) + "\n";
    }
    if (!any)
        throw std::invalid_argument("series_csv: no cells for r=" + std::to_string(r));
    return out;
}

std::vector<std::string> emit_csv(const SweepResult& result, const std::string& out_dir) {
    if (result.cells.empty())
        throw std::invalid_argument("emit_csv: result has no cells");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("emit_csv: cannot create directory " + out_dir + ": " + ec.message());

    std::vector<int> rs;
    for (const auto& cell : result.cells)
        if (rs.empty() || rs.back() != cell.r)
            rs.push_back(cell.r);

    std::vector<std::string> paths;
    for (const int r : rs) {
        const std::string name = std::string(to_string(result.spec.fitness_kind)) + "-n" +
                                 std::to_string(result.spec.n) + "-r" + std::to_string(r) + ".csv";
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw std::runtime_error("emit_csv: cannot open " + path);
        file << series_csv(result, r);
        if (!file)
            throw std::runtime_error("emit_csv: write failed for " + path);
        paths.push_back(path);
    }
    return paths;
}

std::vector<SeriesRow> parse_series_csv(const std::string& text) {
    std::vector<SeriesRow> rows;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos)
            end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty())
            continue;
        if (first) {
            if (line != "K,mean_iterations,std_iterations,success_rate")
                throw std::invalid_argument("parse_series_csv: unexpected header: " + line);
            first = false;
            continue;
        }
        SeriesRow row;
        char* cursor = nullptr;
        row.K = int(std::strtol(line.c_str(), &cursor, 10));
        for (double* field : {&row.mean_iterations, &row.std_iterations, &row.success_rate}) {
            if (*cursor != ',')
                throw std::invalid_argument("parse_series_csv: malformed row: " + line);
            *field = std::strtod(cursor + 1, &cursor);
        }
        rows.push_back(row);
    }
    if (first)
        throw std::invalid_argument("parse_series_csv: missing header");
    return rows;
}

ConjectureReport conjecture_probe(std::span<const int> ns, int r, int reps, std::uint64_t seed,
                                  int workers) {
    if (reps < 1)
        throw std::invalid_argument("conjecture_probe: reps must be >= 1");
    if (ns.empty())
        throw std::invalid_argument("conjecture_probe: need at least one n");
    if (r < 2)
        throw std::invalid_argument("conjecture_probe: r must be >= 2");

    ConjectureReport report;
    for (const double c : {1.0, 2.0, 4.0}) {
        for (const int n : ns) {
            const double target = c * r * std::sqrt(double(n)) * std::log(double(r)) * std::log(double(n));
            const int K = int(std::ceil(target / r)) * r; // round up to a multiple of r
            ConjectureRow row;
            row.c = c;
            row.n = n;
            row.r = r;
            row.K = K;
            row.repetitions = reps;

            std::vector<TrialStats> stats(static_cast<std::size_t>(reps));
            parallel_for(
                reps,
                [&](std::int64_t trial) {
                    const std::uint64_t run_seed = derive_trial_seed(
                        mix_seed(seed, kConjectureTag) ^ std::uint64_t(std::llround(c * 1000)),
                        std::uint64_t(r), std::uint64_t(K), std::uint64_t(trial));
                    RunConfig config{ModelParams{n, r, K}, FitnessFunction::g_onemax(n, r),
                                     0, run_seed, TraceLevel::off, true};
                    const RunOutcome outcome = run(config);
                    stats[std::size_t(trial)] = {outcome.status, outcome.iterations};
                },
                workers);

            double sum = 0;
            for (const auto& t : stats)
                if (t.status == RunStatus::optimum_sampled) {
                    ++row.success_count;
                    sum += double(t.iterations);
                }
            if (row.success_count > 0) {
                row.mean_iterations = sum / row.success_count;
                row.normalized = row.mean_iterations / (K * std::sqrt(double(n)) * std::log(double(r)));
            } else {
                row.mean_iterations = std::numeric_limits<double>::quiet_NaN();
                row.normalized = std::numeric_limits<double>::quiet_NaN();
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string ConjectureReport::to_text() const {
    std::string out;
    out += "diagnostic: G-OneMax runtime scaling (non-conclusive shape check)\n";
    out += "c,n,r,K,reps,successes,mean_iterations,normalized\n";
    for (const auto& row : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%g,%d,%d,%d,%d,%d,%s,%s\n", row.c, row.n, row.r, row.K,
                      row.repetitions, row.success_count, format_sig6(row.mean_iterations).c_str(),
                      format_sig6(row.normalized).c_str());
        out += buf;
    }
    return out;
}

} // namespace rcga
