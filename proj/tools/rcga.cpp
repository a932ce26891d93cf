// Command-line front end: single runs, (n, r, K) sweeps with CSV output,
// verification probes, and bound tables.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcga/analysis.hpp"
#include "rcga/harness.hpp"

using namespace rcga;

namespace {

SweepFitness parse_fitness(const std::string& name) {
    if (name == "r-onemax")
        return SweepFitness::r_onemax;
    if (name == "g-onemax")
        return SweepFitness::g_onemax;
    if (name == "r-onemax-at")
        return SweepFitness::r_onemax_at_random;
    if (name == "g-onemax-at")
        return SweepFitness::g_onemax_at_random;
    throw CLI::ValidationError("--fitness", "expected one of: r-onemax, g-onemax, r-onemax-at, g-onemax-at");
}

KRange parse_k_range(const std::string& text) {
    KRange range;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (in >> range.lo) {
        if (in >> colon1 >> range.hi >> colon2 >> range.stride) {
            if (colon1 == ':' && colon2 == ':' && in.eof())
                return range;
        } else if (in.eof()) {
            range.hi = range.lo;
            range.stride = 1;
            return range;
        }
    }
    throw CLI::ValidationError("--k", "expected K or lo:hi:stride, got '" + text + "'");
}

Individual parse_individual(const std::string& csv) {
    Individual out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ','))
        out.values.push_back(std::stoi(item));
    return out;
}

FitnessFunction build_fitness(SweepFitness kind, int n, int r, const std::string& optimum_csv,
                              std::uint64_t optimum_seed) {
    switch (kind) {
    case SweepFitness::r_onemax: return FitnessFunction::r_onemax(n, r);
    case SweepFitness::g_onemax: return FitnessFunction::g_onemax(n, r);
    case SweepFitness::r_onemax_at_random:
        return optimum_csv.empty() ? FitnessFunction::r_onemax_at_random(n, r, optimum_seed)
                                   : FitnessFunction::r_onemax_at(n, r, parse_individual(optimum_csv));
    case SweepFitness::g_onemax_at_random:
        return optimum_csv.empty() ? FitnessFunction::g_onemax_at_random(n, r, optimum_seed)
                                   : FitnessFunction::g_onemax_at(n, r, parse_individual(optimum_csv));
    }
    throw std::logic_error("unreachable");
}

void write_trace(const std::string& path, const RunOutcome& outcome, const ModelParams& params,
                 const FitnessFunction& fitness, bool with_deltas) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open trace file " + path);
    if (fitness.kind() == FitnessKind::r_onemax_at || fitness.kind() == FitnessKind::g_onemax_at)
        file << "# optimum: " << fitness.optimum_csv() << '\n';
    // phi after each iteration's update, tracked in exact 1/K units
    std::int64_t units = std::int64_t(params.n) * params.K - std::int64_t(params.n) * (params.K / params.r);
    file << "t,fx,fy,swapped,phi\n";
    for (const auto& rec : outcome.trace) {
        for (const auto& d : rec.delta)
            if (d.value == params.r - 1)
                units -= d.change;
        file << rec.t << ',' << rec.fx << ',' << rec.fy << ',' << (rec.swapped ? 1 : 0) << ','
             << format_sig6(double(units) / params.K) << '\n';
        if (with_deltas)
            for (const auto& d : rec.delta)
                file << "d," << d.position << ',' << d.value << ',' << (d.change > 0 ? "+1" : "-1")
                     << '\n';
    }
    if (!file)
        throw std::runtime_error("write failed for trace file " + path);
}

int cmd_run(int n, int r, int K, const std::string& fitness_name, std::uint64_t seed,
            std::int64_t max_iter, const std::string& trace_name, const std::string& trace_file,
            const std::string& optimum_csv, std::optional<std::uint64_t> optimum_seed,
            int stagnation) {
    const SweepFitness kind = parse_fitness(fitness_name);
    const auto fitness =
        build_fitness(kind, n, r, optimum_csv, optimum_seed.value_or(mix_seed(seed, 0x6f7074ULL)));
    TraceLevel trace = TraceLevel::off;
    if (trace_name == "summary")
        trace = TraceLevel::summary;
    else if (trace_name == "full")
        trace = TraceLevel::full;
    else if (trace_name != "off")
        throw CLI::ValidationError("--trace", "expected off, summary, or full");

    RunConfig config{ModelParams{n, r, K}, fitness, max_iter, seed, trace, {}};
    if (stagnation >= 0)
        config.stagnation_check = stagnation > 0;
    const RunOutcome outcome = run(config);

    std::printf("status: %s\n", to_string(outcome.status));
    std::printf("iterations: %lld\n", (long long)outcome.iterations);
    std::printf("evaluations: %lld\n", (long long)outcome.evaluations);
    if (kind == SweepFitness::r_onemax_at_random || kind == SweepFitness::g_onemax_at_random)
        std::printf("optimum: %s\n", fitness.optimum_csv().c_str());
    if (trace != TraceLevel::off) {
        const auto phi = compute_potential(outcome.final_model);
        std::printf("final_potential: %s\n", format_sig6(phi.value()).c_str());
    }
    if (!trace_file.empty()) {
        if (trace != TraceLevel::full)
            throw CLI::ValidationError("--trace-file", "needs --trace full");
        write_trace(trace_file, outcome, config.params, fitness, true);
        std::printf("trace: %s\n", trace_file.c_str());
    }
    return 0;
}

int cmd_sweep(int n, std::vector<int> rs, const std::string& k_text,
              const std::string& fitness_name, int reps, std::uint64_t seed, std::string out_dir,
              std::int64_t max_iter, int workers) {
    SweepSpec spec;
    spec.n = n;
    spec.r_list = std::move(rs);
    spec.k_range = parse_k_range(k_text);
    spec.fitness_kind = parse_fitness(fitness_name);
    spec.repetitions = reps;
    spec.master_seed = seed;
    spec.max_iterations = max_iter;
    spec.workers = workers;

    if (out_dir.empty()) {
        const char* env = std::getenv("RCGA_OUT");
        out_dir = env ? env : "out";
    }

    const SweepResult result = sweep(spec);
    for (const auto& [r, K] : result.skipped)
        std::fprintf(stderr, "skipped: r=%d K=%d (r does not divide K)\n", r, K);
    for (const auto& cell : result.cells)
        std::printf("r=%d K=%d success=%d/%d stagnated=%d capped=%d mean=%s std=%s\n", cell.r,
                    cell.K, cell.success_count, cell.repetitions, cell.stagnation_count,
                    cell.cap_count, format_sig6(cell.mean_iterations).c_str(),
                    format_sig6(cell.std_iterations).c_str());
    for (const auto& path : emit_csv(result, out_dir))
        std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_verify(const std::string& preset, std::uint64_t seed, int workers, bool quick) {
    if (preset != "paper-defaults")
        throw CLI::ValidationError("--preset", "only 'paper-defaults' is available");
    const int scale = quick ? 4 : 1;
    int failures = 0;
    auto report_line = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        failures += ok ? 0 : 1;
    };

    {
        MartingaleProbeParams params;
        params.n = 10;
        params.r = 4;
        params.K = 80;
        params.T = 200;
        params.trials = 2000 / scale;
        params.seed = seed;
        params.workers = workers;
        const auto rep = martingale_probe(params);
        std::fputs(rep.to_text().c_str(), stdout);
        bool mean_ok = true;
        double worst = 0;
        for (const auto& s : rep.per_value) {
            const double sigmas = s.std_error > 0 ? std::abs(s.mean_drift) / s.std_error : 0.0;
            worst = std::max(worst, sigmas);
            mean_ok = mean_ok && sigmas <= 4.0;
        }
        report_line("martingale zero drift", mean_ok,
                    "max |mean|/se = " + format_sig6(worst) + " (limit 4)");
        bool exceed_ok = true;
        for (const auto& s : rep.per_value) {
            const double slack = 3.0 * std::sqrt(rep.bound * (1 - rep.bound) / params.trials);
            exceed_ok = exceed_ok && s.exceed_rate <= rep.bound + slack;
        }
        report_line("neutral concentration (vacuous regime)", exceed_ok,
                    "bound = " + format_sig6(rep.bound));

        params.K = 800;
        const auto tight = martingale_probe(params);
        double max_rate = 0;
        for (const auto& s : tight.per_value)
            max_rate = std::max(max_rate, s.exceed_rate);
        report_line("neutral concentration (tight regime K=800)", max_rate < 0.08,
                    "max exceed rate = " + format_sig6(max_rate) + ", bound = " +
                        format_sig6(tight.bound));
    }
    {
        const auto rep = check_collision_bound(100 / scale, 12, seed);
        std::fputs(rep.to_text().c_str(), stdout);
        report_line("collision-probability bound (exact enumeration)", rep.all_ok,
                    std::to_string(rep.cases.size()) + " snapshots");
    }
    {
        const auto rep = check_potential_drift(20 / scale, 10000 / scale, seed, workers);
        std::fputs(rep.to_text().c_str(), stdout);
        report_line("potential drift bound (Monte Carlo)", rep.all_ok,
                    std::to_string(rep.cases.size()) + " snapshots");
    }
    {
        DominanceProbeParams params;
        params.trials = 5000 / scale;
        params.seed = seed;
        params.workers = workers;
        const auto rep = dominance_probe(params);
        std::fputs(rep.to_text().c_str(), stdout);
        report_line("weak-preference dominance", !rep.violated,
                    "max violation = " + format_sig6(rep.max_violation) + ", tolerance = " +
                        format_sig6(rep.tolerance));
    }
    std::printf("verify: %d failure(s)\n", failures);
    return failures == 0 ? 0 : 2;
}

int cmd_bounds(const std::vector<int>& ns, const std::vector<int>& rs, const std::vector<int>& ks,
               const std::vector<std::int64_t>& ts) {
    std::printf("n,r,K,T,concentration,collision_uniform,freq_drift_uniform,potential_drift_uniform,"
                "runtime_shape\n");
    for (const int n : ns)
        for (const int r : rs)
            for (const int K : ks)
                for (const std::int64_t T : ts) {
                    const double conc = bound_neutral_concentration({n, r, K, T});
                    std::vector<double> uniform(std::size_t(n), 1.0 / r);
                    const double coll = bound_collision_probability(uniform, 0);
                    const double drift =
                        K >= r ? bound_single_frequency_drift(uniform, 0, K) : std::nan("");
                    const double phi = n * (1.0 - 1.0 / r);
                    const double pot =
                        phi >= 0.5 ? bound_potential_drift(phi, 1.0 / r, K) : std::nan("");
                    const double shape = K * std::sqrt(double(n)) * std::log(double(r)) *
                                         std::log(double(n));
                    std::printf("%d,%d,%d,%lld,%s,%s,%s,%s,%s\n", n, r, K, (long long)T,
                                format_sig6(conc).c_str(), format_sig6(coll).c_str(),
                                format_sig6(drift).c_str(), format_sig6(pot).c_str(),
                                format_sig6(shape).c_str());
                }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"r-valued compact genetic algorithm on multi-valued OneMax"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "execute a single run and print its outcome");
    int n = 50, r = 3, K = 300;
    std::string fitness_name = "r-onemax";
    std::uint64_t seed = 0;
    std::int64_t max_iter = 0;
    std::string trace_name = "off", trace_file, optimum_csv;
    std::optional<std::uint64_t> optimum_seed;
    int stagnation = -1;
    run_cmd->add_option("--n", n, "number of positions")->required();
    run_cmd->add_option("--r", r, "alphabet size")->required();
    run_cmd->add_option("--k", K, "hypothetical population size (multiple of r)")->required();
    run_cmd->add_option("--fitness", fitness_name, "r-onemax | g-onemax | r-onemax-at | g-onemax-at");
    run_cmd->add_option("--seed", seed, "run seed");
    run_cmd->add_option("--max-iter", max_iter, "iteration cap (0 = automatic)");
    run_cmd->add_option("--trace", trace_name, "off | summary | full");
    run_cmd->add_option("--trace-file", trace_file, "trace output path (needs --trace full)");
    run_cmd->add_option("--optimum", optimum_csv, "optimum for the -at kinds, comma-separated");
    run_cmd->add_option("--optimum-seed", optimum_seed, "seed for a random optimum (-at kinds)");
    run_cmd->add_flag("--stagnation,!--no-stagnation", stagnation,
                      "force stagnation detection on/off (default: on for r-OneMax kinds)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a (r, K) grid and write CSV series");
    std::vector<int> rs{4};
    std::string k_text = "52:1000:4";
    int reps = 300;
    std::string out_dir;
    int workers = 0;
    sweep_cmd->add_option("--n", n, "number of positions")->required();
    sweep_cmd->add_option("--r", rs, "alphabet sizes (comma-separated)")->delimiter(',')->required();
    sweep_cmd->add_option("--k", k_text, "K grid as lo:hi:stride or a single K")->required();
    sweep_cmd->add_option("--fitness", fitness_name, "r-onemax | g-onemax | r-onemax-at | g-onemax-at");
    sweep_cmd->add_option("--reps", reps, "repetitions per cell");
    sweep_cmd->add_option("--seed", seed, "master seed");
    sweep_cmd->add_option("--out", out_dir, "output directory (default $RCGA_OUT or ./out)");
    sweep_cmd->add_option("--max-iter", max_iter, "iteration cap (0 = automatic)");
    sweep_cmd->add_option("--workers", workers, "worker threads (default $RCGA_WORKERS or hardware)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the statistical verification probes");
    std::string preset = "paper-defaults";
    bool quick = false;
    verify_cmd->add_option("--preset", preset, "parameter preset (paper-defaults)");
    verify_cmd->add_option("--seed", seed, "probe seed");
    verify_cmd->add_option("--workers", workers, "worker threads");
    verify_cmd->add_flag("--quick", quick, "reduced trial counts (smoke test)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "tabulate the closed-form bounds over a grid");
    std::vector<int> bn{500}, br{4}, bk{100};
    std::vector<std::int64_t> bt{1000};
    bounds_cmd->add_option("--n", bn, "n values")->delimiter(',');
    bounds_cmd->add_option("--r", br, "r values")->delimiter(',');
    bounds_cmd->add_option("--k", bk, "K values")->delimiter(',');
    bounds_cmd->add_option("--t", bt, "T values (step horizons)")->delimiter(',');

    // conjecture
    auto* conj_cmd = app.add_subcommand("conjecture", "G-OneMax runtime scaling diagnostic");
    std::vector<int> cns{100, 200, 400};
    int cr = 3, creps = 30;
    conj_cmd->add_option("--n", cns, "n values (comma-separated)")->delimiter(',');
    conj_cmd->add_option("--r", cr, "alphabet size");
    conj_cmd->add_option("--reps", creps, "repetitions per (c, n) row");
    conj_cmd->add_option("--seed", seed, "master seed");
    conj_cmd->add_option("--workers", workers, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(n, r, K, fitness_name, seed, max_iter, trace_name, trace_file,
                           optimum_csv, optimum_seed, stagnation);
        if (sweep_cmd->parsed())
            return cmd_sweep(n, rs, k_text, fitness_name, reps, seed, out_dir, max_iter, workers);
        if (verify_cmd->parsed())
            return cmd_verify(preset, seed == 0 ? 20240817 : seed, workers, quick);
        if (bounds_cmd->parsed())
            return cmd_bounds(bn, br, bk, bt);
        if (conj_cmd->parsed()) {
            const auto report = conjecture_probe(cns, cr, creps, seed == 0 ? 1 : seed, workers);
            std::fputs(report.to_text().c_str(), stdout);
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
