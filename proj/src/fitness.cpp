#include "rcga/fitness.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rcga {

const char* to_string(FitnessKind kind) {
    switch (kind) {
    case FitnessKind::r_onemax: return "rOneMax";
    case FitnessKind::g_onemax: return "GOneMax";
    case FitnessKind::r_onemax_at: return "rOneMaxAt";
    case FitnessKind::g_onemax_at: return "GOneMaxAt";
    }
    return "?";
}

Fitness eval_r_onemax(const Individual& x, int r) {
    Fitness f = 0;
    for (const int v : x.values)
        f += (v == r - 1);
    return f;
}

Fitness eval_g_onemax(const Individual& x) {
    Fitness f = 0;
    for (const int v : x.values)
        f += v;
    return f;
}

Fitness eval_r_onemax_at(const Individual& a, const Individual& b) {
    Fitness distance = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        distance += (b.values[i] != a.values[i]);
    return Fitness(a.values.size()) - distance;
}

Fitness eval_g_onemax_at(const Individual& a, const Individual& b, int r) {
    Fitness distance = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const int d = std::abs(a.values[i] - b.values[i]);
        distance += std::min(d, r - d);
    }
    return Fitness(a.values.size()) * (r - 1) - distance;
}

Individual random_individual(int n, int r, std::uint64_t seed) {
    RandomSource rng(seed);
    Individual out;
    out.values.resize(std::size_t(n));
    for (int i = 0; i < n; ++i)
        out.values[std::size_t(i)] = int(rng.below(std::uint32_t(r)));
    return out;
}

namespace {

Individual all_top(int n, int r) {
    Individual out;
    out.values.assign(std::size_t(n), r - 1);
    return out;
}

void check_dims(int n, int r) {
    if (n < 1 || r < 2)
        throw std::invalid_argument("FitnessFunction: need n >= 1 and r >= 2");
}

void check_optimum(const Individual& a, int n, int r) {
    if (int(a.values.size()) != n)
        throw std::invalid_argument("FitnessFunction: optimum has wrong length");
    for (const int v : a.values)
        if (v < 0 || v >= r)
            throw std::invalid_argument("FitnessFunction: optimum entry out of {0,...,r-1}");
}

} // namespace

FitnessFunction::FitnessFunction(FitnessKind kind, int n, int r, Individual optimum, int neutral_position)
    : kind_(kind), n_(n), r_(r), optimum_(std::move(optimum)), neutral_position_(neutral_position) {
    const int counted = neutral_position_ >= 0 ? n_ - 1 : n_;
    max_value_ = (kind_ == FitnessKind::r_onemax || kind_ == FitnessKind::r_onemax_at)
                     ? Fitness(counted)
                     : Fitness(counted) * (r_ - 1);
}

FitnessFunction FitnessFunction::r_onemax(int n, int r) {
    check_dims(n, r);
    return {FitnessKind::r_onemax, n, r, all_top(n, r), -1};
}

FitnessFunction FitnessFunction::g_onemax(int n, int r) {
    check_dims(n, r);
    return {FitnessKind::g_onemax, n, r, all_top(n, r), -1};
}

FitnessFunction FitnessFunction::r_onemax_at(int n, int r, Individual optimum) {
    check_dims(n, r);
    check_optimum(optimum, n, r);
    return {FitnessKind::r_onemax_at, n, r, std::move(optimum), -1};
}

FitnessFunction FitnessFunction::g_onemax_at(int n, int r, Individual optimum) {
    check_dims(n, r);
    check_optimum(optimum, n, r);
    return {FitnessKind::g_onemax_at, n, r, std::move(optimum), -1};
}

FitnessFunction FitnessFunction::r_onemax_at_random(int n, int r, std::uint64_t seed) {
    check_dims(n, r);
    return r_onemax_at(n, r, random_individual(n, r, seed));
}

FitnessFunction FitnessFunction::g_onemax_at_random(int n, int r, std::uint64_t seed) {
    check_dims(n, r);
    return g_onemax_at(n, r, random_individual(n, r, seed));
}

FitnessFunction FitnessFunction::r_onemax_ignoring(int n, int r, int neutral_position) {
    check_dims(n, r);
    if (neutral_position < 0 || neutral_position >= n)
        throw std::invalid_argument("FitnessFunction: neutral position out of range");
    return {FitnessKind::r_onemax, n, r, all_top(n, r), neutral_position};
}

Fitness FitnessFunction::evaluate(const Individual& x) const {
    if (neutral_position_ >= 0) {
        Fitness f = 0;
        for (int i = 0; i < n_; ++i)
            f += (i != neutral_position_ && x.values[std::size_t(i)] == r_ - 1);
        return f;
    }
    switch (kind_) {
    case FitnessKind::r_onemax: return eval_r_onemax(x, r_);
    case FitnessKind::g_onemax: return eval_g_onemax(x);
    case FitnessKind::r_onemax_at: return eval_r_onemax_at(optimum_, x);
    case FitnessKind::g_onemax_at: return eval_g_onemax_at(optimum_, x, r_);
    }
    return 0;
}

std::string FitnessFunction::optimum_csv() const {
    std::string out;
    for (std::size_t i = 0; i < optimum_.values.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(optimum_.values[i]);
    }
    return out;
}

} // namespace rcga
