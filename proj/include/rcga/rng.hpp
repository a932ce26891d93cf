#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace rcga {

// splitmix64 mixing step. Used wherever a seed has to be derived from
// another seed or from a tuple of integers; the output sequence is part
// of the reproducibility contract, so the function must never change.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Folds one value into a seed. Chaining mix_seed calls gives the
// canonical way to derive per-trial / per-purpose seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) noexcept {
    return splitmix64(seed ^ value);
}

// Seedable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard, so a seed fully determines a run on
// every platform. Bounded draws are exactly uniform (no modulo bias).
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on {0,...,bound-1}. Lemire multiply-shift with rejection;
    // the division only happens on the (rare) rejection path.
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t m = std::uint64_t(word32()) * bound;
        auto low = std::uint32_t(m);
        if (low < bound) {
            const std::uint32_t threshold = std::uint32_t(-bound) % bound;
            while (low < threshold) {
                m = std::uint64_t(word32()) * bound;
                low = std::uint32_t(m);
            }
        }
        return std::uint32_t(m >> 32);
    }

    // Uniform double in [0, 1).
    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

  private:
    // 32-bit words carved out of 64-bit engine outputs, so two bounded
    // draws cost one engine call.
    std::uint32_t word32() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const std::uint64_t v = gen_();
        spare_ = std::uint32_t(v >> 32);
        have_spare_ = true;
        return std::uint32_t(v);
    }

    std::mt19937_64 gen_;
    std::uint32_t spare_ = 0;
    bool have_spare_ = false;
};

} // namespace rcga
