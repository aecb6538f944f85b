#pragma once

#include <cstdint>
#include <random>

namespace entperc {

// SplitMix64 step; used only to expand seeds into well-mixed engine states.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Independent engine for stream `index` of a master seed. Sampling jobs are
// keyed by (master_seed, sample_index) so results do not depend on how the
// samples are distributed over threads.
inline std::mt19937_64 make_stream_rng(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    std::uint64_t b = splitmix64(s);
    std::uint64_t c = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    return std::mt19937_64(seq);
}

// Bernoulli(p) via a fixed 64-bit threshold compare; exact at p=0 and p=1.
class BernoulliBits {
  public:
    explicit BernoulliBits(double p) {
        if (p <= 0.0) {
            all_closed_ = true;
        } else if (p >= 1.0) {
            all_open_ = true;
        } else {
            threshold_ = static_cast<std::uint64_t>(p * 18446744073709551616.0L);
        }
    }

    bool draw(std::mt19937_64& rng) const {
        if (all_open_) return true;
        if (all_closed_) return false;
        return rng() < threshold_;
    }

  private:
    std::uint64_t threshold_ = 0;
    bool all_open_ = false;
    bool all_closed_ = false;
};

}  // namespace entperc
