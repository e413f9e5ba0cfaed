#pragma once

#include <cstdint>

namespace jrfl {

// Counter-based generator: every draw is a pure function of
// (seed, trial, coordinate), so trials are reproducible in isolation.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    std::uint64_t at(std::uint64_t coord) const { return mix(mix(mix(seed_) ^ trial_) ^ coord); }
    std::uint64_t next() { return at(counter_++); }
    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
    bool coin(unsigned numerator, unsigned denominator) { return below(denominator) < numerator; }
    std::uint64_t trial() const { return trial_; }

private:
    std::uint64_t seed_, trial_;
    std::uint64_t counter_ = 0;
};

}  // namespace jrfl
