#pragma once

#include <cstdint>
#include <random>

#include "pvss/bigint.hpp"

namespace pvss {

// Deterministic seeded randomness source. mt19937_64 output is pinned by the
// C++ standard, so a seed reproduces the same draws on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_word() { return gen_(); }

    // Exactly `bits` random bits (leading bit not forced).
    BigInt bits(unsigned bits) {
        BigInt v = 0;
        for (unsigned shift = 0; shift < bits; shift += 64) v |= BigInt(gen_()) << shift;
        return v & ((BigInt(1) << bits) - 1);
    }

    // Uniform in [0, bound) by rejection sampling; no modulo bias.
    BigInt below(const BigInt& bound) {
        if (bound <= 0) throw ParameterError("rng bound must be positive");
        const unsigned width = static_cast<unsigned>(bit_length(bound));
        for (;;) {
            BigInt v = bits(width);
            if (v < bound) return v;
        }
    }

    // Independent child stream; keyed off this stream's next word.
    SeededRng fork() { return SeededRng(gen_()); }

private:
    std::mt19937_64 gen_;
};

}  // namespace pvss
