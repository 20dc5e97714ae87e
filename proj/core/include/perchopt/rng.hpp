#pragma once

#include <cstdint>
#include <random>

namespace perchopt {

/// All stochastic components draw from explicitly seeded mt19937_64 streams;
/// nothing touches global RNG state.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit states, so distinct inputs give
/// distinct outputs.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed for run `run_index` of an experiment with the given base seed.
/// Pairwise distinct for any number of runs (odd increment + bijective mix).
constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return mix64(base_seed + (run_index + 1) * 0x9E3779B97F4A7C15ull);
}

/// Independent substream of a run's seed (e.g. the noise stream of a noisy
/// objective), tagged so it never collides with the sampling stream.
constexpr std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::uint64_t tag) {
    return mix64(run_seed ^ mix64(tag + 0x9E3779B97F4A7C15ull));
}

} // namespace perchopt
