#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace zetalaw {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based sub-seed derivation.
///
/// The sub-seed for stream (s1, s2, ...) under master seed m is obtained by
/// folding each counter into mix64(m): h <- mix64(h ^ (s_i + golden)). Any
/// module's stream can therefore be regenerated in isolation from the master
/// seed and its stream coordinates, independent of thread count.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream);

/// Seeded generator with platform-independent transforms.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// implements uniform, normal and integer draws directly instead of relying on
/// the implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal (Marsaglia polar method).
    double normal();

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    /// Random permutation of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n);

    /// `k` distinct elements of `pool`, in draw order (partial Fisher-Yates).
    std::vector<std::size_t> sample(std::vector<std::size_t> pool, std::size_t k);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace zetalaw
