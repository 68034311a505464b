#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

namespace unmix {

/// Deterministic random stream.
///
/// The engine is std::mt19937_64 (bit-stable across platforms by the
/// standard), but all variate transforms are implemented here because the
/// standard <random> distributions are implementation-defined and would break
/// the byte-identical reproducibility contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1], safe as a log() argument.
    double uniform_open() { return 1.0 - uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal via Box-Muller; the second draw of each pair is cached.
    double normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape > 0, including < 1.
    double gamma(double shape);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// splitmix64 mixing step (Steele, Lea, Vigna).
std::uint64_t splitmix64(std::uint64_t x);

/// Folds words into a base seed: h = splitmix64(h ^ w) for each w.
/// Used to derive independent per-trial streams in the bench harness.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> words);

/// Stable 64-bit hash of a string (FNV-1a), for seeding from names.
std::uint64_t hash_string(const std::string& s);

/// Bit pattern of a double, for seed derivation from real-valued parameters.
std::uint64_t double_bits(double x);

} // namespace unmix
