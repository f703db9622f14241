#pragma once

#include <cstdint>

namespace spinlab {

/// Counter-based 64-bit generator.
///
/// The i-th output for key s is
///
///     mix64(s + (i + 1) · 0x9E3779B97F4A7C15)
///
/// where mix64 is the SplitMix64 finalizer
///
///     z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
///     z ^= z >> 27;  z *= 0x94D049BB133111EB;
///     z ^= z >> 31;
///
/// (all arithmetic mod 2^64). Uniform doubles take the top 53 bits:
/// (u >> 11) · 2^-53. Normals use Box–Muller on two consecutive uniforms,
/// the first mapped to (0,1] via 1 - u; the sine branch is discarded so each
/// normal consumes exactly two outputs. Any stream position can be reached
/// directly with `at(i)`.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static std::uint64_t mix64(std::uint64_t z) noexcept;

    std::uint64_t at(std::uint64_t index) const noexcept;
    std::uint64_t next_u64() noexcept { return at(counter_++); }

    /// Uniform on [0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    /// Exponential with unit rate.
    double exponential() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Seed of an independent sub-stream, e.g. one per Monte Carlo repetition.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept { return seed ^ index; }

} // namespace spinlab
