#include "spinlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace spinlab {

std::uint64_t CounterRng::mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t CounterRng::at(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::exponential() noexcept { return -std::log(1.0 - uniform()); }

} // namespace spinlab
