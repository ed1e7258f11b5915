#include "polyball/rng.hpp"

#include <cmath>

namespace polyball {
namespace {

// SplitMix64 step: passes BigCrush, two multiplies and three xors per draw.
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// FNV-1a, used only to hash split labels into salts.
std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t Rng::next_u64() {
    state_ += kGamma;
    return mix(state_);
}

Rng Rng::split(std::uint64_t salt) const {
    return Rng(mix(state_ ^ mix(salt + kGamma)));
}

Rng Rng::split(std::string_view label) const {
    return split(hash_label(label));
}

double Rng::uniform() {
    // 53 high bits scaled into [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Modulo bias is below 2^-50 for the spans used here (all tiny).
    return lo + static_cast<int>(next_u64() % span);
}

double Rng::gaussian() {
    // Box-Muller, first branch only; keeps the draw count per call fixed.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

std::complex<double> Rng::complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    double r = std::sqrt(-std::log(u1));  // E r^2 = 1 split over two parts
    double t = 6.283185307179586477 * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

} // namespace polyball
