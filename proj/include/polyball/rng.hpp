#pragma once
// Deterministic splittable random source. Every random draw in the library
// and CLI flows from one seed through this generator, so a fixed seed gives
// byte-identical output on every platform. The <random> distributions are
// avoided on purpose: their streams are implementation-defined.

#include <complex>
#include <cstdint>
#include <string_view>

namespace polyball {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derive an independent substream. Mixing a label keeps sibling streams
    // decorrelated no matter how many draws each one makes.
    Rng split(std::string_view label) const;
    Rng split(std::uint64_t salt) const;

    std::uint64_t next_u64();

    double uniform();                         // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);          // inclusive bounds
    double gaussian();                        // standard normal
    std::complex<double> complex_gaussian();  // E|z|^2 = 1

private:
    std::uint64_t state_;
};

} // namespace polyball
