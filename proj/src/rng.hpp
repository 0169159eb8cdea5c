#pragma once

// Deterministic random and quasi-random sources. The standard distributions
// are avoided on purpose: their output sequences are implementation-defined,
// and the reports must be byte-stable for a fixed seed.

#include <cstdint>
#include <random>
#include <vector>

namespace bsq {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0,1) with 53 random bits
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    // uniform integer in [a, b] inclusive
    long long uniform_int(long long a, long long b) {
        return a + static_cast<long long>(gen_() % static_cast<std::uint64_t>(b - a + 1));
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

// Radical-inverse (Halton) points for the moduli shift integral. A seed picks
// a fixed offset into the sequence so different runs can decorrelate while
// staying reproducible.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

class Halton {
  public:
    Halton(int dim, std::uint64_t seed) : dim_(dim), next_(1 + seed % 4096) {}

    // next point in [0,1)^dim
    std::vector<double> operator()() {
        static const std::uint64_t bases[6] = {2, 3, 5, 7, 11, 13};
        std::vector<double> p(static_cast<size_t>(dim_));
        for (int j = 0; j < dim_; ++j) p[static_cast<size_t>(j)] = radical_inverse(next_, bases[j % 6]);
        ++next_;
        return p;
    }

  private:
    int dim_;
    std::uint64_t next_;
};

}  // namespace bsq
