#pragma once

#include <cstdint>
#include <random>

#include "uur/common.hpp"

namespace uur {

/// Derive an independent substream seed from a master seed and a stream
/// index (splitmix64 finalizer over an offset counter). Used so that
/// per-trial streams agree between serial and parallel runs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded random source for all sampling in the library. No global state;
/// every sampling operation takes a seed or an Rng explicitly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double gaussian() { return normal_(gen_); }
    double uniform() { return unif_(gen_); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
    }

    Complex gaussian_complex() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    /// Matrix with independent standard complex Gaussian entries.
    CMatrix ginibre(int rows, int cols) {
        CMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = gaussian_complex();
        return m;
    }

    CVector gaussian_vector(int d) {
        CVector v(d);
        for (int i = 0; i < d; ++i) v(i) = gaussian_complex();
        return v;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace uur
