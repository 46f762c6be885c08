#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "monokit/pvector.hpp"

namespace monokit {

/// Deterministic RNG wrapper; every stochastic routine takes an explicit
/// seed so runs are reproducible bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    Vec uniform_vec(std::size_t n, double lo, double hi) {
        Vec v(n);
        for (auto& c : v) c = uniform(lo, hi);
        return v;
    }

    /// Point on the l^p sphere of the given radius.
    Vec sphere_point(std::size_t n, double radius, double p) {
        Vec v(n);
        double nrm = 0.0;
        do {
            for (auto& c : v) c = normal();
            nrm = pnorm_raw(v, p);
        } while (nrm < 1e-12);
        for (auto& c : v) c *= radius / nrm;
        return v;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace monokit
