#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace ttb {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_floor(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int f;
    mpz_fdiv_q(f.backend().data(), n.backend().data(), d.backend().data());
    return f;
}

inline Rat rat_from_string(const std::string& s) { return Rat(s); }

inline std::string rat_to_string(const Rat& q) { return q.str(); }

// Portable deterministic PRNG (splitmix64); std distributions are not
// reproducible across standard libraries, so sampling goes through this.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    // uniform rational in (0,1) with denominator exactly `den`
    Rat unit_rat(std::uint64_t den) {
        std::uint64_t num = 1 + below(den - 1);
        return Rat(Int(num), Int(den));
    }
    double unit() { return double(next() >> 11) * 0x1.0p-53; }
};

} // namespace ttb
