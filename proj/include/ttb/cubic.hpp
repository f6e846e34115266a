#pragma once

#include "ttb/rational.hpp"

#include <array>
#include <stdexcept>

namespace ttb {

// Element of Q[a] where a is the real root of t^3 + t^2 + t - 1 in (0,1).
// Stored as c0 + c1*a + c2*a^2; products are reduced with a^3 = 1 - a - a^2.
struct Cubic {
    Rat c0, c1, c2;

    Cubic() = default;
    Cubic(Rat v) : c0(std::move(v)) {}
    Cubic(Rat v0, Rat v1, Rat v2) : c0(std::move(v0)), c1(std::move(v1)), c2(std::move(v2)) {}

    static Cubic root() { return Cubic(Rat(0), Rat(1), Rat(0)); }

    bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
    bool is_rational() const { return c1 == 0 && c2 == 0; }

    Cubic operator-() const { return Cubic(-c0, -c1, -c2); }
    Cubic operator+(const Cubic& o) const { return Cubic(c0 + o.c0, c1 + o.c1, c2 + o.c2); }
    Cubic operator-(const Cubic& o) const { return Cubic(c0 - o.c0, c1 - o.c1, c2 - o.c2); }

    Cubic operator*(const Cubic& o) const {
        // plain polynomial product, then t^3 = 1 - t - t^2 and t^4 = 2t - 1
        Rat e0 = c0 * o.c0;
        Rat e1 = c0 * o.c1 + c1 * o.c0;
        Rat e2 = c0 * o.c2 + c1 * o.c1 + c2 * o.c0;
        Rat e3 = c1 * o.c2 + c2 * o.c1;
        Rat e4 = c2 * o.c2;
        return Cubic(e0 + e3 - e4, e1 - e3 + 2 * e4, e2 - e3);
    }

    Cubic inverse() const;
    Cubic operator/(const Cubic& o) const { return *this * o.inverse(); }

    bool operator==(const Cubic& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }

    // -1, 0, +1 against the real embedding; exact (enclosure refinement).
    int sign() const;
    int cmp(const Cubic& o) const { return (*this - o).sign(); }
    bool operator<(const Cubic& o) const { return cmp(o) < 0; }

    Int floor() const;
    double to_double() const;

    std::string str() const;
};

// Rational enclosure [lo, hi] of the root a, at least `bits` wide refinement.
std::pair<Rat, Rat> tribonacci_root_enclosure(unsigned bits);

} // namespace ttb
