#pragma once

#include "ttb/cubic.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <compare>
#include <stdexcept>
#include <variant>

namespace ttb {

using BigFloat = boost::multiprecision::mpfr_float;

enum class Backend { Rational, Cubic, Float };

struct backend_mismatch : std::domain_error {
    backend_mismatch() : std::domain_error("mixed-backend scalar arithmetic") {}
};

// Exact or high-precision number with a runtime backend tag. Rational values
// promote into the cubic field; every other mix is an error. Immutable in
// spirit: all operations return fresh values.
class Scalar {
public:
    Scalar() : v_(Rat(0)) {}
    Scalar(int n) : v_(Rat(n)) {}
    Scalar(Rat q) : v_(std::move(q)) {}
    Scalar(Cubic c) : v_(std::move(c)) {}
    Scalar(BigFloat f) : v_(std::move(f)) {}

    static Scalar rational(long num, long den) { return Scalar(Rat(Int(num), Int(den))); }
    static Scalar tribonacci_a() { return Scalar(Cubic::root()); }

    Backend backend() const {
        if (std::holds_alternative<Rat>(v_)) return Backend::Rational;
        if (std::holds_alternative<Cubic>(v_)) return Backend::Cubic;
        return Backend::Float;
    }

    const Rat& rat() const { return std::get<Rat>(v_); }
    const Cubic& cubic() const { return std::get<Cubic>(v_); }
    const BigFloat& flt() const { return std::get<BigFloat>(v_); }

    bool is_exact() const { return backend() != Backend::Float; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    int sign() const;
    int cmp(const Scalar& o) const { return (*this - o).sign(); }
    bool operator==(const Scalar& o) const { return cmp(o) == 0; }
    bool operator!=(const Scalar& o) const { return cmp(o) != 0; }
    bool operator<(const Scalar& o) const { return cmp(o) < 0; }
    bool operator<=(const Scalar& o) const { return cmp(o) <= 0; }
    bool operator>(const Scalar& o) const { return cmp(o) > 0; }
    bool operator>=(const Scalar& o) const { return cmp(o) >= 0; }

    bool is_zero() const { return sign() == 0; }

    Int floor() const;
    double to_double() const;
    std::string str() const;

    // Tolerance for geometric predicates: 0 for exact backends,
    // 2^(-prec/2) for the float backend.
    Scalar epsilon() const;

    // structural key for hashing orbit states (exact backends only)
    std::string key() const;

private:
    std::variant<Rat, Cubic, BigFloat> v_;

    // lift to a common backend, promoting Rational into Cubic when mixed
    static std::pair<Scalar, Scalar> unify(const Scalar& x, const Scalar& y);
};

inline Scalar operator+(int n, const Scalar& s) { return Scalar(n) + s; }
inline Scalar operator-(int n, const Scalar& s) { return Scalar(n) - s; }
inline Scalar operator*(int n, const Scalar& s) { return Scalar(n) * s; }

// Point of the unit circle R/Z, stored reduced into [0,1).
class CirclePoint {
public:
    CirclePoint() : v_(Scalar(0)) {}
    explicit CirclePoint(const Scalar& x) : v_(reduce(x)) {}

    const Scalar& value() const { return v_; }

    CirclePoint operator+(const Scalar& d) const { return CirclePoint(v_ + d); }
    CirclePoint operator-(const Scalar& d) const { return CirclePoint(v_ - d); }

    // counterclockwise arc distance from *this to q, in [0,1)
    Scalar ccw_to(const CirclePoint& q) const { return reduce(q.v_ - v_); }

    bool operator==(const CirclePoint& o) const { return v_ == o.v_; }
    bool operator!=(const CirclePoint& o) const { return v_ != o.v_; }

    static Scalar reduce(const Scalar& x) {
        Int n = x.floor();
        switch (x.backend()) {
            case Backend::Rational: return x - Scalar(Rat(n));
            case Backend::Cubic: return x - Scalar(Cubic(Rat(n)));
            default: return x - Scalar(BigFloat(n.str()));
        }
    }

private:
    Scalar v_;
};

// x in the open ccw arc (from, from+span)? All args circle points.
bool in_open_ccw_arc(const CirclePoint& x, const CirclePoint& from, const Scalar& span);

// Enclosure [lo, hi] of the tribonacci root with hi-lo <= 2^(1-bits),
// returned at `bits` working precision (outward-rounded conversion).
std::pair<BigFloat, BigFloat> tribonacci_root(unsigned precision_bits);

} // namespace ttb
