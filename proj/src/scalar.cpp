#include "ttb/scalar.hpp"

#include <mutex>
#include <sstream>

namespace ttb {

namespace {

// shared enclosure of the root a, refined on demand
struct RootEnclosure {
    std::mutex mu;
    Rat lo{Rat(1, 2)};
    Rat hi{Rat(3, 4)};
    unsigned bits{2};

    static int fsign(const Rat& t) {
        Rat f = t * t * t + t * t + t - 1;
        return f.sign();
    }

    std::pair<Rat, Rat> get(unsigned want_bits) {
        std::lock_guard<std::mutex> g(mu);
        while (bits < want_bits) {
            Rat mid = (lo + hi) / 2;
            if (fsign(mid) < 0)
                lo = mid;
            else
                hi = mid;
            ++bits;
        }
        return {lo, hi};
    }
};

RootEnclosure& root_enclosure() {
    static RootEnclosure e;
    return e;
}

} // namespace

std::pair<Rat, Rat> tribonacci_root_enclosure(unsigned bits) { return root_enclosure().get(bits); }

int Cubic::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return c0.sign();
    for (unsigned bits = 32;; bits *= 2) {
        auto [lo, hi] = tribonacci_root_enclosure(bits);
        Rat lo2 = lo * lo, hi2 = hi * hi;
        Rat vmin = c0, vmax = c0;
        if (c1 >= 0) {
            vmin += c1 * lo;
            vmax += c1 * hi;
        } else {
            vmin += c1 * hi;
            vmax += c1 * lo;
        }
        if (c2 >= 0) {
            vmin += c2 * lo2;
            vmax += c2 * hi2;
        } else {
            vmin += c2 * hi2;
            vmax += c2 * lo2;
        }
        if (vmin > 0) return 1;
        if (vmax < 0) return -1;
        if (bits > (1u << 20)) throw std::runtime_error("cubic sign refinement ran away");
    }
}

Cubic Cubic::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero cubic");
    // columns of the multiplication-by-x matrix in basis 1, a, a^2
    // x*1 = (c0, c1, c2), x*a = (c2, c0-c2, c1-c2), x*a^2 = (c1-c2, 2c2-c1, c0-c1)
    Rat m[3][3] = {
        {c0, c2, c1 - c2},
        {c1, c0 - c2, 2 * c2 - c1},
        {c2, c1 - c2, c0 - c1},
    };
    Rat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det == 0) throw std::domain_error("singular cubic (should not happen: minimal polynomial is irreducible)");
    // first column of the inverse = M^{-1} e0 via Cramer
    Rat i0 = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    Rat i1 = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]) / det;
    Rat i2 = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    return Cubic(i0, i1, i2);
}

Int Cubic::floor() const {
    if (is_rational()) return rat_floor(c0);
    double approx = to_double();
    Int n(static_cast<long>(std::floor(approx)));
    // verify exactly, adjust if the double estimate sat on a boundary
    auto ge = [&](const Int& k) { return (*this - Cubic(Rat(k))).sign() >= 0; };
    while (!ge(n)) --n;
    while (ge(n + 1)) ++n;
    return n;
}

double Cubic::to_double() const {
    auto [lo, hi] = tribonacci_root_enclosure(64);
    double a = ((lo + hi) / 2).convert_to<double>();
    return c0.convert_to<double>() + c1.convert_to<double>() * a + c2.convert_to<double>() * a * a;
}

std::string Cubic::str() const {
    std::ostringstream os;
    os << c0.str() << " + " << c1.str() << "*a + " << c2.str() << "*a^2";
    return os.str();
}

std::pair<Scalar, Scalar> Scalar::unify(const Scalar& x, const Scalar& y) {
    if (x.backend() == y.backend()) return {x, y};
    if (x.backend() == Backend::Rational && y.backend() == Backend::Cubic)
        return {Scalar(Cubic(x.rat())), y};
    if (x.backend() == Backend::Cubic && y.backend() == Backend::Rational)
        return {x, Scalar(Cubic(y.rat()))};
    throw backend_mismatch();
}

Scalar Scalar::operator-() const {
    switch (backend()) {
        case Backend::Rational: return Scalar(Rat(-rat()));
        case Backend::Cubic: return Scalar(-cubic());
        default: return Scalar(BigFloat(-flt()));
    }
}

#define TTB_SCALAR_BINOP(op)                                                  \
    Scalar Scalar::operator op(const Scalar& o) const {                      \
        auto [x, y] = unify(*this, o);                                        \
        switch (x.backend()) {                                                \
            case Backend::Rational: return Scalar(Rat(x.rat() op y.rat()));  \
            case Backend::Cubic: return Scalar(x.cubic() op y.cubic());      \
            default: return Scalar(BigFloat(x.flt() op y.flt()));            \
        }                                                                     \
    }

TTB_SCALAR_BINOP(+)
TTB_SCALAR_BINOP(-)
TTB_SCALAR_BINOP(*)

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.sign() == 0) throw std::domain_error("scalar division by zero");
    auto [x, y] = unify(*this, o);
    switch (x.backend()) {
        case Backend::Rational: return Scalar(Rat(x.rat() / y.rat()));
        case Backend::Cubic: return Scalar(x.cubic() / y.cubic());
        default: return Scalar(BigFloat(x.flt() / y.flt()));
    }
}

int Scalar::sign() const {
    switch (backend()) {
        case Backend::Rational: return rat().sign();
        case Backend::Cubic: return cubic().sign();
        default: return flt().sign();
    }
}

Int Scalar::floor() const {
    switch (backend()) {
        case Backend::Rational: return rat_floor(rat());
        case Backend::Cubic: return cubic().floor();
        default: {
            BigFloat f = boost::multiprecision::floor(flt());
            return f.convert_to<Int>();
        }
    }
}

double Scalar::to_double() const {
    switch (backend()) {
        case Backend::Rational: return rat().convert_to<double>();
        case Backend::Cubic: return cubic().to_double();
        default: return flt().convert_to<double>();
    }
}

std::string Scalar::str() const {
    switch (backend()) {
        case Backend::Rational: return rat().str();
        case Backend::Cubic: return cubic().str();
        default: return flt().str();
    }
}

Scalar Scalar::epsilon() const {
    if (is_exact()) return Scalar(0);
    unsigned prec = flt().precision() * 3322 / 1000; // decimal digits -> bits
    BigFloat e = boost::multiprecision::ldexp(BigFloat(1), -int(prec / 2));
    return Scalar(e);
}

std::string Scalar::key() const {
    switch (backend()) {
        case Backend::Rational: return rat().str();
        case Backend::Cubic: {
            const Cubic& c = cubic();
            return c.c0.str() + "|" + c.c1.str() + "|" + c.c2.str();
        }
        default: return flt().str();
    }
}

bool in_open_ccw_arc(const CirclePoint& x, const CirclePoint& from, const Scalar& span) {
    Scalar d = from.ccw_to(x);
    return d.sign() > 0 && d < span;
}

std::pair<BigFloat, BigFloat> tribonacci_root(unsigned precision_bits) {
    if (precision_bits < 32) throw std::invalid_argument("precision_bits must be >= 32");
    auto [lo, hi] = tribonacci_root_enclosure(precision_bits + 2);
    unsigned digits = precision_bits * 1000 / 3322 + 4;
    BigFloat flo(0, digits), fhi(0, digits);
    mpfr_set_q(flo.backend().data(), lo.backend().data(), MPFR_RNDD);
    mpfr_set_q(fhi.backend().data(), hi.backend().data(), MPFR_RNDU);
    return {flo, fhi};
}

} // namespace ttb
