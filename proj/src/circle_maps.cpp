#include "ttb/circle_maps.hpp"

#include <algorithm>
#include <map>

namespace ttb::cet {

CETMap::CETMap(std::vector<Scalar> lengths, const Scalar& tau) : len_(std::move(lengths)) {
    if (len_.size() < 3) throw std::invalid_argument("a CET map needs at least 3 intervals");
    Scalar sum(0);
    for (const auto& l : len_) {
        if (l.sign() <= 0) throw std::invalid_argument("interval lengths must be positive");
        sum += l;
    }
    Scalar one(1);
    if (sum.is_exact()) {
        if (sum != one) throw std::invalid_argument("interval lengths must sum to 1");
    } else {
        Scalar diff = sum - one;
        if (diff.sign() < 0) diff = -diff;
        if (diff > sum.epsilon()) throw std::invalid_argument("interval lengths must sum to 1 within tolerance");
    }
    s_.reserve(len_.size() + 1);
    s_.push_back(Scalar(0));
    Scalar acc(0);
    for (const auto& l : len_) {
        acc += l;
        s_.push_back(acc);
    }
    tau_ = CirclePoint(tau).value();
}

Scalar CETMap::min_length() const {
    Scalar m = len_[0];
    for (const auto& l : len_)
        if (l < m) m = l;
    return m;
}

Scalar CETMap::max_length() const {
    Scalar m = len_[0];
    for (const auto& l : len_)
        if (l > m) m = l;
    return m;
}

Scalar CETMap::mid_length() const {
    if (n() != 3) throw std::logic_error("mid_length needs n = 3");
    std::vector<Scalar> v = len_;
    std::sort(v.begin(), v.end());
    return v[1];
}

int CETMap::argmin_length() const {
    int j = 1;
    for (int k = 2; k <= n(); ++k)
        if (length(k) < length(j)) j = k;
    for (int k = 1; k <= n(); ++k)
        if (k != j && length(k) == length(j)) return 0;
    return j;
}

int CETMap::argmax_length() const {
    int j = 1;
    for (int k = 2; k <= n(); ++k)
        if (length(k) > length(j)) j = k;
    for (int k = 1; k <= n(); ++k)
        if (k != j && length(k) == length(j)) return 0;
    return j;
}

int CETMap::interval_of(const CirclePoint& p) const {
    const Scalar& v = p.value();
    for (int j = 1; j <= n(); ++j) {
        int cl = v.cmp(s_[j - 1]), cr = v.cmp(s_[j]);
        if (cl == 0 || cr == 0) return 0;
        if (cl > 0 && cr < 0) return j;
    }
    return 0; // v == 0 case falls out of the loop via cl == 0 at j = 1
}

char CETMap::letter_of(const CirclePoint& p) const {
    int j = interval_of(p);
    return j ? char('a' + j - 1) : '?';
}

CirclePoint CETMap::eval(const CirclePoint& p) const {
    auto r = try_eval(p);
    if (!r) throw singular_point();
    return r->first;
}

std::optional<std::pair<CirclePoint, int>> CETMap::try_eval(const CirclePoint& p) const {
    int j = interval_of(p);
    if (!j) return std::nullopt;
    return std::make_pair(CirclePoint(s_[j - 1] + s_[j] - p.value() + tau_), j);
}

std::optional<CirclePoint> CETMap::try_eval_inverse(const CirclePoint& p) const {
    CirclePoint q(p.value() - tau_);
    int j = interval_of(q);
    if (!j) return std::nullopt;
    return CirclePoint(s_[j - 1] + s_[j] - q.value());
}

CirclePoint CETMap::eval_inverse(const CirclePoint& p) const {
    auto r = try_eval_inverse(p);
    if (!r) throw singular_point();
    return *r;
}

CETMap CETMap::conjugate() const {
    if (n() != 3) throw std::logic_error("symmetry conjugate needs n = 3");
    return CETMap({len_[2], len_[1], len_[0]}, Scalar(1) - tau_);
}

SymbolicOrbit orbit(const CETMap& map, const CirclePoint& start, long steps, bool keep_points) {
    if (steps < 1) throw std::invalid_argument("orbit needs steps >= 1");
    SymbolicOrbit o;
    o.start = start;
    CirclePoint p = start;
    for (long k = 0; k < steps; ++k) {
        auto r = map.try_eval(p);
        if (!r) {
            o.hit_endpoint = true;
            break;
        }
        o.letters.push_back(char('a' + r->second - 1));
        if (keep_points) o.points.push_back(p);
        p = r->first;
    }
    return o;
}

SquareDecomposition square_decomposition(const CETMap& map) {
    if (map.n() != 3) throw std::invalid_argument("square decomposition needs n = 3");
    const Scalar &l1 = map.length(1), &l2 = map.length(2), &l3 = map.length(3);
    const Scalar& tau = map.tau();
    Scalar maxl = map.max_length();
    Scalar one(1);
    if (!(tau > maxl) || !(tau < one - maxl))
        throw std::invalid_argument("square decomposition needs max l < tau < 1 - max l");
    Scalar half = Scalar(1) / Scalar(2);
    SquareDecomposition d;
    d.r = half - tau;
    d.x = {one - 2 * l1, one - 2 * l2, one - 2 * l3};
    auto add = [&](Scalar left, Scalar right, int j, int sgn) {
        SquareDecomposition::Piece p;
        p.left = left;
        p.length = right - left;
        p.j = j;
        p.sgn = sgn;
        p.displacement = sgn > 0 ? -map.length(j) : map.length(j);
        d.pieces.push_back(std::move(p));
    };
    // circle order starting at 0, endpoints from the F^2 continuity analysis
    add(Scalar(0), tau - l2, 2, -1);
    add(tau - l2, l1, 3, +1);
    add(l1, l1 + tau - l3, 3, -1);
    add(l1 + tau - l3, l1 + l2, 1, +1);
    add(l1 + l2, l2 + tau, 1, -1);
    add(l2 + tau, one, 2, +1);
    return d;
}

const SquareDecomposition::Piece& SquareDecomposition::piece_of(const CirclePoint& p) const {
    const Scalar& v = p.value();
    for (const auto& piece : pieces) {
        int cl = v.cmp(piece.left), cr = v.cmp(piece.left + piece.length);
        if (cl == 0 || cr == 0) throw singular_point();
        if (cl > 0 && cr < 0) return piece;
    }
    throw singular_point(); // v == 0
}

PointPeriod detect_point_period(const CETMap& map, const CirclePoint& start, long cap) {
    PointPeriod res;
    CirclePoint p = start;
    Scalar eps = start.value().epsilon();
    for (long k = 1; k <= cap; ++k) {
        auto r = map.try_eval(p);
        if (!r) {
            res.hit_endpoint = true;
            return res;
        }
        p = r->first;
        bool equal;
        if (eps.sign() == 0) {
            equal = p == start;
        } else {
            Scalar d = start.ccw_to(p);
            if (d > Scalar(1) - d) d = Scalar(1) - d;
            equal = d <= eps;
        }
        if (equal) {
            res.found = true;
            res.period = k;
            return res;
        }
    }
    return res;
}

namespace {

struct ScalarLess {
    bool operator()(const Scalar& a, const Scalar& b) const { return a < b; }
};

// breakpoint set closed under F^{-1}; empty optional when the cap is hit
std::optional<std::vector<Scalar>> breakpoint_closure(const CETMap& map, long cap) {
    std::map<Scalar, bool, ScalarLess> seen;
    std::vector<Scalar> work;
    for (int j = 0; j < map.n(); ++j) {
        seen.emplace(map.endpoint(j), true);
        work.push_back(map.endpoint(j));
    }
    while (!work.empty()) {
        if (long(seen.size()) > cap) return std::nullopt;
        Scalar q = work.back();
        work.pop_back();
        auto pre = map.try_eval_inverse(CirclePoint(q));
        if (!pre) continue; // preimage is itself a singularity, already present
        const Scalar& v = pre->value();
        if (seen.emplace(v, true).second) work.push_back(v);
    }
    std::vector<Scalar> pts;
    pts.reserve(seen.size());
    for (auto& kv : seen) pts.push_back(kv.first);
    return pts;
}

std::set<long> periods_from_closure(const CETMap& map, const std::vector<Scalar>& bks) {
    std::size_t m = bks.size();
    std::vector<Scalar> mids(m);
    Scalar one(1), two(2);
    for (std::size_t i = 0; i < m; ++i) {
        const Scalar& u = bks[i];
        Scalar v = (i + 1 < m) ? bks[i + 1] : bks[0] + one;
        mids[i] = CirclePoint((u + v) / two).value();
    }
    auto piece_of = [&](const CirclePoint& p) -> std::size_t {
        const Scalar& v = p.value();
        std::size_t lo = 0, hi = m;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (v < bks[mid])
                hi = mid;
            else
                lo = mid;
        }
        return lo;
    };
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = piece_of(CirclePoint(map.eval(CirclePoint(mids[i]))));
    std::set<long> periods;
    std::vector<bool> done(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (done[i]) continue;
        long cyc = 0;
        std::size_t j = i;
        do {
            done[j] = true;
            j = perm[j];
            ++cyc;
        } while (j != i);
        periods.insert(cyc % 2 == 0 ? cyc : 2 * cyc);
    }
    return periods;
}

} // namespace

IntervalPeriods interval_periods(const CETMap& map, long cap) {
    if (map.n() != 3) throw std::invalid_argument("interval_periods needs n = 3");
    IntervalPeriods out;
    Scalar tau = map.tau();
    Scalar one(1), half = Scalar(1) / Scalar(2);
    if (tau > half) {
        // symmetry reduction: P_F is invariant under the orientation conjugacy
        CETMap conj = map.conjugate();
        out = interval_periods(conj, cap);
        return out;
    }
    Scalar mn = map.min_length(), md = map.mid_length(), mx = map.max_length();
    if (tau.sign() == 0) {
        out.regime = Regime::TauZero;
        out.periods = {2};
        out.complete = true;
        return out;
    }
    // The boundary tau = 1 - max l keeps the rotation structure (with the
    // rational-kappa periods it induces), so it classifies as rotation.
    if (mx > half && tau >= one - mx) {
        out.regime = Regime::Rotation;
        int m = map.argmax_length();
        int j2 = (m % 3) + 1, j3 = (j2 % 3) + 1; // the two smaller, cyclically after m
        out.kappa = map.length(j3) / (map.length(j2) + map.length(j3));
        out.kappa_rational = out.kappa->backend() == Backend::Rational ||
                             (out.kappa->backend() == Backend::Cubic && out.kappa->cubic().is_rational());
        if (out.kappa_rational) {
            auto bks = breakpoint_closure(map, cap);
            if (bks) {
                out.periods = periods_from_closure(map, *bks);
                out.complete = true;
            }
        } else {
            out.periods = {2};
            out.complete = false;
        }
        return out;
    }
    if (tau > mx) {
        out.regime = Regime::Renormalizable;
        return out;
    }
    out.regime = tau <= mn ? Regime::MinRegime : (tau <= md ? Regime::MidRegime : Regime::MaxRegime);
    if (out.regime == Regime::MidRegime) {
        // n with tau / min l in (n, n+1]. At an exact multiple the period set
        // degenerates to {2, 4n+6}: the 4n+2 component vanishes.
        Scalar q = tau / mn;
        Int f = q.floor();
        long nn = f.convert_to<long>();
        if (q.is_exact() && q == Scalar(Rat(f))) {
            --nn;
            out.exact_multiple = true;
        }
        out.formula_n = int(nn);
    }
    auto bks = breakpoint_closure(map, cap);
    if (bks) {
        out.periods = periods_from_closure(map, *bks);
        out.complete = true;
    }
    return out;
}

std::set<long> integrability_formula_periods(const IntervalPeriods& ip) {
    switch (ip.regime) {
        case Regime::TauZero: return {2};
        case Regime::MinRegime: return {2, 6};
        case Regime::MidRegime: {
            long n = ip.formula_n;
            if (ip.exact_multiple) return {2, 4 * n + 6};
            return {2, 4 * n + 2, 4 * n + 6};
        }
        default: return {};
    }
}

std::optional<FirstReturn> first_return(const CETMap& map, const Scalar& win_left,
                                        const Scalar& win_len, const CirclePoint& p, long cap) {
    CirclePoint left(win_left);
    auto inside = [&](const CirclePoint& q) {
        Scalar d = left.ccw_to(q);
        return d.sign() > 0 && d < win_len;
    };
    FirstReturn fr;
    CirclePoint q = p;
    for (long k = 1; k <= cap; ++k) {
        auto r = map.try_eval(q);
        if (!r) return std::nullopt;
        fr.letters.push_back(char('a' + r->second - 1));
        q = r->first;
        if (inside(q)) {
            fr.point = q;
            fr.steps = k;
            return fr;
        }
    }
    return std::nullopt;
}

} // namespace ttb::cet
