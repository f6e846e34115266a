#include "ttb/circle_maps.hpp"
#include "ttb/words.hpp"

#include <doctest.h>

using namespace ttb;
using namespace ttb::cet;

namespace {
Scalar r(long n, long d) { return Scalar::rational(n, d); }
CETMap rational_map(std::initializer_list<std::pair<long, long>> ls, std::pair<long, long> tau) {
    std::vector<Scalar> v;
    for (auto [n, d] : ls) v.push_back(r(n, d));
    return CETMap(v, r(tau.first, tau.second));
}
} // namespace

TEST_CASE("map construction validates") {
    CHECK_NOTHROW(rational_map({{1, 3}, {1, 3}, {1, 3}}, {1, 2}));
    CHECK_THROWS(rational_map({{1, 2}, {1, 4}, {1, 2}}, {0, 1})); // sum 5/4
    CHECK_THROWS(rational_map({{1, 2}, {1, 2}}, {0, 1}));         // fewer than 3
    CHECK_THROWS(CETMap({r(1, 2), r(-1, 4), r(3, 4)}, r(0, 1)));
    // the Tribonacci map
    Scalar a = Scalar::tribonacci_a();
    Scalar half = r(1, 2);
    CETMap trib({(Scalar(1) - a) / 2, (Scalar(1) - a * a) / 2, (Scalar(1) - a * a * a) / 2}, half);
    CHECK(trib.n() == 3);
}

TEST_CASE("evaluation formula") {
    CETMap m = rational_map({{1, 2}, {1, 4}, {1, 4}}, {0, 1});
    CHECK(m.eval(CirclePoint(r(1, 10))).value() == r(2, 5));
    // tau = 0 makes F an involution
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        CirclePoint p(rng.unit_rat(997));
        if (m.interval_of(p) == 0) continue;
        CHECK(m.eval(m.eval(p)) == p);
    }
    CHECK_THROWS_AS(m.eval(CirclePoint(r(1, 2))), singular_point);
}

TEST_CASE("equilateral 6-cycle") {
    CETMap m = rational_map({{1, 3}, {1, 3}, {1, 3}}, {1, 2});
    CirclePoint p(r(1, 12));
    CirclePoint p1 = m.eval(p);
    CHECK(p1.value() == r(3, 4));
    CirclePoint p2 = m.eval(p1);
    CHECK(p2.value() == r(5, 12));
    CirclePoint p3 = m.eval(p2);
    CHECK(p3 == p);
    auto o = orbit(m, p, 6);
    CHECK(o.letters == "acbacb");
    CHECK(!o.hit_endpoint);
    auto pp = detect_point_period(m, p, 100);
    CHECK(pp.found);
    CHECK(pp.period == 3);
}

TEST_CASE("point period examples") {
    CETMap inv = rational_map({{1, 2}, {3, 10}, {1, 5}}, {0, 1});
    auto pp = detect_point_period(inv, CirclePoint(r(1, 7)), 10);
    CHECK(pp.found);
    CHECK(pp.period == 2);
    // Tribonacci map is minimal: no period within a reasonable cap
    Scalar a = Scalar::tribonacci_a();
    CETMap trib({(Scalar(1) - a) / 2, (Scalar(1) - a * a) / 2, (Scalar(1) - a * a * a) / 2}, r(1, 2));
    auto none = detect_point_period(trib, CirclePoint(r(1, 17)), 3000);
    CHECK(!none.found);
    CHECK(!none.hit_endpoint);
}

TEST_CASE("symmetry conjugate") {
    CETMap m = rational_map({{5, 10}, {3, 10}, {2, 10}}, {3, 10});
    CETMap c = m.conjugate();
    CHECK(c.length(1) == r(2, 10));
    CHECK(c.length(3) == r(5, 10));
    CHECK(c.tau() == r(7, 10));
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        CirclePoint p(rng.unit_rat(1009));
        CirclePoint ip(Scalar(1) - p.value());
        if (m.interval_of(p) == 0 || c.interval_of(ip) == 0) continue;
        CHECK(m.eval(p).value() == CirclePoint(Scalar(1) - c.eval(ip).value()).value());
    }
}

TEST_CASE("piecewise isometry, orientation reversing") {
    CETMap m = rational_map({{2, 5}, {7, 20}, {1, 4}}, {9, 20});
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        CirclePoint p(rng.unit_rat(499)), q(rng.unit_rat(499));
        int jp = m.interval_of(p), jq = m.interval_of(q);
        if (!jp || jp != jq || p == q) continue;
        CirclePoint fp = m.eval(p), fq = m.eval(q);
        // flip isometry on each branch: F(p) - F(q) = q - p (mod 1)
        CHECK(fq.ccw_to(fp) == p.ccw_to(q));
        CHECK(fp.ccw_to(fq) == q.ccw_to(p));
    }
}

TEST_CASE("square decomposition lengths and displacements") {
    // r = 0: |I_j^+| = |I_j^-| = x_j / 2
    CETMap m0 = rational_map({{2, 5}, {7, 20}, {1, 4}}, {1, 2});
    auto d0 = square_decomposition(m0);
    CHECK(d0.r == Scalar(0));
    for (const auto& piece : d0.pieces) {
        Scalar expect = d0.x[piece.j - 1] / 2;
        CHECK(piece.length == expect);
    }
    // r = 1/20: |I_1^+-| = 0.1 +- 0.05
    CETMap m1 = rational_map({{2, 5}, {7, 20}, {1, 4}}, {9, 20});
    auto d1 = square_decomposition(m1);
    for (const auto& piece : d1.pieces) {
        Scalar expect = d1.x[piece.j - 1] / 2 + Scalar(piece.sgn) * d1.r;
        CHECK(piece.length == expect);
    }
    // pieces partition the circle
    Scalar total(0);
    for (const auto& piece : d1.pieces) total += piece.length;
    CHECK(total == Scalar(1));
    // displacement oracle: T = F^2
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        long a1 = 20 + long(rng.below(15)), a2 = 18 + long(rng.below(12));
        long a3 = 72 - a1 - a2;
        if (a3 <= 0) continue;
        std::vector<Scalar> ls{r(a1, 72), r(a2, 72), r(a3, 72)};
        Scalar mx = ls[0];
        for (auto& l : ls)
            if (l > mx) mx = l;
        Scalar tau = (mx + Scalar(1) - mx * 2 / 3) / 2;
        if (!(tau > mx) || !(tau < Scalar(1) - mx)) continue;
        CETMap m(ls, tau);
        auto dec = square_decomposition(m);
        for (int i = 0; i < 50; ++i) {
            CirclePoint p(rng.unit_rat(1497));
            if (m.interval_of(p) == 0) continue;
            CirclePoint fp = m.eval(p);
            if (m.interval_of(fp) == 0) continue;
            CirclePoint t = m.eval(fp);
            const auto& piece = dec.piece_of(p);
            CHECK(p.ccw_to(t) == CirclePoint(Scalar(0) + piece.displacement).value());
        }
    }
}

TEST_CASE("interval periods: integrable regimes") {
    long cap = 20000;
    auto m1 = rational_map({{5, 10}, {3, 10}, {2, 10}}, {3, 20}); // tau <= min l
    auto p1 = interval_periods(m1, cap);
    CHECK(p1.regime == Regime::MinRegime);
    CHECK(p1.complete);
    CHECK(p1.periods == std::set<long>{2, 6});

    auto m2 = rational_map({{5, 10}, {3, 10}, {2, 10}}, {1, 4}); // min < tau <= mid
    auto p2 = interval_periods(m2, cap);
    CHECK(p2.regime == Regime::MidRegime);
    CHECK(p2.formula_n == 1);
    CHECK(p2.complete);
    CHECK(p2.periods == std::set<long>{2, 6, 10});

    // boundary probe: tau exactly 2 * min l degenerates the middle component
    auto mb = rational_map({{5, 10}, {4, 10}, {1, 10}}, {2, 10});
    auto pb = interval_periods(mb, cap);
    CHECK(pb.regime == Regime::MidRegime);
    CHECK(pb.complete);
    CHECK(pb.formula_n == 1); // the (n, n+1] reading
    CHECK(pb.exact_multiple);
    CHECK(pb.periods == integrability_formula_periods(pb));
    CHECK(pb.periods == std::set<long>{2, 10});

    // deeper mid-regime sweep against the formula
    Rng rng(31);
    int swept = 0;
    for (int trial = 0; trial < 120; ++trial) {
        long den = 120;
        long a1 = 45 + long(rng.below(14)), a3 = 8 + long(rng.below(12));
        long a2 = den - a1 - a3;
        if (a2 <= a3 || a1 <= a2) continue;
        long t = a3 + 1 + long(rng.below(a2 - a3));
        auto m = rational_map({{a1, den}, {a2, den}, {a3, den}}, {t, den});
        auto ip = interval_periods(m, cap);
        REQUIRE(ip.regime == Regime::MidRegime);
        if (!ip.complete) continue;
        CHECK(ip.periods == integrability_formula_periods(ip));
        ++swept;
    }
    CHECK(swept >= 20);
}

TEST_CASE("interval periods: rotation regime") {
    auto m = rational_map({{6, 10}, {25, 100}, {15, 100}}, {45, 100});
    auto ip = interval_periods(m, 20000);
    CHECK(ip.regime == Regime::Rotation);
    REQUIRE(ip.kappa.has_value());
    CHECK(*ip.kappa == r(3, 8));
    CHECK(ip.kappa_rational);
    CHECK(ip.complete);
    CHECK(ip.periods.count(2) == 1);
    for (long p : ip.periods) CHECK(p % 2 == 0);

    auto m2 = rational_map({{4, 10}, {7, 20}, {1, 4}}, {9, 20});
    auto ip2 = interval_periods(m2, 20000);
    CHECK(ip2.regime == Regime::Renormalizable);

    // boundary tau = 1 - max l keeps the rotation reading (here kappa = 1/2,
    // which induces 4-periodic intervals)
    auto m3 = rational_map({{52, 60}, {4, 60}, {4, 60}}, {8, 60});
    auto ip3 = interval_periods(m3, 20000);
    CHECK(ip3.regime == Regime::Rotation);
    CHECK(*ip3.kappa == r(1, 2));
    CHECK(ip3.periods == std::set<long>{2, 4});
}

TEST_CASE("interval periods: 4n+2 shape in non-rotation regimes") {
    Rng rng(37);
    int checked = 0;
    for (int trial = 0; trial < 80 && checked < 25; ++trial) {
        long den = 60;
        long a1 = 1 + long(rng.below(den - 2));
        long a2 = 1 + long(rng.below(den - a1 - 1));
        long a3 = den - a1 - a2;
        if (a3 <= 0) continue;
        long t = 1 + long(rng.below(den / 2));
        auto m = rational_map({{a1, den}, {a2, den}, {a3, den}}, {t, den});
        auto ip = interval_periods(m, 40000);
        if (ip.regime == Regime::Renormalizable || ip.regime == Regime::Rotation || !ip.complete) continue;
        ++checked;
        for (long p : ip.periods) CHECK((p == 2 || p % 4 == 2));
    }
    CHECK(checked >= 10);
}

TEST_CASE("first return oracle on a window") {
    CETMap m = rational_map({{1, 3}, {1, 3}, {1, 3}}, {1, 2});
    auto fr = first_return(m, r(1, 3), r(1, 3), CirclePoint(r(5, 12)), 100);
    REQUIRE(fr.has_value());
    CHECK(fr->point == CirclePoint(r(5, 12)));
    CHECK(fr->steps == 3);
}
