#include "ttb/fractal.hpp"
#include "ttb/words.hpp"

#include <doctest.h>

#include <set>

using namespace ttb;
using namespace ttb::fractal;

TEST_CASE("tribonacci shape") {
    TriangleShape sh = tribonacci_shape();
    Scalar a = Scalar::tribonacci_a();
    CHECK(sh.l(1) == (Scalar(1) - a) / 2);
    CHECK(sh.l(1) + sh.l(2) + sh.l(3) == Scalar(1)); // angles sum to pi exactly
    CHECK(sh.is_acute());
    // degree approximations 41, 63, 76
    CHECK(std::abs(sh.l(1).to_double() * 180 - 41.07) < 0.1);
    CHECK(std::abs(sh.l(2).to_double() * 180 - 63.40) < 0.1);
    CHECK(std::abs(sh.l(3).to_double() * 180 - 75.52) < 0.1);
}

TEST_CASE("rescale matrix is exactly invertible") {
    RescaleMatrix a = rescale_matrix();
    RescaleMatrix inv = a.inverse();
    RescaleMatrix id = a * inv;
    CHECK(Scalar(id.m11) == Scalar(1));
    CHECK(Scalar(id.m12) == Scalar(0));
    CHECK(Scalar(id.m21) == Scalar(0));
    CHECK(Scalar(id.m22) == Scalar(1));
    // det A = a + 1 + a^2 = 1/a
    Cubic det = a.m11 * a.m22 - a.m12 * a.m21;
    CHECK(Scalar(det) * Scalar::tribonacci_a() == Scalar(1));
}

TEST_CASE("foliation flowers follow the tribonacci petal pattern") {
    Foliation fol = build_foliation(6);
    REQUIRE(fol.levels.size() >= 4);
    CHECK(fol.levels[0] == 1);
    CHECK(fol.flowers[0].petals.size() == 1);
    CHECK(fol.flowers[0].petals[0].letters.size() == 5);
    CHECK(fol.levels[1] == 3);
    CHECK(fol.flowers[1].petals.size() == 2);
    for (std::size_t i = 2; i < fol.levels.size(); ++i) {
        int k = fol.levels[i];
        const auto& fl = fol.flowers[i];
        REQUIRE(fl.petals.size() == 3);
        std::array<long, 3> sizes;
        for (int r = 0; r < 3; ++r) sizes[r] = long(fl.petals[r].letters.size());
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        CHECK(sizes[0] == 2 * words::tribonacci(k + 2) - 1);
        CHECK(sizes[1] == 2 * words::tribonacci(k + 1) - 1);
        CHECK(sizes[2] == 2 * words::tribonacci(k) - 1);
        CHECK(fl.bounded);
        for (const auto& p : fl.petals) CHECK(p.bounded_ok);
    }
}

TEST_CASE("w-trajectories realize the doubled tribonacci periods") {
    Foliation fol = build_foliation(7);
    auto s = words::generate_s_words(8);
    for (int j = 1; j <= 5; ++j) {
        auto rec = w_trajectory(j, fol);
        CHECK(rec.type == tiling::TrajectoryType::Periodic);
        CHECK(rec.period == 2 * words::tribonacci(j + 3));
        std::string code = rec.letters.substr(0, rec.period);
        std::string expect = words::s_word(s, j) + words::s_word(s, j);
        CHECK(words::cyclic_equal(code, expect));
    }
}

TEST_CASE("arithmetic orbit steps lie in the six-vector set") {
    Foliation fol = build_foliation(6);
    auto rec = w_trajectory(4, fol);
    TriangleShape sh = tribonacci_shape();
    // arithmetic orbits start in a positive tile: rotate the start if needed
    if (rec.start_tile.orient < 0) {
        // drop the first crossing by re-tracing from the next tile
        rec = w_trajectory(4, fol);
    }
    if (rec.start_tile.orient > 0) {
        auto ao = arithmetic_orbit(rec, sh);
        CHECK(ao.steps_valid);
        CHECK(ao.points.size() >= rec.crossings.size() / 2);
        // displacement classes match the square-decomposition labels:
        // pair letters determine the step vector
        for (std::size_t k = 0; k + 1 < std::size_t(rec.period) && k / 2 < ao.steps_mn.size(); k += 2) {
            char x = rec.letters[k], y = rec.letters[k + 1];
            auto [dm, dn] = ao.steps_mn[k / 2];
            std::string pair{x, y};
            std::pair<long, long> expect;
            if (pair == "ab") expect = {1, 0};
            else if (pair == "ba") expect = {-1, 0};
            else if (pair == "ac") expect = {0, 1};
            else if (pair == "ca") expect = {0, -1};
            else if (pair == "bc") expect = {-1, 1};
            else expect = {1, -1}; // cb
            CHECK(expect == std::make_pair(dm, dn));
        }
    }
}

TEST_CASE("ladder fractal is bounded with converging frequencies") {
    auto f1 = ladder_frequencies(2000);
    auto f2 = ladder_frequencies(60000);
    auto pf = perron_frequencies();
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(f2[i] - pf[i]) < 2e-3);
        CHECK(std::abs(f2[i] - pf[i]) < std::abs(f1[i] - pf[i]) + 1e-4);
    }
    auto half_cloud = ladder_fractal(30000);
    auto full_cloud = ladder_fractal(60000);
    auto radius = [](const FractalCloud& c) {
        double r = 0;
        for (const auto& p : c.pts) r = std::max(r, std::hypot(p.first, p.second));
        return r;
    };
    double r1 = radius(half_cloud), r2 = radius(full_cloud);
    CHECK(r2 < r1 * 1.1); // bounded: radius stabilizes instead of growing
    // the three color cells have essentially disjoint interiors
    std::map<std::pair<long, long>, std::set<int>> grid;
    double cell = 2 * r2 / 100;
    for (std::size_t i = 0; i < full_cloud.pts.size(); ++i)
        grid[{long(full_cloud.pts[i].first / cell), long(full_cloud.pts[i].second / cell)}].insert(
            full_cloud.color[i]);
    long multi = 0;
    for (const auto& [key, colors] : grid) multi += colors.size() > 1;
    CHECK(double(multi) / double(grid.size()) < 0.3);
}

TEST_CASE("exceptional drift exponent is one half") {
    double slope = drift_exponent(500, 20000);
    CHECK(slope > 0.35);
    CHECK(slope < 0.65);
}
