#include "ttb/planar.hpp"

#include <cmath>
#include <stdexcept>

namespace ttb::tiling {

namespace {

struct P2 {
    double x, y;
};

P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
double cross(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
double dot(P2 a, P2 b) { return a.x * b.x + a.y * b.y; }

} // namespace

std::optional<char> PlanarTracer::step(PlanarState& s, double vertex_guard) const {
    auto xy = shape_.tile_xy(s.tile);
    P2 v[3] = {{xy[0].first, xy[0].second}, {xy[1].first, xy[1].second}, {xy[2].first, xy[2].second}};
    P2 pos{s.x, s.y}, dir{s.dx, s.dy};
    // sides a = BC, b = CA, c = AB
    const int ends[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    char best = 0;
    double best_t = 1e300;
    P2 best_pt{0, 0}, best_tan{1, 0};
    for (int side = 0; side < 3; ++side) {
        P2 p = v[ends[side][0]], q = v[ends[side][1]];
        P2 e = q - p;
        double den = cross(dir, e);
        if (std::abs(den) < 1e-15) continue;
        // pos + t dir = p + u e
        double t = cross(p - pos, e) / den;
        double u = cross(pos - p, dir) / -den;
        if (t <= 1e-12 || u < -1e-12 || u > 1 + 1e-12) continue;
        if (u < vertex_guard || u > 1 - vertex_guard) return std::nullopt;
        if (t < best_t) {
            best_t = t;
            best = char('a' + side);
            best_pt = {pos.x + t * dir.x, pos.y + t * dir.y};
            double elen = std::sqrt(dot(e, e));
            best_tan = {e.x / elen, e.y / elen};
        }
    }
    if (!best) return std::nullopt;
    // Snell with k = -1: tangential component negated, normal preserved
    double dt = dot(dir, best_tan);
    s.dx = dir.x - 2 * dt * best_tan.x;
    s.dy = dir.y - 2 * dt * best_tan.y;
    s.x = best_pt.x;
    s.y = best_pt.y;
    s.tile = neighbor(s.tile, best);
    return best;
}

PlanarState PlanarTracer::start_from_cet(const Scalar& tau, const CirclePoint& p0) const {
    // gauge: arc coordinates use h0 = 0 and nuB(base) = tau - p0; real angles
    // differ by g = corner_turns('B') - nuB
    double tau_d = tau.to_double();
    double nu_b = tau_d - p0.value().to_double();
    double g = shape_.corner_turns('B') - nu_b;
    double ox = shape_.circum_x(), oy = shape_.circum_y(), r = shape_.circum_r();
    auto on_circle = [&](double turns) {
        return P2{ox + r * std::cos(2 * M_PI * turns), oy + r * std::sin(2 * M_PI * turns)};
    };
    P2 h0 = on_circle(g), h1 = on_circle(tau_d + g);
    // clip the chord with the base tile and start from the middle of the clip
    auto xy = shape_.tile_xy(TileIndex{0, 0, +1});
    P2 v[3] = {{xy[0].first, xy[0].second}, {xy[1].first, xy[1].second}, {xy[2].first, xy[2].second}};
    P2 d = h1 - h0;
    double lo = 0.0, hi = 1.0;
    for (int side = 0; side < 3; ++side) {
        P2 p = v[side], q = v[(side + 1) % 3];
        // inside = left of p->q for the ccw triangle
        P2 e = q - p;
        double f0 = cross(e, h0 - p);
        double f1 = cross(e, h1 - p);
        if (f0 < 0 && f1 < 0) throw std::domain_error("chord misses the base tile");
        if (f0 >= 0 && f1 >= 0) continue;
        double t = f0 / (f0 - f1);
        if (f0 < 0)
            lo = std::max(lo, t);
        else
            hi = std::min(hi, t);
    }
    if (!(lo < hi)) throw std::domain_error("chord misses the base tile");
    double tm = (lo + hi) / 2;
    double ln = std::sqrt(dot(d, d));
    return PlanarState{TileIndex{0, 0, +1}, h0.x + tm * d.x, h0.y + tm * d.y, d.x / ln, d.y / ln};
}

std::vector<std::pair<double, double>> planar_points(const TrajectoryRecord& rec,
                                                     const TriangleShape& shape) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(rec.crossings.size());
    double tau_d = rec.tau.to_double();
    auto on_unit = [](double turns) { return P2{std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns)}; };
    P2 H0 = on_unit(rec.h0_turns), H1 = on_unit(rec.h0_turns + tau_d);
    for (std::size_t k = 0; k < rec.crossings.size(); ++k) {
        const Crossing& cr = rec.crossings[k];
        P2 Ep = on_unit(cr.arc_p), Eq = on_unit(cr.arc_q);
        // intersection parameter along the folded edge Ep -> Eq
        P2 e = Eq - Ep, h = H1 - H0;
        double denom = cross(e, h);
        double t = denom == 0 ? 0.5 : cross(H0 - Ep, h) / denom;
        TileIndex from = rec.tile_at(k);
        auto vs = tile_vertices(from);
        int pi, qi;
        switch (cr.letter) {
            case 'a': pi = 1; qi = 2; break;
            case 'b': pi = 2; qi = 0; break;
            default: pi = 0; qi = 1; break;
        }
        auto [px, py] = shape.vertex_xy(vs[pi]);
        auto [qx, qy] = shape.vertex_xy(vs[qi]);
        pts.emplace_back(px + t * (qx - px), py + t * (qy - py));
    }
    return pts;
}

double tau_of(const TrajectoryRecord& rec, const TriangleShape& shape, double tol) {
    auto pts = planar_points(rec, shape);
    if (pts.size() < 2) throw std::invalid_argument("tau_of needs at least 2 crossings");
    double ox0 = shape.circum_x(), oy0 = shape.circum_y(), r = shape.circum_r();
    std::optional<double> dist;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        TileIndex t = rec.tile_at(k + 1); // tile between crossings k and k+1
        // circumcenter: translate the base one for positive tiles, reflect it
        // through the shared side-a midpoint for negative ones
        auto base = shape.vertex_xy(VertexIndex{t.m, t.n});
        double cx, cy;
        if (t.orient > 0) {
            cx = base.first + ox0;
            cy = base.second + oy0;
        } else {
            auto v = tile_vertices(t);
            auto b0 = shape.vertex_xy(v[1]);
            auto c0 = shape.vertex_xy(v[2]);
            double mx = (b0.first + c0.first) / 2, my = (b0.second + c0.second) / 2;
            cx = 2 * mx - (base.first + ox0);
            cy = 2 * my - (base.second + oy0);
        }
        double ux = pts[k + 1].first - pts[k].first, uy = pts[k + 1].second - pts[k].second;
        double ln = std::hypot(ux, uy);
        if (ln < 1e-14) continue;
        double signed_d = (ux * (cy - pts[k].second) - uy * (cx - pts[k].first)) / ln / r;
        if (!dist) {
            dist = signed_d;
        } else if (std::abs(*dist - signed_d) > tol) {
            throw std::runtime_error("chord-distance invariant violated across segments");
        }
    }
    if (!dist) throw std::invalid_argument("tau_of: degenerate trajectory");
    double d = std::min(1.0, std::max(-1.0, *dist));
    return std::acos(d) / M_PI;
}

} // namespace ttb::tiling
