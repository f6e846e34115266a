#include "ttb/lattice.hpp"

#include <stdexcept>

namespace ttb::tiling {

TileIndex neighbor(const TileIndex& t, char letter) {
    if (t.orient > 0) {
        switch (letter) {
            case 'a': return {t.m, t.n, -1};
            case 'b': return {t.m - 1, t.n, -1};
            case 'c': return {t.m, t.n - 1, -1};
        }
    } else {
        switch (letter) {
            case 'a': return {t.m, t.n, +1};
            case 'b': return {t.m + 1, t.n, +1};
            case 'c': return {t.m, t.n + 1, +1};
        }
    }
    throw std::invalid_argument("edge letter must be a, b or c");
}

std::array<VertexIndex, 3> tile_vertices(const TileIndex& t) {
    if (t.orient > 0)
        return {VertexIndex{t.m, t.n}, VertexIndex{t.m + 1, t.n}, VertexIndex{t.m, t.n + 1}};
    return {VertexIndex{t.m + 1, t.n + 1}, VertexIndex{t.m, t.n + 1}, VertexIndex{t.m + 1, t.n}};
}

EdgeIndex edge_of(const TileIndex& t, char letter) {
    if (t.orient > 0) return {t.m, t.n, letter};
    TileIndex p = neighbor(t, letter);
    return {p.m, p.n, letter};
}

std::array<VertexIndex, 2> edge_endpoints(const EdgeIndex& e) {
    switch (e.letter) {
        case 'a': return {VertexIndex{e.m + 1, e.n}, VertexIndex{e.m, e.n + 1}};
        case 'b': return {VertexIndex{e.m, e.n + 1}, VertexIndex{e.m, e.n}};
        case 'c': return {VertexIndex{e.m, e.n}, VertexIndex{e.m + 1, e.n}};
    }
    throw std::invalid_argument("edge letter must be a, b or c");
}

std::array<TileIndex, 6> tiles_around_vertex(const VertexIndex& v) {
    return {TileIndex{v.m, v.n, +1},         TileIndex{v.m - 1, v.n, -1}, TileIndex{v.m - 1, v.n, +1},
            TileIndex{v.m - 1, v.n - 1, -1}, TileIndex{v.m, v.n - 1, +1}, TileIndex{v.m, v.n - 1, -1}};
}

TileIndex opposite_tile(const TileIndex& t, const VertexIndex& v) {
    auto ring = tiles_around_vertex(v);
    for (int i = 0; i < 6; ++i)
        if (ring[i] == t) return ring[(i + 3) % 6];
    throw std::invalid_argument("tile does not contain the vertex");
}

char corner_of(const TileIndex& t, const VertexIndex& v) {
    auto vs = tile_vertices(t);
    if (vs[0] == v) return 'A';
    if (vs[1] == v) return 'B';
    if (vs[2] == v) return 'C';
    return 0;
}

std::array<EdgeIndex, 6> vertex_edges(const VertexIndex& v) {
    return {EdgeIndex{v.m, v.n, 'c'},     EdgeIndex{v.m - 1, v.n, 'c'}, EdgeIndex{v.m, v.n, 'b'},
            EdgeIndex{v.m, v.n - 1, 'b'}, EdgeIndex{v.m - 1, v.n, 'a'}, EdgeIndex{v.m, v.n - 1, 'a'}};
}

TriangleShape::TriangleShape(std::array<Scalar, 3> l) : l_(std::move(l)) {
    Scalar sum = l_[0] + l_[1] + l_[2];
    for (const auto& v : l_)
        if (v.sign() <= 0) throw std::invalid_argument("angles must be positive");
    if (sum.is_exact() && sum != Scalar(1)) throw std::invalid_argument("angles must sum to pi");
    double alpha = l_[0].to_double() * M_PI;
    double beta = l_[1].to_double() * M_PI;
    double gamma = l_[2].to_double() * M_PI;
    // A = (0,0), B = (1,0); C across angle alpha at A with |AC| = sin(beta)/sin(gamma)
    double b_len = std::sin(beta) / std::sin(gamma);
    cx_ = b_len * std::cos(alpha);
    cy_ = b_len * std::sin(alpha);
    // circumcenter: equidistant from A, B, C
    ox_ = 0.5;
    oy_ = (cx_ * cx_ + cy_ * cy_ - cx_) / (2 * cy_);
    r_ = std::sqrt(ox_ * ox_ + oy_ * oy_);
}

TriangleShape TriangleShape::from_degrees(const Rat& alpha, const Rat& beta, const Rat& gamma) {
    return TriangleShape({Scalar(Rat(alpha / 180)), Scalar(Rat(beta / 180)), Scalar(Rat(gamma / 180))});
}

TriangleShape TriangleShape::tribonacci() {
    Scalar a = Scalar::tribonacci_a();
    return TriangleShape({(Scalar(1) - a) / 2, (Scalar(1) - a * a) / 2, (Scalar(1) - a * a * a) / 2});
}

bool TriangleShape::is_acute() const {
    Scalar half = Scalar::rational(1, 2);
    return l_[0] < half && l_[1] < half && l_[2] < half;
}

bool TriangleShape::is_obtuse() const {
    Scalar half = Scalar::rational(1, 2);
    return l_[0] > half || l_[1] > half || l_[2] > half;
}

std::pair<double, double> TriangleShape::vertex_xy(const VertexIndex& v) const {
    double ux = 1, uy = 0, vx = cx_, vy = cy_;
    return {v.m * ux + v.n * vx, v.m * uy + v.n * vy};
}

std::array<std::pair<double, double>, 3> TriangleShape::tile_xy(const TileIndex& t) const {
    auto vs = tile_vertices(t);
    return {vertex_xy(vs[0]), vertex_xy(vs[1]), vertex_xy(vs[2])};
}

std::pair<double, double> TriangleShape::barycenter(const TileIndex& t) const {
    auto xy = tile_xy(t);
    return {(xy[0].first + xy[1].first + xy[2].first) / 3,
            (xy[0].second + xy[1].second + xy[2].second) / 3};
}

double TriangleShape::corner_turns(char corner) const {
    double x, y;
    switch (corner) {
        case 'A': x = 0; y = 0; break;
        case 'B': x = 1; y = 0; break;
        case 'C': x = cx_; y = cy_; break;
        default: throw std::invalid_argument("corner must be A, B or C");
    }
    double t = std::atan2(y - oy_, x - ox_) / (2 * M_PI);
    return t - std::floor(t);
}

} // namespace ttb::tiling
