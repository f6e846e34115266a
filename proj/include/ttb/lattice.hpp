#pragma once

#include "ttb/scalar.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace ttb::tiling {

// Tiles of the periodic triangle tiling. The positive tile (m, n) has
// corners A = P, B = P + u, C = P + v with P = m u + n v; the negative tile
// (m, n) is its central reflection through the midpoint of side a.
struct TileIndex {
    long m{0}, n{0};
    int orient{+1};

    bool operator==(const TileIndex& o) const { return m == o.m && n == o.n && orient == o.orient; }
    bool operator!=(const TileIndex& o) const { return !(*this == o); }
};

struct VertexIndex {
    long m{0}, n{0};
    bool operator==(const VertexIndex& o) const { return m == o.m && n == o.n; }
    bool operator!=(const VertexIndex& o) const { return !(*this == o); }
    bool operator<(const VertexIndex& o) const { return m != o.m ? m < o.m : n < o.n; }
};

// Every edge bounds exactly one positive tile; (m, n, letter) of that tile
// is the canonical edge id.
struct EdgeIndex {
    long m{0}, n{0};
    char letter{'a'};
    bool operator==(const EdgeIndex& o) const { return m == o.m && n == o.n && letter == o.letter; }
    bool operator<(const EdgeIndex& o) const {
        if (m != o.m) return m < o.m;
        if (n != o.n) return n < o.n;
        return letter < o.letter;
    }
};

TileIndex neighbor(const TileIndex& t, char letter);
std::array<VertexIndex, 3> tile_vertices(const TileIndex& t); // A, B, C corners
EdgeIndex edge_of(const TileIndex& t, char letter);
std::array<VertexIndex, 2> edge_endpoints(const EdgeIndex& e);

// the six tiles around a vertex in rotational order, alternating orientation
std::array<TileIndex, 6> tiles_around_vertex(const VertexIndex& v);
// the tile centrally symmetric to t through v (both must contain v)
TileIndex opposite_tile(const TileIndex& t, const VertexIndex& v);
// corner letter ('A','B','C') of v in t, or 0 if v is not a corner of t
char corner_of(const TileIndex& t, const VertexIndex& v);
// the six lattice edges through v
std::array<EdgeIndex, 6> vertex_edges(const VertexIndex& v);

struct TileHash {
    std::size_t operator()(const TileIndex& t) const {
        std::uint64_t h = std::uint64_t(t.m) * 0x9e3779b97f4a7c15ULL ^ std::uint64_t(t.n) * 0xc2b2ae3d27d4eb4fULL ^
                          std::uint64_t(t.orient + 2);
        return std::size_t(h ^ (h >> 29));
    }
};

struct VertexHash {
    std::size_t operator()(const VertexIndex& v) const {
        std::uint64_t h = std::uint64_t(v.m) * 0x9e3779b97f4a7c15ULL ^ std::uint64_t(v.n) * 0xff51afd7ed558ccdULL;
        return std::size_t(h ^ (h >> 31));
    }
};

// Tile shape: exact angle parameters l_j = angle_j / pi plus a double
// embedding with A at the origin and |AB| = 1.
class TriangleShape {
public:
    explicit TriangleShape(std::array<Scalar, 3> l);
    static TriangleShape from_degrees(const Rat& alpha, const Rat& beta, const Rat& gamma);
    static TriangleShape tribonacci();

    const std::array<Scalar, 3>& l() const { return l_; }
    const Scalar& l(int j) const { return l_.at(j - 1); }
    bool is_acute() const;
    bool is_obtuse() const;

    // double embedding
    double ax() const { return 0; }
    double ay() const { return 0; }
    double bx() const { return 1; }
    double by() const { return 0; }
    double cx() const { return cx_; }
    double cy() const { return cy_; }
    double circum_x() const { return ox_; }
    double circum_y() const { return oy_; }
    double circum_r() const { return r_; }

    std::pair<double, double> vertex_xy(const VertexIndex& v) const;
    std::array<std::pair<double, double>, 3> tile_xy(const TileIndex& t) const; // A, B, C corners
    std::pair<double, double> barycenter(const TileIndex& t) const;
    // angular position (in turns) of a base-tile corner on the circumcircle
    double corner_turns(char corner) const;

private:
    std::array<Scalar, 3> l_;
    double cx_, cy_, ox_, oy_, r_;
};

} // namespace ttb::tiling
