#pragma once

#include "ttb/tracer.hpp"

#include <optional>

namespace ttb::tiling {

// Double-precision Cartesian engine: the literal Snell k = -1 dynamics in
// the plane. Serves as the independent reference implementation for the
// exact arc tracer and as the geometry source for rendering.
struct PlanarState {
    TileIndex tile;
    double x, y;
    double dx, dy;
};

class PlanarTracer {
public:
    explicit PlanarTracer(TriangleShape shape) : shape_(std::move(shape)) {}

    const TriangleShape& shape() const { return shape_; }

    // advance through the next edge; nullopt when the crossing falls within
    // the vertex guard (treated as a singular hit by the caller)
    std::optional<char> step(PlanarState& s, double vertex_guard = 1e-9) const;

    // planar start matching trace(shape, tau, p0) from the base tile
    PlanarState start_from_cet(const Scalar& tau, const CirclePoint& p0) const;

private:
    TriangleShape shape_;
};

// planar crossing points of an exact trajectory record (h0 = 0 gauge)
std::vector<std::pair<double, double>> planar_points(const TrajectoryRecord& rec,
                                                     const TriangleShape& shape);

// Chord parameter recovered from the trajectory geometry: the oriented
// distance d of every segment line to its tile's circumcenter (over R) is a
// single invariant; returns tau = arccos(d) / pi. Throws when the segments
// disagree beyond the tolerance.
double tau_of(const TrajectoryRecord& rec, const TriangleShape& shape, double tol = 1e-7);

} // namespace ttb::tiling
