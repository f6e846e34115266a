#pragma once

#include "ttb/circle_maps.hpp"
#include "ttb/lattice.hpp"

#include <unordered_map>
#include <variant>
#include <vector>

namespace ttb::tiling {

// Folded state of one tile: index plus the arc of its B corner on the
// circumcircle. Positive tiles read A, B, C counterclockwise with
// nuA = nuB - l3 and nuC = nuB + l1; negative tiles are mirrored.
struct ArcState {
    TileIndex tile;
    CirclePoint nuB;
};

// Exact trajectory engine in folded arc coordinates. The trajectory is the
// pullback of the fixed chord with endpoint arcs h0 and h1 = h0 + tau;
// positive tiles travel toward h1, negative tiles toward h0. Crossing a side
// reflects the corner arcs through the folded edge, which is an exact affine
// operation on arcs, so the whole simulation stays in the scalar field.
class ArcTracer {
public:
    ArcTracer(TriangleShape shape, CirclePoint h0, Scalar tau);

    const TriangleShape& shape() const { return shape_; }
    const CirclePoint& chord_h0() const { return h0_; }
    const CirclePoint& chord_h1() const { return h1_; }
    const Scalar& tau() const { return tau_; }

    CirclePoint nuA(const ArcState& s) const;
    CirclePoint nuC(const ArcState& s) const;
    CirclePoint corner_arc(const ArcState& s, char corner) const;

    struct Hit {
        char corner;
        VertexIndex vertex;
    };
    struct Step {
        char letter;
    };
    // advance to the next tile (mutating s), or report the corner the chord
    // terminates at
    std::variant<Step, Hit> advance(ArcState& s) const;

    // the CET coordinate whose circle-map orbit spells the crossing letters
    CirclePoint cet_point(const ArcState& s) const;
    ArcState state_from_cet(const CirclePoint& p, const TileIndex& tile) const;

    // does the chord pass through the folded tile's interior? CET states
    // whose chord misses the tile have no billiard trajectory.
    bool chord_crosses(const ArcState& s) const;

    cet::CETMap map() const;

private:
    TriangleShape shape_;
    CirclePoint h0_, h1_;
    Scalar tau_;
};

enum class TrajectoryType { Periodic, DriftPeriodic, EscapingAtCap, SingularHit };

struct Crossing {
    char letter;
    TileIndex to;
    // folded arcs of the crossed edge's endpoints, for planar reconstruction
    double arc_p, arc_q;
};

struct TrajectoryRecord {
    std::array<Scalar, 3> l;
    Scalar tau;
    double h0_turns{0}; // chord anchor used by the tracer (gauge for rendering)
    CirclePoint start_p;
    TileIndex start_tile;
    std::string letters;
    std::vector<Crossing> crossings;
    TrajectoryType type{TrajectoryType::EscapingAtCap};
    long period{0};
    long drift_m{0}, drift_n{0};     // tile translation per period (drift-periodic)
    VertexIndex singular_vertex{};   // SingularHit
    long singular_at{-1};            // crossing count before the hit

    TileIndex tile_at(std::size_t k) const; // tile before crossing k
};

std::string trajectory_type_name(TrajectoryType t);

// Trace the trajectory of the CET coordinate p0 started in `tile`.
TrajectoryRecord trace(const TriangleShape& shape, const Scalar& tau, const CirclePoint& p0,
                       long max_crossings, TileIndex tile = TileIndex{0, 0, +1});

// Trace from an explicit folded state under an existing tracer gauge.
TrajectoryRecord trace_with(const ArcTracer& tracer, const ArcState& start, long max_crossings);

// The crossed-edge multiset of one period (or of the whole record when not
// periodic).
std::map<EdgeIndex, long> crossing_counts(const TrajectoryRecord& r);

// Folded arcs for a patch of tiles within the given lattice radius of a
// center tile; used by colorings and flowers. Path-independence of the
// folding makes the vertex arcs well-defined.
struct FoldPatch {
    std::unordered_map<TileIndex, CirclePoint, TileHash> tile_nuB;
    std::map<VertexIndex, CirclePoint> vertex_arc;
};
FoldPatch fold_patch(const ArcTracer& tracer, const ArcState& center, long radius);

// Fold a single target tile by walking a lattice path from the base state.
ArcState fold_tile(const ArcTracer& tracer, const ArcState& base, const TileIndex& target);

} // namespace ttb::tiling
