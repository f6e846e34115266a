#pragma once

#include "ttb/tracer.hpp"

#include <map>
#include <vector>

namespace ttb::tiling {

// Point-in-polygon for a lattice vertex against a closed trajectory given by
// its crossed-edge multiset: parity of the crossings along a lattice ray
// from v. The ray avoids the (optional) excluded vertex.
bool vertex_inside(const std::map<EdgeIndex, long>& counts, const VertexIndex& v, long box_lo_m,
                   long box_hi_m, long box_lo_n, long box_hi_n,
                   const VertexIndex* avoid = nullptr);

// The subgraph of the tiling's vertex-edge graph contained in the region a
// periodic trajectory encloses.
struct EnclosedGraph {
    std::vector<VertexIndex> vertices;
    std::vector<std::pair<VertexIndex, VertexIndex>> edges;
    long crossed_inside_edges{0}; // edges with both ends inside but crossed by the trajectory
    bool connected{false};
    bool is_tree{false};
};
EnclosedGraph enclosed_graph(const TrajectoryRecord& rec);

// Side-of-chord two-coloring of the vertices near a trajectory, with the
// induced color-class graphs on the vertices of crossed edges.
struct ColoredGraphs {
    struct G {
        std::vector<VertexIndex> vertices;
        std::vector<std::pair<VertexIndex, VertexIndex>> edges;
        long components{0};
        long independent_cycles{0}; // |E| - |V| + components
        bool forest() const { return independent_cycles == 0; }
        bool tree() const { return components == 1 && independent_cycles == 0; }
    };
    std::map<VertexIndex, int> color; // over the window
    G g0, g1;
    bool vertex_on_chord{false};
    int inside_color{-1}; // periodic case: color class matching the enclosed side
};
ColoredGraphs vertex_coloring(const TrajectoryRecord& rec, const TriangleShape& shape);

// Prop-style scan: no tile may have all three corners on the far side while
// the apexes of its three edge neighbors sit on the near side. Returns the
// number of violations in the record's window (expected 0).
long surrounded_tile_violations(const TrajectoryRecord& rec, const TriangleShape& shape);

} // namespace ttb::tiling
