#pragma once

#include "ttb/graph.hpp"

namespace ttb::tiling {

// A flower: all separatrix segments through one vertex for one chord.
struct Petal {
    std::string letters;          // sides crossed around the loop
    std::vector<TileIndex> tiles; // tiles passed, in order (first and last touch the pistil)
    std::map<EdgeIndex, long> crossed;
    bool bounded_ok{false};       // passes two tiles neighboring in an edge at the
                                  // pistil and encloses that edge
    EdgeIndex witness_edge{};
};

struct Flower {
    VertexIndex pistil;
    Scalar tau;      // span of the flower's chord
    int s{0};        // separatrix segments at the pistil
    std::vector<Petal> petals;
    int unbounded_rays{0};
    bool bounded{false};
    bool multi_singular{false};
    std::vector<VertexIndex> other_singularities;
};

// Flower of the chord {F(v), F(v) + tau} in the parallel foliation of that
// direction. `bound` caps the lattice radius a separatrix may wander before
// it is declared unbounded.
Flower flower(const TriangleShape& shape, const Scalar& tau, const VertexIndex& v, long bound);

// Flower at v inside an existing folded picture: the chord passes through
// the folded position of v and has the foliation constant of (h0 + h1).
// `base` fixes the gauge (a folded reference tile).
Flower flower_in_foliation(const TriangleShape& shape, const ArcState& base, const CirclePoint& h0,
                           const CirclePoint& h1, const VertexIndex& v, long bound);

} // namespace ttb::tiling
