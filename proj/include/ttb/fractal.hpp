#pragma once

#include "ttb/flower.hpp"
#include "ttb/renorm.hpp"

namespace ttb::fractal {

using tiling::ArcState;
using tiling::Flower;
using tiling::TileIndex;
using tiling::TrajectoryRecord;
using tiling::TriangleShape;
using tiling::VertexIndex;

TriangleShape tribonacci_shape();

// The nested flower family of the exceptional parallel foliation: pistils
// v_1, v_3, v_4, ..., with the flower at v_k carrying petals of codes
// w_{k-1}, w_{k-2}, w_{k-3}. Built by the mid-edge recursion.
struct Foliation {
    TriangleShape shape;
    ArcState base;                      // gauge: chord {0, 1/2}
    std::vector<int> levels;            // 1, 3, 4, 5, ... (level 2 is a petal of 3)
    std::vector<VertexIndex> pistils;   // parallel to levels
    std::vector<Scalar> pistil_arcs;    // folded arc of each pistil
    std::vector<Flower> flowers;
};
Foliation build_foliation(int k_max, long bound = 4000);

// Periodic trajectory whose cyclic code is w_j (period 2 T_{j+3}).
TrajectoryRecord w_trajectory(int j, const Foliation& fol);
TrajectoryRecord w_trajectory(int j);

struct ArithmeticOrbit {
    std::vector<std::pair<double, double>> points; // barycenters at even steps
    std::vector<std::pair<long, long>> steps_mn;   // integer step classes
    bool steps_valid{true};                        // all steps in the six-vector set
};
ArithmeticOrbit arithmetic_orbit(const TrajectoryRecord& rec, const TriangleShape& shape);

struct FractalCloud {
    std::vector<std::pair<double, double>> pts;
    std::vector<int> color; // 1..3
};

// Rauzy fractal from the sigma_R fixed word: the 3d ladder projected along
// its Perron direction.
FractalCloud ladder_fractal(std::size_t n);

// letter frequencies of the prefix and the normalized Perron eigenvector
std::array<double, 3> ladder_frequencies(std::size_t n);
std::array<double, 3> perron_frequencies();

// 2x2 rescaling matrix over Q[a] and its exact inverse
struct RescaleMatrix {
    Cubic m11, m12, m21, m22;
    RescaleMatrix inverse() const;
    RescaleMatrix operator*(const RescaleMatrix& o) const;
};
RescaleMatrix rescale_matrix();

struct FlowerLevel {
    int k;
    VertexIndex pistil;
    std::array<long, 3> petal_tiles; // tile counts, largest first (0 when absent)
    FractalCloud cloud;              // normalized petal-region barycenters
};

struct FlowerSequence {
    std::vector<FlowerLevel> levels;            // k = 4..k_max
    std::vector<double> hausdorff_consecutive;  // between aligned consecutive clouds
    std::vector<double> hausdorff_to_ladder;    // against the ladder reference
    bool counts_tribonacci{false};              // petal tile counts follow T_k
    bool union_recurrence{false};               // biggest petal region = union of previous three
};
FlowerSequence rescaled_flower_sequence(int k_max, std::size_t ladder_n = 20000);

// discrete Hausdorff distance between point clouds
double hausdorff_distance(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b);

// log-log slope of the exceptional trajectory's tile displacement over
// n in [n_lo, n_hi]
double drift_exponent(long n_lo, long n_hi);

} // namespace ttb::fractal
