#pragma once

#include "ttb/circle_maps.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ttb::renorm {

struct tie_in_minimum : std::domain_error {
    tie_in_minimum() : std::domain_error("subtractive step undefined: tied minimum") {}
};

using Triple = std::array<Scalar, 3>;

// (l1, l2, l3, tau) with the tau <= 1/2 symmetry reduction
struct ParamVector {
    Triple l;
    Scalar tau;

    ParamVector(Triple ls, Scalar t);
    Scalar x(int j) const { return Scalar(1) - 2 * l[j - 1]; }
    Scalar r() const { return Scalar::rational(1, 2) - tau; }
    Scalar min_l() const;
    Scalar max_l() const;
    int argmin() const; // 1..3, or 0 on a tie
    cet::CETMap map() const { return cet::CETMap({l[0], l[1], l[2]}, tau); }
    std::array<Scalar, 4> as_array() const { return {l[0], l[1], l[2], tau}; }
};

// rescaled fully subtractive step; requires a unique minimum
struct SubtractiveStep {
    Triple next;
    int j;
};
SubtractiveStep fully_subtractive_step(const Triple& l);

enum class RauzyStatus { Ok, Inapplicable, Boundary, Tie };
struct RauzyStep {
    RauzyStatus status;
    Triple next;
    int j{0};
};
// subtract the two smaller coordinates from the strict maximum (> 1/2), rescale
RauzyStep rauzy_subtractive_step(const Triple& x);

enum class Membership { In, NotIn, Inconclusive };

struct GasketResult {
    Membership verdict{Membership::Inconclusive};
    long steps{0};
    std::vector<Triple> cycle; // periodic certificate when In
};
GasketResult gasket_membership(const Triple& x, long cap);

struct EResult {
    Membership verdict{Membership::Inconclusive};
    long steps{0};
    std::vector<Triple> path; // descent to [1:1:1] when In
};
EResult e_membership(const Triple& l, long cap);

// One renormalization step: the first-return map on the window S_j, rescaled
// back to a CET map in the original interval labels.
struct RenormStep {
    ParamVector next;
    int j;
    Scalar win_left;  // S_j left endpoint in the parent circle
    Scalar win_len;   // |S_j| = 1 - 2 l_j
    // continuity subintervals of the return map in parent circle order:
    // J_j^2, J_k, J_m, J_j^1 as (left, length)
    std::array<std::pair<Scalar, Scalar>, 4> sub;
    Scalar anchor; // parent point that rescales to 0

    CirclePoint rescale(const CirclePoint& p) const;
    CirclePoint unrescale(const CirclePoint& q) const;
};
RenormStep renorm_step(const ParamVector& pv);

// whether R_j F keeps a 2-periodic interval: l_j >= 1/4 - r/2
bool has_two_periodic_after(const ParamVector& pv, int j);

enum class StopReason {
    IntegrableCompletePeriodic,
    ObtuseRotation,
    TieInMinimum,
    TwoPeriodicAppeared,
    CapReached,
};

std::string stop_reason_name(StopReason s);

struct RenormTrace {
    struct Step {
        int t;              // interval in play
        ParamVector lambda; // parameters after the step
        Scalar window_abs;  // |S^(k)| in the original circle
        RenormStep detail;
    };
    ParamVector start;
    std::vector<Step> steps;
    StopReason stop;

    // map a point of the level-k circle back to the original circle
    CirclePoint pull_back(const CirclePoint& q, std::size_t k) const;
    RenormTrace(ParamVector s) : start(std::move(s)), stop(StopReason::CapReached) {}
};
RenormTrace renorm_drive(const ParamVector& pv, long cap);

using Mat4 = std::array<std::array<long, 4>, 4>;
Mat4 A_matrix(int j);
Mat4 B_matrix(int j); // (A_j^{-1})^T
std::array<Scalar, 4> apply4(const Mat4& m, const std::array<Scalar, 4>& v);
Mat4 mat_mul(const Mat4& a, const Mat4& b);

enum class ShapeKind { Generic, Gasket, ExceptionalE, RationalDrift, Inconclusive };
std::string shape_kind_name(ShapeKind k);

struct ShapeClass {
    ShapeKind kind{ShapeKind::Inconclusive};
    long steps{0};
    std::vector<Triple> e_path;    // ExceptionalE: descent to [1:1:1]
    std::vector<Triple> cycle;     // Gasket: periodic certificate
    std::string omega1, omega2;    // Generic: escape word generators (letters)
    bool omega_validated{false};
};

// classification of a tile shape from its angle parameters l_j = angle / pi
ShapeClass classify(const Triple& l, long cap);

} // namespace ttb::renorm
