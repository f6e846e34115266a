#pragma once

#include "ttb/scalar.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ttb::cet {

struct singular_point : std::domain_error {
    singular_point() : std::domain_error("evaluation at an interval endpoint") {}
};

// Fully flipped n-interval exchange on the unit circle, F = R_tau . F_0.
// Interval endpoints are singular: evaluation there is an error state,
// never rounded into a side.
class CETMap {
public:
    CETMap(std::vector<Scalar> lengths, const Scalar& tau);

    int n() const { return int(len_.size()); }
    const Scalar& length(int j) const { return len_.at(j - 1); } // 1-based
    const std::vector<Scalar>& lengths() const { return len_; }
    const Scalar& endpoint(int j) const { return s_.at(j); } // s_0 = 0 .. s_n = 1
    const Scalar& tau() const { return tau_; }

    Scalar min_length() const;
    Scalar max_length() const;
    Scalar mid_length() const; // n = 3 only
    int argmin_length() const; // 0 if tied
    int argmax_length() const; // 0 if tied

    // 1-based interval index containing p, or 0 when p is an endpoint
    int interval_of(const CirclePoint& p) const;
    char letter_of(const CirclePoint& p) const; // 'a' + j - 1, '?' at endpoints

    CirclePoint eval(const CirclePoint& p) const; // throws singular_point
    CirclePoint eval_inverse(const CirclePoint& p) const;
    std::optional<std::pair<CirclePoint, int>> try_eval(const CirclePoint& p) const;
    std::optional<CirclePoint> try_eval_inverse(const CirclePoint& p) const;

    // n = 3: the orientation conjugate F^{l3,l2,l1}_{1-tau}
    CETMap conjugate() const;

private:
    std::vector<Scalar> len_;
    std::vector<Scalar> s_;
    Scalar tau_;
};

struct SymbolicOrbit {
    CirclePoint start;
    std::string letters;
    std::vector<CirclePoint> points; // filled when requested
    bool hit_endpoint{false};
};

SymbolicOrbit orbit(const CETMap& map, const CirclePoint& start, long steps, bool keep_points = false);

// The six-interval decomposition of T = F^2 for n = 3 (needs tau strictly
// between max l and 1 - max l). Pieces are listed in circle order starting
// at 0; piece (j, sgn) has displacement -sgn * l_j under T.
struct SquareDecomposition {
    struct Piece {
        Scalar left;
        Scalar length;
        int j;    // 1..3
        int sgn;  // +1 for I_j^+, -1 for I_j^-
        Scalar displacement;
    };
    std::vector<Piece> pieces;
    Scalar r;
    std::vector<Scalar> x; // x_j = 1 - 2 l_j

    const Piece& piece_of(const CirclePoint& p) const; // throws singular_point on a boundary
};

SquareDecomposition square_decomposition(const CETMap& map);

struct PointPeriod {
    bool found{false};
    long period{0};
    bool hit_endpoint{false};
};

PointPeriod detect_point_period(const CETMap& map, const CirclePoint& p, long cap);

enum class Regime {
    TauZero,          // pure involution
    MinRegime,        // 0 < tau <= min l
    MidRegime,        // min l < tau <= mid l
    MaxRegime,        // mid l < tau <= max l
    Rotation,         // max l > 1/2 and tau > 1 - max l
    Renormalizable,   // max l <= 1/2 and tau > max l
};

struct IntervalPeriods {
    Regime regime;
    std::set<long> periods;
    bool complete{false};               // closure finished below the cap
    std::optional<Scalar> kappa;        // rotation regime only
    bool kappa_rational{false};
    int formula_n{0};                   // MidRegime: the n of {2, 4n+2, 4n+6}
    bool exact_multiple{false};         // tau an exact multiple of min l
};

// The period set the integrability formulas predict for the regime; empty
// for regimes without a closed form.
std::set<long> integrability_formula_periods(const IntervalPeriods& ip);

// Interval periods by exact tracking of maximal continuity intervals.
// In the renormalizable regime no tracking is attempted (handled by the
// renormalization module); the regime tag alone is returned.
IntervalPeriods interval_periods(const CETMap& map, long cap);

// First return to the window (a, b) (as a subset of the circle, b - a < 1,
// may wrap past 1). Returns the return point and the letters read on the way.
struct FirstReturn {
    CirclePoint point;
    long steps;
    std::string letters;
};
std::optional<FirstReturn> first_return(const CETMap& map, const Scalar& win_left,
                                        const Scalar& win_len, const CirclePoint& p, long cap);

} // namespace ttb::cet
