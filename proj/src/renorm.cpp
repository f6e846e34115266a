#include "ttb/renorm.hpp"
#include "ttb/words.hpp"

#include <map>

namespace ttb::renorm {

namespace {

Scalar half_scalar() { return Scalar::rational(1, 2); }

bool scalar_is_rational(const Scalar& s) {
    return s.backend() == Backend::Rational ||
           (s.backend() == Backend::Cubic && s.cubic().is_rational());
}

bool triple_is_rational(const Triple& t) {
    return scalar_is_rational(t[0]) && scalar_is_rational(t[1]) && scalar_is_rational(t[2]);
}

std::string triple_key(const Triple& t) { return t[0].key() + "#" + t[1].key() + "#" + t[2].key(); }

Triple normalized(const Triple& t) {
    Scalar sum = t[0] + t[1] + t[2];
    if (sum.sign() <= 0) throw std::invalid_argument("triple must have positive sum");
    return {t[0] / sum, t[1] / sum, t[2] / sum};
}

} // namespace

ParamVector::ParamVector(Triple ls, Scalar t) : l(std::move(ls)), tau(std::move(t)) {
    Scalar sum = l[0] + l[1] + l[2];
    for (const auto& v : l)
        if (v.sign() <= 0) throw std::invalid_argument("lengths must be positive");
    if (sum.is_exact()) {
        if (sum != Scalar(1)) throw std::invalid_argument("lengths must sum to 1");
    }
    if (tau.sign() < 0 || tau > half_scalar())
        throw std::invalid_argument("tau must lie in [0, 1/2] (use the symmetry conjugate)");
}

Scalar ParamVector::min_l() const {
    Scalar m = l[0];
    if (l[1] < m) m = l[1];
    if (l[2] < m) m = l[2];
    return m;
}

Scalar ParamVector::max_l() const {
    Scalar m = l[0];
    if (l[1] > m) m = l[1];
    if (l[2] > m) m = l[2];
    return m;
}

int ParamVector::argmin() const {
    int j = 1;
    for (int k = 2; k <= 3; ++k)
        if (l[k - 1] < l[j - 1]) j = k;
    for (int k = 1; k <= 3; ++k)
        if (k != j && l[k - 1] == l[j - 1]) return 0;
    return j;
}

SubtractiveStep fully_subtractive_step(const Triple& l) {
    int j = 1;
    for (int k = 2; k <= 3; ++k)
        if (l[k - 1] < l[j - 1]) j = k;
    for (int k = 1; k <= 3; ++k)
        if (k != j && l[k - 1] == l[j - 1]) throw tie_in_minimum();
    Scalar d = Scalar(1) - 2 * l[j - 1];
    SubtractiveStep s;
    s.j = j;
    for (int k = 1; k <= 3; ++k)
        s.next[k - 1] = (k == j ? l[k - 1] : l[k - 1] - l[j - 1]) / d;
    return s;
}

RauzyStep rauzy_subtractive_step(const Triple& x) {
    RauzyStep out;
    int j = 1;
    for (int k = 2; k <= 3; ++k)
        if (x[k - 1] > x[j - 1]) j = k;
    for (int k = 1; k <= 3; ++k)
        if (k != j && x[k - 1] == x[j - 1]) {
            out.status = RauzyStatus::Tie;
            return out;
        }
    Scalar half = half_scalar();
    int c = x[j - 1].cmp(half);
    if (c < 0) {
        out.status = RauzyStatus::Inapplicable;
        return out;
    }
    if (c == 0) {
        out.status = RauzyStatus::Boundary;
        return out;
    }
    out.status = RauzyStatus::Ok;
    out.j = j;
    for (int k = 1; k <= 3; ++k)
        out.next[k - 1] = (k == j ? 2 * x[k - 1] - Scalar(1) : x[k - 1]) / x[j - 1];
    return out;
}

GasketResult gasket_membership(const Triple& x_in, long cap) {
    GasketResult res;
    Triple x = normalized(x_in);
    for (const auto& v : x)
        if (v.sign() <= 0) {
            res.verdict = Membership::NotIn;
            return res;
        }
    std::map<std::string, long> seen;
    std::vector<Triple> hist;
    for (long k = 0; k < cap; ++k) {
        std::string key = triple_key(x);
        auto it = seen.find(key);
        if (it != seen.end()) {
            res.verdict = Membership::In;
            res.steps = k;
            res.cycle.assign(hist.begin() + it->second, hist.end());
            return res;
        }
        seen.emplace(std::move(key), k);
        hist.push_back(x);
        RauzyStep st = rauzy_subtractive_step(x);
        if (st.status != RauzyStatus::Ok) {
            res.verdict = Membership::NotIn;
            res.steps = k;
            return res;
        }
        bool in_range = true;
        for (const auto& v : st.next)
            if (v.sign() <= 0 || v >= Scalar(1)) in_range = false;
        if (!in_range) {
            res.verdict = Membership::NotIn;
            res.steps = k;
            return res;
        }
        x = st.next;
    }
    res.steps = cap;
    return res;
}

EResult e_membership(const Triple& l_in, long cap) {
    EResult res;
    Triple l = normalized(l_in);
    for (const auto& v : l)
        if (v.sign() <= 0) {
            res.verdict = Membership::NotIn;
            return res;
        }
    std::map<std::string, long> seen;
    for (long k = 0; k < cap; ++k) {
        res.path.push_back(l);
        if (l[0] == l[1] && l[1] == l[2]) {
            res.verdict = Membership::In;
            res.steps = k;
            return res;
        }
        int jmin = 1;
        for (int j = 2; j <= 3; ++j)
            if (l[j - 1] < l[jmin - 1]) jmin = j;
        bool min_tied = false;
        for (int j = 1; j <= 3; ++j)
            if (j != jmin && l[j - 1] == l[jmin - 1]) min_tied = true;
        if (min_tied) {
            res.verdict = Membership::NotIn; // tied minimum: descent undefined, never reaches [1:1:1]
            res.steps = k;
            return res;
        }
        auto [it, fresh] = seen.emplace(triple_key(l), k);
        if (!fresh) {
            res.verdict = Membership::NotIn; // projective cycle: never all-equal
            res.steps = k;
            return res;
        }
        (void)it;
        l = fully_subtractive_step(l).next;
    }
    res.steps = cap;
    res.path.clear();
    return res;
}

RenormStep renorm_step(const ParamVector& pv) {
    int j = pv.argmin();
    if (!j) throw tie_in_minimum();
    Scalar maxl = pv.max_l();
    if (maxl > half_scalar()) throw std::domain_error("renorm step needs max l <= 1/2");
    // tau = max l = 1/2 is the degenerate right-triangle boundary, where one
    // return branch is empty; the step formulas stay valid there
    if (!(pv.tau >= maxl)) throw std::domain_error("renorm step needs tau >= max l");

    // cyclic relabeling moves the interval in play to the third slot
    std::array<int, 3> lab;
    Scalar shift(0);
    if (j == 1) {
        lab = {2, 3, 1};
        shift = pv.l[0];
    } else if (j == 2) {
        lab = {3, 1, 2};
        shift = pv.l[0] + pv.l[1];
    } else {
        lab = {1, 2, 3};
    }
    Scalar lam1 = pv.l[lab[0] - 1], lam2 = pv.l[lab[1] - 1], lam3 = pv.l[lab[2] - 1];
    const Scalar& tau = pv.tau;
    Scalar d = Scalar(1) - 2 * lam3;

    RenormStep rs{ParamVector(fully_subtractive_step(pv.l).next, (tau - lam3) / d),
                  j, Scalar(0), d, {}, Scalar(0)};

    Scalar wl = tau - lam2; // window left, shifted coordinates
    rs.win_left = CirclePoint(wl + shift).value();

    // pieces in shifted coordinates: J_3^2, J_1, J_2, J_3^1
    std::array<std::pair<Scalar, Scalar>, 4> sub_shifted = {
        std::make_pair(wl, lam3 - wl),
        std::make_pair(lam3, lam1 - lam3),
        std::make_pair(lam1, lam2 - lam3),
        std::make_pair(lam1 + lam2 - lam3, tau - lam2),
    };
    for (int i = 0; i < 4; ++i)
        rs.sub[i] = {CirclePoint(sub_shifted[i].first + shift).value(), sub_shifted[i].second};

    // anchor: the parent point rescaling to position 0 of the new circle in
    // the original labels, i.e. the start of the new interval 1
    Scalar anchor_shifted = lam3;                          // start of J_1
    if (lab[1] == 1) anchor_shifted = lam1;                // start of J_2
    if (lab[2] == 1) anchor_shifted = lam1 + lam2 - lam3;  // start of J_3^1
    rs.anchor = CirclePoint(anchor_shifted + shift).value();
    return rs;
}

CirclePoint RenormStep::rescale(const CirclePoint& p) const {
    CirclePoint left(win_left);
    Scalar pos = left.ccw_to(p);
    if (!(pos < win_len)) throw std::domain_error("point outside the renormalization window");
    Scalar apos = left.ccw_to(CirclePoint(anchor));
    Scalar dpos = pos - apos;
    if (dpos.sign() < 0) dpos += win_len;
    return CirclePoint(dpos / win_len);
}

CirclePoint RenormStep::unrescale(const CirclePoint& q) const {
    CirclePoint left(win_left);
    Scalar apos = left.ccw_to(CirclePoint(anchor));
    Scalar pos = apos + q.value() * win_len;
    if (!(pos < win_len)) pos -= win_len;
    return CirclePoint(win_left + pos);
}

bool has_two_periodic_after(const ParamVector& pv, int j) {
    if (j < 1 || j > 3) throw std::invalid_argument("index must be 1..3");
    // l_j >= 1/4 - r/2, evaluated exactly (equivalent to 2 l_j >= tau)
    return 2 * pv.l[j - 1] >= pv.tau;
}

std::string stop_reason_name(StopReason s) {
    switch (s) {
        case StopReason::IntegrableCompletePeriodic: return "integrable_complete_periodic";
        case StopReason::ObtuseRotation: return "obtuse_rotation";
        case StopReason::TieInMinimum: return "tie_in_minimum";
        case StopReason::TwoPeriodicAppeared: return "two_periodic_appeared";
        default: return "cap_reached";
    }
}

RenormTrace renorm_drive(const ParamVector& pv, long cap) {
    RenormTrace tr(pv);
    ParamVector cur = pv;
    Scalar abswin(1);
    Scalar half = half_scalar(), one(1);
    for (long k = 0; k <= cap; ++k) {
        Scalar maxl = cur.max_l();
        if (maxl > half) {
            tr.stop = cur.tau >= one - maxl ? StopReason::ObtuseRotation
                                            : StopReason::IntegrableCompletePeriodic;
            return tr;
        }
        if (cur.tau <= maxl) {
            tr.stop = tr.steps.empty() ? StopReason::IntegrableCompletePeriodic
                                       : StopReason::TwoPeriodicAppeared;
            return tr;
        }
        if (cur.argmin() == 0) {
            tr.stop = StopReason::TieInMinimum;
            return tr;
        }
        if (k == cap) break;
        RenormStep st = renorm_step(cur);
        abswin *= st.win_len;
        cur = st.next;
        tr.steps.push_back({st.j, cur, abswin, st});
    }
    tr.stop = StopReason::CapReached;
    return tr;
}

CirclePoint RenormTrace::pull_back(const CirclePoint& q, std::size_t k) const {
    if (k > steps.size()) throw std::out_of_range("pull_back level beyond the trace");
    CirclePoint p = q;
    for (std::size_t i = k; i > 0; --i) p = steps[i - 1].detail.unrescale(p);
    return p;
}

Mat4 A_matrix(int j) {
    switch (j) {
        case 1: return {{{1, 0, 0, 0}, {-1, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}}};
        case 2: return {{{1, -1, 0, 0}, {0, 1, 0, 0}, {0, -1, 1, 0}, {0, -1, 0, 1}}};
        case 3: return {{{1, 0, -1, 0}, {0, 1, -1, 0}, {0, 0, 1, 0}, {0, 0, -1, 1}}};
        default: throw std::invalid_argument("matrix index must be 1..3");
    }
}

Mat4 B_matrix(int j) {
    // (A_j^{-1})^T; all three fix v_perp = (1,1,1,-2)
    switch (j) {
        case 1: return {{{1, 1, 1, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
        case 2: return {{{1, 0, 0, 0}, {1, 1, 1, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
        case 3: return {{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 1}, {0, 0, 0, 1}}};
        default: throw std::invalid_argument("matrix index must be 1..3");
    }
}

std::array<Scalar, 4> apply4(const Mat4& m, const std::array<Scalar, 4>& v) {
    std::array<Scalar, 4> out{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            if (m[i][k]) out[i] += Scalar(int(m[i][k])) * v[k];
    return out;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            long s = 0;
            for (int t = 0; t < 4; ++t) s += a[i][t] * b[t][k];
            c[i][k] = s;
        }
    return c;
}

std::string shape_kind_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::Generic: return "generic";
        case ShapeKind::Gasket: return "gasket";
        case ShapeKind::ExceptionalE: return "exceptional_E";
        case ShapeKind::RationalDrift: return "rational_drift";
        default: return "inconclusive";
    }
}

namespace {

// escape-word generators for a shape whose tau = 1/2 drive reaches the
// rotation regime: the two continuity branches of the induced rotation,
// lifted back through the substitution chain
void compute_escape_words(const Triple& l, long cap, ShapeClass& sc) {
    RenormTrace tr = renorm_drive(ParamVector(l, half_scalar()), cap);
    if (tr.stop != StopReason::ObtuseRotation) return;
    const ParamVector& top = tr.steps.empty() ? tr.start : tr.steps.back().lambda;
    cet::CETMap fk = top.map();
    int m = 1;
    for (int k = 2; k <= 3; ++k)
        if (top.l[k - 1] > top.l[m - 1]) m = k;
    int j2 = (m % 3) + 1;
    CirclePoint u(fk.endpoint(j2 - 1) + top.l[j2 - 1] / Scalar(3));
    const long blocks = 96;
    cet::SymbolicOrbit so = cet::orbit(fk, u, 2 * blocks);
    if (so.hit_endpoint) return;

    // lift level by level with the exact one-step-back context, tracking the
    // rotation block boundaries through the substitutions
    std::string stream = so.letters;
    std::vector<std::size_t> starts(blocks);
    for (long b = 0; b < blocks; ++b) starts[b] = std::size_t(2 * b);
    CirclePoint p = u;
    for (std::size_t i = tr.steps.size(); i > 0; --i) {
        const auto& st = tr.steps[i - 1];
        cet::CETMap flev = st.lambda.map();
        char ctx = flev.letter_of(flev.eval_inverse(p));
        std::string next;
        std::vector<std::size_t> nstarts(starts.size());
        std::size_t bi = 0;
        for (std::size_t pos = 0; pos < stream.size(); ++pos) {
            while (bi < starts.size() && starts[bi] == pos) nstarts[bi++] = next.size();
            char prev = pos ? stream[pos - 1] : ctx;
            next += words::sigma_apply(st.t, std::string(1, stream[pos]), false, prev);
        }
        while (bi < starts.size()) nstarts[bi++] = next.size();
        stream = std::move(next);
        starts = std::move(nstarts);
        p = st.detail.unrescale(p);
        if (stream.size() > 60000) {
            stream.resize(60000);
            while (!starts.empty() && starts.back() >= stream.size()) starts.pop_back();
        }
    }
    std::map<std::string, long> freq;
    for (std::size_t b = 0; b + 1 < starts.size(); ++b)
        ++freq[stream.substr(starts[b], starts[b + 1] - starts[b])];
    if (freq.empty()) return;
    auto it = freq.begin();
    sc.omega1 = it->first;
    if (freq.size() >= 2) sc.omega2 = std::next(it)->first;
    bool two = freq.size() == 2;
    cet::SymbolicOrbit check = cet::orbit(tr.start.map(), p, long(stream.size()));
    sc.omega_validated = two && !check.hit_endpoint && check.letters == stream;
}

} // namespace

ShapeClass classify(const Triple& l_in, long cap) {
    Triple l = normalized(l_in);
    ShapeClass sc;
    for (const auto& v : l)
        if (v.sign() <= 0) throw std::invalid_argument("shape parameters must be positive");
    bool rational = triple_is_rational(l);
    Scalar half = half_scalar();
    Scalar quarter = Scalar::rational(1, 4);

    Scalar mx = l[0];
    for (const auto& v : l)
        if (v > mx) mx = v;
    if (mx >= half) {
        // right or obtuse tiles sit outside both the gasket and E
        sc.kind = rational ? ShapeKind::RationalDrift : ShapeKind::Generic;
        compute_escape_words(l, cap, sc);
        return sc;
    }

    std::map<std::string, long> seen;
    Triple cur = l;
    bool gasket_possible = true;
    for (long k = 0; k < cap; ++k) {
        if (cur[0] == cur[1] && cur[1] == cur[2]) {
            sc.kind = ShapeKind::ExceptionalE;
            sc.steps = k;
            auto e = e_membership(l, cap);
            sc.e_path = e.path;
            return sc;
        }
        int jmin = 1;
        for (int j = 2; j <= 3; ++j)
            if (cur[j - 1] < cur[jmin - 1]) jmin = j;
        bool min_tied = false;
        for (int j = 1; j <= 3; ++j)
            if (j != jmin && cur[j - 1] == cur[jmin - 1]) min_tied = true;
        if (min_tied) {
            sc.kind = rational ? ShapeKind::RationalDrift : ShapeKind::Generic;
            sc.steps = k;
            compute_escape_words(l, cap, sc);
            return sc;
        }
        Scalar mn = cur[0];
        for (const auto& v : cur)
            if (v < mn) mn = v;
        if (mn >= quarter) gasket_possible = false;
        auto [it, fresh] = seen.emplace(triple_key(cur), k);
        (void)it;
        if (!fresh) {
            sc.steps = k;
            if (gasket_possible) {
                sc.kind = ShapeKind::Gasket;
                auto g = gasket_membership(
                    {Scalar(1) - 2 * l[0], Scalar(1) - 2 * l[1], Scalar(1) - 2 * l[2]}, cap);
                sc.cycle = g.cycle;
            } else {
                sc.kind = ShapeKind::Generic; // infinite non-gasket descent: irrational, outside E
                compute_escape_words(l, cap, sc);
            }
            return sc;
        }
        cur = fully_subtractive_step(cur).next;
    }
    sc.kind = ShapeKind::Inconclusive;
    sc.steps = cap;
    return sc;
}

} // namespace ttb::renorm
