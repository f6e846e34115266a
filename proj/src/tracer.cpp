#include "ttb/tracer.hpp"

#include <deque>

namespace ttb::tiling {

ArcTracer::ArcTracer(TriangleShape shape, CirclePoint h0, Scalar tau)
    : shape_(std::move(shape)), h0_(h0), h1_(h0 + tau), tau_(std::move(tau)) {
    if (tau_.sign() <= 0 || tau_ >= Scalar(1)) throw std::invalid_argument("tau must lie in (0, 1)");
}

CirclePoint ArcTracer::nuA(const ArcState& s) const {
    const Scalar& l3 = shape_.l(3);
    return s.tile.orient > 0 ? s.nuB - l3 : s.nuB + l3;
}

CirclePoint ArcTracer::nuC(const ArcState& s) const {
    const Scalar& l1 = shape_.l(1);
    return s.tile.orient > 0 ? s.nuB + l1 : s.nuB - l1;
}

CirclePoint ArcTracer::corner_arc(const ArcState& s, char corner) const {
    switch (corner) {
        case 'A': return nuA(s);
        case 'B': return s.nuB;
        case 'C': return nuC(s);
        default: throw std::invalid_argument("corner must be A, B or C");
    }
}

namespace {

// does x lie in the open arc between p and q that avoids r?
bool in_cutoff_arc(const CirclePoint& x, const CirclePoint& p, const CirclePoint& q,
                   const CirclePoint& r) {
    Scalar pq = p.ccw_to(q);
    Scalar pr = p.ccw_to(r);
    Scalar px = p.ccw_to(x);
    if (pr > pq) // the p->q ccw arc avoids r
        return px.sign() > 0 && px < pq;
    // otherwise the complementary arc q->p avoids r
    Scalar qx = q.ccw_to(x);
    Scalar qp = q.ccw_to(p);
    return qx.sign() > 0 && qx < qp;
}

int side_arc_of(const CirclePoint& x, const CirclePoint& a, const CirclePoint& b,
                const CirclePoint& c) {
    if (x == a || x == b || x == c) return -1;
    if (in_cutoff_arc(x, b, c, a)) return 0;
    if (in_cutoff_arc(x, c, a, b)) return 1;
    return 2;
}

} // namespace

std::variant<ArcTracer::Step, ArcTracer::Hit> ArcTracer::advance(ArcState& s) const {
    const CirclePoint target = s.tile.orient > 0 ? h1_ : h0_;
    CirclePoint a = nuA(s), b = s.nuB, c = nuC(s);
    auto verts = tile_vertices(s.tile);
    if (target == a) return Hit{'A', verts[0]};
    if (target == b) return Hit{'B', verts[1]};
    if (target == c) return Hit{'C', verts[2]};
    char letter;
    CirclePoint p = a, q = b;
    if (in_cutoff_arc(target, b, c, a)) {
        letter = 'a';
        p = b;
        q = c;
    } else if (in_cutoff_arc(target, c, a, b)) {
        letter = 'b';
        p = c;
        q = a;
    } else if (in_cutoff_arc(target, a, b, c)) {
        letter = 'c';
    } else {
        throw std::logic_error("chord target not separated by any side");
    }
    // reflect the corner arcs through the folded crossed edge
    Scalar sum = p.value() + q.value();
    s.nuB = CirclePoint(sum - s.nuB.value());
    s.tile = neighbor(s.tile, letter);
    return Step{letter};
}

bool ArcTracer::chord_crosses(const ArcState& s) const {
    CirclePoint a = nuA(s), b = s.nuB, c = nuC(s);
    int s0 = side_arc_of(h0_, a, b, c);
    int s1 = side_arc_of(h1_, a, b, c);
    return s0 >= 0 && s1 >= 0 && s0 != s1;
}

CirclePoint ArcTracer::cet_point(const ArcState& s) const {
    return s.tile.orient > 0 ? CirclePoint(h1_.value() - s.nuB.value())
                             : CirclePoint(s.nuB.value() - h0_.value());
}

ArcState ArcTracer::state_from_cet(const CirclePoint& p, const TileIndex& tile) const {
    CirclePoint nuB = tile.orient > 0 ? CirclePoint(h1_.value() - p.value())
                                      : CirclePoint(h0_.value() + p.value());
    return ArcState{tile, nuB};
}

cet::CETMap ArcTracer::map() const {
    return cet::CETMap({shape_.l(1), shape_.l(2), shape_.l(3)}, tau_);
}

std::string trajectory_type_name(TrajectoryType t) {
    switch (t) {
        case TrajectoryType::Periodic: return "periodic";
        case TrajectoryType::DriftPeriodic: return "drift_periodic";
        case TrajectoryType::EscapingAtCap: return "escaping_at_cap";
        default: return "singular_hit";
    }
}

TileIndex TrajectoryRecord::tile_at(std::size_t k) const {
    return k == 0 ? start_tile : crossings[k - 1].to;
}

TrajectoryRecord trace(const TriangleShape& shape, const Scalar& tau, const CirclePoint& p0,
                       long max_crossings, TileIndex tile) {
    ArcTracer tracer(shape, CirclePoint(Scalar(0)), tau);
    return trace_with(tracer, tracer.state_from_cet(p0, tile), max_crossings);
}

TrajectoryRecord trace_with(const ArcTracer& tracer, const ArcState& start, long max_crossings) {
    TrajectoryRecord rec;
    rec.l = tracer.shape().l();
    rec.tau = tracer.tau();
    rec.h0_turns = tracer.chord_h0().value().to_double();
    rec.start_p = tracer.cet_point(start);
    rec.start_tile = start.tile;

    ArcState s = start;
    std::unordered_map<std::string, std::pair<long, TileIndex>> seen;
    auto state_key = [&](const ArcState& st) {
        return (st.tile.orient > 0 ? "+" : "-") + st.nuB.value().key();
    };
    seen.emplace(state_key(s), std::make_pair(0L, s.tile));

    for (long k = 0; k < max_crossings; ++k) {
        CirclePoint pa = tracer.nuA(s), pb = s.nuB, pc = tracer.nuC(s);
        auto res = tracer.advance(s);
        if (std::holds_alternative<ArcTracer::Hit>(res)) {
            const auto& hit = std::get<ArcTracer::Hit>(res);
            rec.type = TrajectoryType::SingularHit;
            rec.singular_vertex = hit.vertex;
            rec.singular_at = k;
            return rec;
        }
        char letter = std::get<ArcTracer::Step>(res).letter;
        rec.letters.push_back(letter);
        Crossing cr;
        cr.letter = letter;
        cr.to = s.tile;
        // arcs of the crossed edge endpoints (from the pre-step corner arcs)
        CirclePoint ep, eq;
        if (letter == 'a') {
            ep = pb;
            eq = pc;
        } else if (letter == 'b') {
            ep = pc;
            eq = pa;
        } else {
            ep = pa;
            eq = pb;
        }
        cr.arc_p = ep.value().to_double();
        cr.arc_q = eq.value().to_double();
        rec.crossings.push_back(cr);

        auto [it, fresh] = seen.emplace(state_key(s), std::make_pair(k + 1, s.tile));
        if (!fresh) {
            long k0 = it->second.first;
            const TileIndex& t0 = it->second.second;
            rec.period = (k + 1) - k0;
            if (t0 == s.tile) {
                rec.type = TrajectoryType::Periodic;
            } else {
                rec.type = TrajectoryType::DriftPeriodic;
                rec.drift_m = s.tile.m - t0.m;
                rec.drift_n = s.tile.n - t0.n;
            }
            return rec;
        }
    }
    rec.type = TrajectoryType::EscapingAtCap;
    return rec;
}

std::map<EdgeIndex, long> crossing_counts(const TrajectoryRecord& r) {
    std::map<EdgeIndex, long> counts;
    std::size_t upto = r.type == TrajectoryType::Periodic ? std::size_t(r.period) : r.crossings.size();
    for (std::size_t k = 0; k < upto && k < r.crossings.size(); ++k)
        ++counts[edge_of(r.tile_at(k), r.crossings[k].letter)];
    return counts;
}

ArcState fold_tile(const ArcTracer& tracer, const ArcState& base, const TileIndex& target) {
    // straight lattice walk: adjust orientation first, then m, then n
    ArcState s = base;
    auto cross = [&](char letter) {
        CirclePoint p, q;
        if (letter == 'a') {
            p = s.nuB;
            q = tracer.nuC(s);
        } else if (letter == 'b') {
            p = tracer.nuC(s);
            q = tracer.nuA(s);
        } else {
            p = tracer.nuA(s);
            q = s.nuB;
        }
        s.nuB = CirclePoint(p.value() + q.value() - s.nuB.value());
        s.tile = neighbor(s.tile, letter);
    };
    // move in m: positive tile crossing b goes to (m-1, n, -), then a back to +
    while (s.tile.m < target.m) {
        if (s.tile.orient > 0) cross('a');
        cross('b');
    }
    while (s.tile.m > target.m) {
        if (s.tile.orient < 0) cross('a');
        cross('b');
    }
    while (s.tile.n < target.n) {
        if (s.tile.orient > 0) cross('a');
        cross('c');
    }
    while (s.tile.n > target.n) {
        if (s.tile.orient < 0) cross('a');
        cross('c');
    }
    if (s.tile.orient != target.orient) cross('a');
    if (!(s.tile == target)) throw std::logic_error("fold walk missed the target tile");
    return s;
}

FoldPatch fold_patch(const ArcTracer& tracer, const ArcState& center, long radius) {
    FoldPatch patch;
    std::deque<ArcState> work;
    work.push_back(center);
    patch.tile_nuB.emplace(center.tile, center.nuB);
    auto record_corners = [&](const ArcState& s) {
        auto vs = tile_vertices(s.tile);
        CirclePoint arcs[3] = {tracer.nuA(s), s.nuB, tracer.nuC(s)};
        for (int i = 0; i < 3; ++i) {
            auto [it, fresh] = patch.vertex_arc.emplace(vs[i], arcs[i]);
            if (!fresh && !(it->second == arcs[i]))
                throw std::logic_error("folding inconsistency: path-dependent vertex arc");
        }
    };
    record_corners(center);
    while (!work.empty()) {
        ArcState s = work.front();
        work.pop_front();
        for (char letter : {'a', 'b', 'c'}) {
            ArcState t = s;
            CirclePoint p, q;
            if (letter == 'a') {
                p = t.nuB;
                q = tracer.nuC(t);
            } else if (letter == 'b') {
                p = tracer.nuC(t);
                q = tracer.nuA(t);
            } else {
                p = tracer.nuA(t);
                q = t.nuB;
            }
            t.nuB = CirclePoint(p.value() + q.value() - t.nuB.value());
            t.tile = neighbor(t.tile, letter);
            long dm = t.tile.m - center.tile.m, dn = t.tile.n - center.tile.n;
            if (std::abs(dm) > radius || std::abs(dn) > radius) continue;
            if (patch.tile_nuB.emplace(t.tile, t.nuB).second) {
                record_corners(t);
                work.push_back(t);
            }
        }
    }
    return patch;
}

} // namespace ttb::tiling
