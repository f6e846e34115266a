#include "ttb/flower.hpp"

#include <algorithm>

namespace ttb::tiling {

namespace {

// which side's cut-off arc contains x; -1 when x sits on a vertex arc
int side_of(const ArcTracer& tr, const ArcState& s, const CirclePoint& x) {
    CirclePoint a = tr.nuA(s), b = s.nuB, c = tr.nuC(s);
    if (x == a || x == b || x == c) return -1;
    auto in_arc = [&](const CirclePoint& p, const CirclePoint& q, const CirclePoint& rr) {
        Scalar pq = p.ccw_to(q), pr = p.ccw_to(rr), px = p.ccw_to(x);
        if (pr > pq) return px.sign() > 0 && px < pq;
        Scalar qx = q.ccw_to(x), qp = q.ccw_to(p);
        return qx.sign() > 0 && qx < qp;
    };
    if (in_arc(b, c, a)) return 0;
    if (in_arc(c, a, b)) return 1;
    return 2;
}

Flower flower_core(const TriangleShape& shape, const VertexIndex& v,
                   const std::array<ArcState, 6>& ring, const CirclePoint& h0,
                   const CirclePoint& h1, long bound) {
    Scalar tau = h0.ccw_to(h1);
    if (tau.sign() == 0) throw std::invalid_argument("degenerate flower chord");
    ArcTracer tracer(shape, h0, tau);

    Flower fl;
    fl.pistil = v;
    fl.tau = tau;

    struct Seg {
        int ring_index;
        bool outgoing;
    };
    std::vector<Seg> segs;
    for (int i = 0; i < 6; ++i) {
        const ArcState& st = ring[i];
        char corner = corner_of(st.tile, v);
        CirclePoint varc = tracer.corner_arc(st, corner);
        if (!(varc == h0) && !(varc == h1))
            throw std::logic_error("pistil fold does not sit on the chord");
        // the chord enters the tile wedge iff its other endpoint lies in the
        // cut-off arc of the side opposite the pistil corner
        const CirclePoint& other = varc == h0 ? h1 : h0;
        int side = side_of(tracer, st, other);
        int opposite = corner - 'A'; // side a faces corner A
        if (side != opposite) continue;
        // positive tiles travel toward h1: the segment leaves v iff v folds
        // to the backward endpoint of this tile's traversal
        bool outgoing = (st.tile.orient > 0) == (varc == h0);
        segs.push_back({i, outgoing});
    }
    fl.s = int(segs.size());

    std::vector<int> incoming_unused;
    for (const auto& sg : segs)
        if (!sg.outgoing) incoming_unused.push_back(sg.ring_index);

    for (const auto& sg : segs) {
        if (!sg.outgoing) continue;
        ArcState s = ring[sg.ring_index];
        Petal petal;
        petal.tiles.push_back(s.tile);
        bool closed = false;
        for (long k = 0; k <= 8 * bound * bound + 64; ++k) {
            CirclePoint pa = tracer.nuA(s), pb = s.nuB, pc = tracer.nuC(s);
            auto res = tracer.advance(s);
            if (std::holds_alternative<ArcTracer::Hit>(res)) {
                const auto& hit = std::get<ArcTracer::Hit>(res);
                if (hit.vertex == v) {
                    closed = true;
                } else {
                    fl.multi_singular = true;
                    fl.other_singularities.push_back(hit.vertex);
                }
                break;
            }
            char letter = std::get<ArcTracer::Step>(res).letter;
            (void)pa;
            (void)pb;
            (void)pc;
            petal.letters.push_back(letter);
            TileIndex prev = petal.tiles.back();
            ++petal.crossed[edge_of(prev, letter)];
            petal.tiles.push_back(s.tile);
            if (std::abs(s.tile.m - v.m) > bound || std::abs(s.tile.n - v.n) > bound) break;
        }
        if (!closed) {
            ++fl.unbounded_rays;
            continue;
        }
        // consume the incoming segment the loop returned through
        for (auto it = incoming_unused.begin(); it != incoming_unused.end(); ++it)
            if (ring[*it].tile == petal.tiles.back()) {
                incoming_unused.erase(it);
                break;
            }
        fl.petals.push_back(std::move(petal));
    }
    fl.unbounded_rays += int(incoming_unused.size());
    fl.bounded = fl.unbounded_rays == 0 && !fl.multi_singular && fl.s == int(fl.petals.size()) * 2;

    // the bounded-flower property petal by petal
    for (auto& petal : fl.petals) {
        long lo_m = v.m, hi_m = v.m, lo_n = v.n, hi_n = v.n;
        for (const auto& t : petal.tiles) {
            lo_m = std::min(lo_m, t.m);
            hi_m = std::max(hi_m, t.m + 1);
            lo_n = std::min(lo_n, t.n);
            hi_n = std::max(hi_n, t.n + 1);
        }
        for (const auto& e : vertex_edges(v)) {
            TileIndex tp{e.m, e.n, +1};
            TileIndex tn = neighbor(tp, e.letter);
            bool has_p = std::find(petal.tiles.begin(), petal.tiles.end(), tp) != petal.tiles.end();
            bool has_n = std::find(petal.tiles.begin(), petal.tiles.end(), tn) != petal.tiles.end();
            if (!has_p || !has_n) continue;
            auto it = petal.crossed.find(e);
            if (it != petal.crossed.end() && it->second > 0) continue;
            auto ends = edge_endpoints(e);
            VertexIndex w = ends[0] == v ? ends[1] : ends[0];
            if (vertex_inside(petal.crossed, w, lo_m, hi_m, lo_n, hi_n, &v)) {
                petal.bounded_ok = true;
                petal.witness_edge = e;
                break;
            }
        }
    }
    return fl;
}

std::array<ArcState, 6> fold_ring(const ArcTracer& tracer, const ArcState& base,
                                  const VertexIndex& v) {
    auto ring_tiles = tiles_around_vertex(v);
    std::array<ArcState, 6> ring;
    ring[0] = fold_tile(tracer, base, ring_tiles[0]);
    for (int i = 1; i < 6; ++i) ring[i] = fold_tile(tracer, base, ring_tiles[i]);
    return ring;
}

} // namespace

Flower flower(const TriangleShape& shape, const Scalar& tau, const VertexIndex& v, long bound) {
    // gauge: fold v to arc 0 and put the chord at {0, tau}
    ArcTracer probe(shape, CirclePoint(Scalar(0)), tau);
    ArcState base0{TileIndex{0, 0, +1}, CirclePoint(Scalar(0))};
    ArcState at_v = fold_tile(probe, base0, TileIndex{v.m, v.n, +1});
    Scalar varc = probe.nuA(at_v).value(); // v is the A corner of pos(v.m, v.n)
    ArcState base{TileIndex{0, 0, +1}, CirclePoint(Scalar(0) - varc)};
    ArcTracer tracer(shape, CirclePoint(Scalar(0)), tau);
    return flower_core(shape, v, fold_ring(tracer, base, v), CirclePoint(Scalar(0)),
                       CirclePoint(tau), bound);
}

Flower flower_in_foliation(const TriangleShape& shape, const ArcState& base, const CirclePoint& h0,
                           const CirclePoint& h1, const VertexIndex& v, long bound) {
    Scalar span = h0.ccw_to(h1);
    ArcTracer tracer(shape, h0, span);
    ArcState at_v = fold_tile(tracer, base, TileIndex{v.m, v.n, +1});
    CirclePoint varc = tracer.nuA(at_v);
    // the flower chord passes through F(v) with the foliation constant h0 + h1
    CirclePoint c0 = varc;
    CirclePoint c1(h0.value() + h1.value() - varc.value());
    if (c0.ccw_to(c1).sign() == 0) throw std::invalid_argument("pistil folds onto a chord endpoint");
    return flower_core(shape, v, fold_ring(tracer, base, v), c0, c1, bound);
}

} // namespace ttb::tiling
