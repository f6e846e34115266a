#include "ttb/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ttb::tiling {

bool vertex_inside(const std::map<EdgeIndex, long>& counts, const VertexIndex& v, long box_lo_m,
                   long box_hi_m, long box_lo_n, long box_hi_n, const VertexIndex* avoid) {
    // ray along +u crosses the 'c' edges ((m+k, n) .. (m+k+1, n)); if the
    // excluded vertex sits on that ray, use -u instead, then +v
    long par = 0;
    if (!avoid || avoid->n != v.n || avoid->m <= v.m) {
        for (long m = v.m; m <= box_hi_m; ++m) {
            auto it = counts.find(EdgeIndex{m, v.n, 'c'});
            if (it != counts.end()) par += it->second;
        }
        return par % 2 == 1;
    }
    if (avoid->m >= v.m) { // avoid is to the right; go left
        for (long m = box_lo_m - 1; m < v.m; ++m) {
            auto it = counts.find(EdgeIndex{m, v.n, 'c'});
            if (it != counts.end()) par += it->second;
        }
        return par % 2 == 1;
    }
    for (long n = v.n; n <= box_hi_n; ++n) {
        auto it = counts.find(EdgeIndex{v.m, n, 'b'});
        if (it != counts.end()) par += it->second;
    }
    (void)box_lo_n;
    return par % 2 == 1;
}

namespace {

struct Box {
    long lo_m{0}, hi_m{0}, lo_n{0}, hi_n{0};
};

Box bounding_box(const TrajectoryRecord& rec, std::size_t upto) {
    Box b{rec.start_tile.m, rec.start_tile.m, rec.start_tile.n, rec.start_tile.n};
    for (std::size_t k = 0; k < upto && k < rec.crossings.size(); ++k) {
        const TileIndex& t = rec.crossings[k].to;
        b.lo_m = std::min(b.lo_m, t.m);
        b.hi_m = std::max(b.hi_m, t.m);
        b.lo_n = std::min(b.lo_n, t.n);
        b.hi_n = std::max(b.hi_n, t.n);
    }
    return b;
}

long count_components(const std::set<VertexIndex>& verts,
                      const std::set<std::pair<VertexIndex, VertexIndex>>& edges) {
    std::map<VertexIndex, int> comp;
    long n_comp = 0;
    for (const auto& v : verts) {
        if (comp.count(v)) continue;
        ++n_comp;
        std::deque<VertexIndex> work{v};
        comp[v] = int(n_comp);
        while (!work.empty()) {
            VertexIndex u = work.front();
            work.pop_front();
            VertexIndex nb[6] = {{u.m + 1, u.n}, {u.m - 1, u.n},     {u.m, u.n + 1},
                                 {u.m, u.n - 1}, {u.m - 1, u.n + 1}, {u.m + 1, u.n - 1}};
            for (const auto& w : nb) {
                auto key = std::minmax(u, w);
                if (!edges.count({key.first, key.second})) continue;
                if (comp.emplace(w, int(n_comp)).second) work.push_back(w);
            }
        }
    }
    return n_comp;
}

} // namespace

EnclosedGraph enclosed_graph(const TrajectoryRecord& rec) {
    if (rec.type != TrajectoryType::Periodic)
        throw std::invalid_argument("enclosed graph needs a periodic trajectory");
    EnclosedGraph g;
    auto counts = crossing_counts(rec);
    Box box = bounding_box(rec, std::size_t(rec.period));
    std::set<VertexIndex> inside;
    for (long m = box.lo_m; m <= box.hi_m + 1; ++m)
        for (long n = box.lo_n; n <= box.hi_n + 1; ++n) {
            VertexIndex v{m, n};
            if (vertex_inside(counts, v, box.lo_m, box.hi_m + 1, box.lo_n, box.hi_n + 1))
                inside.insert(v);
        }
    std::set<std::pair<VertexIndex, VertexIndex>> edges;
    for (const auto& v : inside)
        for (const auto& e : vertex_edges(v)) {
            auto ends = edge_endpoints(e);
            if (!inside.count(ends[0]) || !inside.count(ends[1])) continue;
            auto it = counts.find(e);
            if (it != counts.end() && it->second > 0) {
                ++g.crossed_inside_edges;
                continue;
            }
            auto key = std::minmax(ends[0], ends[1]);
            edges.insert({key.first, key.second});
        }
    g.crossed_inside_edges /= 2; // each edge was visited from both endpoints
    g.vertices.assign(inside.begin(), inside.end());
    g.edges.assign(edges.begin(), edges.end());
    long comps = count_components(inside, edges);
    g.connected = comps == 1 && !inside.empty();
    g.is_tree = g.connected && long(edges.size()) == long(inside.size()) - 1;
    return g;
}

ColoredGraphs vertex_coloring(const TrajectoryRecord& rec, const TriangleShape& shape) {
    ColoredGraphs out;
    ArcTracer tracer(shape, CirclePoint(Scalar(0)), rec.tau);
    ArcState base = tracer.state_from_cet(rec.start_p, rec.start_tile);

    std::size_t upto = rec.type == TrajectoryType::Periodic ? std::size_t(rec.period) : rec.crossings.size();
    Box box = bounding_box(rec, upto);
    long radius = std::max({box.hi_m - box.lo_m, box.hi_n - box.lo_n, 2L}) * 2;
    // fold everything within twice the trajectory's extent
    FoldPatch patch = fold_patch(tracer, base, radius);

    const CirclePoint& h0 = tracer.chord_h0();
    const Scalar& tau = tracer.tau();
    for (const auto& [v, arc] : patch.vertex_arc) {
        Scalar d = h0.ccw_to(arc);
        if (d.sign() == 0 || d == tau) {
            out.vertex_on_chord = true;
            out.color[v] = -1;
            continue;
        }
        out.color[v] = d < tau ? 1 : 0;
    }

    // graphs on the vertices of crossed edges
    auto counts = crossing_counts(rec);
    std::set<VertexIndex> vdelta;
    for (const auto& [e, c] : counts) {
        if (!c) continue;
        auto ends = edge_endpoints(e);
        vdelta.insert(ends[0]);
        vdelta.insert(ends[1]);
    }
    std::set<VertexIndex> vs[2];
    std::set<std::pair<VertexIndex, VertexIndex>> es[2];
    for (const auto& v : vdelta) {
        auto it = out.color.find(v);
        if (it == out.color.end() || it->second < 0) continue;
        vs[it->second].insert(v);
    }
    for (int k = 0; k < 2; ++k)
        for (const auto& v : vs[k])
            for (const auto& e : vertex_edges(v)) {
                auto ends = edge_endpoints(e);
                VertexIndex w = ends[0] == v ? ends[1] : ends[0];
                if (!vs[k].count(w)) continue;
                auto key = std::minmax(v, w);
                es[k].insert({key.first, key.second});
            }
    for (int k = 0; k < 2; ++k) {
        ColoredGraphs::G& g = k ? out.g1 : out.g0;
        g.vertices.assign(vs[k].begin(), vs[k].end());
        g.edges.assign(es[k].begin(), es[k].end());
        g.components = count_components(vs[k], es[k]);
        g.independent_cycles = long(es[k].size()) - long(vs[k].size()) + g.components;
    }

    if (rec.type == TrajectoryType::Periodic) {
        for (const auto& v : vdelta) {
            if (vertex_inside(counts, v, box.lo_m, box.hi_m + 1, box.lo_n, box.hi_n + 1)) {
                auto it = out.color.find(v);
                if (it != out.color.end() && it->second >= 0) {
                    out.inside_color = it->second;
                    break;
                }
            }
        }
    }
    return out;
}

long surrounded_tile_violations(const TrajectoryRecord& rec, const TriangleShape& shape) {
    ColoredGraphs cg = vertex_coloring(rec, shape);
    std::size_t upto = rec.type == TrajectoryType::Periodic ? std::size_t(rec.period) : rec.crossings.size();
    Box box = bounding_box(rec, upto);
    long violations = 0;
    for (long m = box.lo_m; m <= box.hi_m; ++m)
        for (long n = box.lo_n; n <= box.hi_n; ++n)
            for (int orient : {+1, -1}) {
                TileIndex t{m, n, orient};
                auto vs = tile_vertices(t);
                int c0, c1, c2;
                auto get = [&](const VertexIndex& v, int& c) {
                    auto it = cg.color.find(v);
                    if (it == cg.color.end() || it->second < 0) return false;
                    c = it->second;
                    return true;
                };
                if (!get(vs[0], c0) || !get(vs[1], c1) || !get(vs[2], c2)) continue;
                if (!(c0 == c1 && c1 == c2)) continue;
                // apexes of the three edge neighbors
                bool all_opposite = true;
                for (char e : {'a', 'b', 'c'}) {
                    TileIndex nb = neighbor(t, e);
                    auto nvs = tile_vertices(nb);
                    VertexIndex apex = nvs[0];
                    for (const auto& w : nvs)
                        if (!(w == vs[0]) && !(w == vs[1]) && !(w == vs[2])) apex = w;
                    int ca;
                    if (!get(apex, ca) || ca == c0) all_opposite = false;
                }
                if (all_opposite) ++violations;
            }
    return violations;
}

} // namespace ttb::tiling
