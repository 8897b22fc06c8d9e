#include "flexdp/plane_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "flexdp/rational.hpp"

namespace flexdp {

std::string rat_approx(const Rat& r) {
    std::ostringstream os;
    os.precision(6);
    os << r.get_d();
    return os.str();
}

bool Face::contains(int v) const {
    return std::find(boundary.begin(), boundary.end(), v) != boundary.end();
}

const char* vertex_tag_name(VertexTag t) {
    switch (t) {
    case VertexTag::Three: return "three";
    case VertexTag::K1: return "k1";
    case VertexTag::K2: return "k2";
    case VertexTag::Four3: return "four3";
    case VertexTag::Heavy: return "heavy";
    case VertexTag::Special: return "special";
    case VertexTag::Other: return "other";
    }
    return "?";
}

const char* face_tag_name(FaceTag t) {
    switch (t) {
    case FaceTag::PoorI: return "poor-i";
    case FaceTag::PoorII: return "poor-ii";
    case FaceTag::Plain: return "plain";
    }
    return "?";
}

PlaneGraph PlaneGraph::from_rotations(std::vector<std::vector<int>> rotations) {
    PlaneGraph g;
    g.rot_ = std::move(rotations);
    const int n = g.num_vertices();

    long dir_edges = 0;
    for (int v = 0; v < n; ++v) {
        std::set<int> seen;
        for (int u : g.rot_[v]) {
            if (u < 0 || u >= n) fail(Err::Parse, "neighbor index out of range at vertex " + std::to_string(v));
            if (u == v) fail(Err::NotSimple, "loop at vertex " + std::to_string(v));
            if (!seen.insert(u).second)
                fail(Err::NotSimple, "repeated neighbor " + std::to_string(u) + " at vertex " + std::to_string(v));
        }
        dir_edges += static_cast<long>(g.rot_[v].size());
    }
    for (int v = 0; v < n; ++v)
        for (int u : g.rot_[v])
            if (std::find(g.rot_[u].begin(), g.rot_[u].end(), v) == g.rot_[u].end())
                fail(Err::NotSymmetric,
                     std::to_string(v) + " lists " + std::to_string(u) + " but not vice versa");
    g.num_edges_ = static_cast<int>(dir_edges / 2);

    // components
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = nc;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.rot_[v])
                if (comp[u] == -1) {
                    comp[u] = nc;
                    q.push(u);
                }
        }
        ++nc;
    }
    g.components_ = nc;

    g.trace_faces();

    // Euler relation per component: n_i - m_i + f_i = 2.
    std::vector<long> cn(nc, 0), cm(nc, 0), cf(nc, 0);
    for (int v = 0; v < n; ++v) {
        cn[comp[v]] += 1;
        cm[comp[v]] += g.degree(v);
    }
    for (const Face& f : g.faces_) {
        int c = f.boundary.empty() ? -1 : comp[f.boundary[0]];
        if (c >= 0) cf[c] += 1;
    }
    // empty faces were emitted for isolated vertices; credit them
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0) cf[comp[v]] += 1;
    for (int c = 0; c < nc; ++c) {
        long m2 = cm[c] / 2;
        if (cn[c] - m2 + cf[c] != 2)
            fail(Err::EmbeddingInconsistent,
                 "component " + std::to_string(c) + ": V-E+F = " + std::to_string(cn[c] - m2 + cf[c]));
    }

    g.compute_class_report();
    return g;
}

void PlaneGraph::trace_faces() {
    const int n = num_vertices();
    face_of_dir_.assign(n, {});
    for (int v = 0; v < n; ++v) face_of_dir_[v].assign(rot_[v].size(), -1);

    // index of u within rot_[v]
    std::vector<std::map<int, int>> pos(n);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < static_cast<int>(rot_[v].size()); ++i) pos[v][rot_[v][i]] = i;

    faces_.clear();
    for (int v = 0; v < n; ++v) {
        if (rot_[v].empty()) {
            Face f;
            faces_.push_back(f); // isolated vertex: the surrounding face
            continue;
        }
        for (int i = 0; i < static_cast<int>(rot_[v].size()); ++i) {
            if (face_of_dir_[v][i] != -1) continue;
            // trace the orbit of directed edge v -> rot_[v][i]:
            // next(u->w) = (w -> predecessor of u in the ccw rotation of w)
            Face f;
            int fid = static_cast<int>(faces_.size());
            int cu = v, ci = i;
            do {
                face_of_dir_[cu][ci] = fid;
                f.boundary.push_back(cu);
                int cw = rot_[cu][ci];
                int j = pos[cw][cu];
                int d = static_cast<int>(rot_[cw].size());
                int nj = (j - 1 + d) % d;
                cu = cw;
                ci = nj;
            } while (!(cu == v && ci == i));
            faces_.push_back(std::move(f));
        }
    }

    faces_at_.assign(n, {});
    for (int id = 0; id < static_cast<int>(faces_.size()); ++id)
        for (int v : faces_[id].boundary) faces_at_[v].push_back(id);
    for (int v = 0; v < n; ++v) std::sort(faces_at_[v].begin(), faces_at_[v].end());
}

int PlaneGraph::face_of(int u, int v) const {
    for (int i = 0; i < static_cast<int>(rot_[u].size()); ++i)
        if (rot_[u][i] == v) return face_of_dir_[u][i];
    fail(Err::Parse, "face_of on non-edge " + std::to_string(u) + "-" + std::to_string(v));
}

bool PlaneGraph::adjacent(int u, int v) const {
    return std::find(rot_[u].begin(), rot_[u].end(), v) != rot_[u].end();
}

std::vector<std::pair<int, int>> PlaneGraph::edges() const {
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < num_vertices(); ++v)
        for (int u : rot_[v])
            if (v < u) es.emplace_back(v, u);
    std::sort(es.begin(), es.end());
    return es;
}

std::optional<int> PlaneGraph::find_face(const std::vector<int>& vertex_set) const {
    std::vector<int> want(vertex_set);
    std::sort(want.begin(), want.end());
    for (int id = 0; id < static_cast<int>(faces_.size()); ++id) {
        std::vector<int> have(faces_[id].boundary);
        std::sort(have.begin(), have.end());
        if (have == want) return id;
    }
    return std::nullopt;
}

int PlaneGraph::distance(int u, int v) const {
    if (u == v) return 0;
    std::vector<int> dist(num_vertices(), -1);
    std::queue<int> q;
    dist[u] = 0;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : rot_[x])
            if (dist[y] == -1) {
                dist[y] = dist[x] + 1;
                if (y == v) return dist[y];
                q.push(y);
            }
    }
    return -1; // unreachable (disconnected)
}

// --- class detectors ---

std::optional<std::array<int, 4>> find_four_cycle(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    // Any 4-cycle a-b-c-d has a pair {a,c} with two common neighbors.
    for (int a = 0; a < n; ++a) {
        for (int c = a + 1; c < n; ++c) {
            int w1 = -1, w2 = -1;
            for (int b : adj[a]) {
                if (b == c) continue;
                if (std::find(adj[c].begin(), adj[c].end(), b) != adj[c].end()) {
                    if (w1 == -1)
                        w1 = b;
                    else {
                        w2 = b;
                        break;
                    }
                }
            }
            if (w2 != -1) return std::array<int, 4>{a, w1, c, w2};
        }
    }
    return std::nullopt;
}

static std::vector<std::array<int, 3>> all_triangles(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::array<int, 3>> ts;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) {
            if (v <= u) continue;
            for (int w : adj[u]) {
                if (w <= v) continue;
                if (std::find(adj[v].begin(), adj[v].end(), w) != adj[v].end())
                    ts.push_back({u, v, w});
            }
        }
    return ts;
}

std::optional<std::pair<std::array<int, 3>, std::array<int, 3>>>
find_intersecting_triangles(const std::vector<std::vector<int>>& adj) {
    auto ts = all_triangles(adj);
    const int n = static_cast<int>(adj.size());
    std::vector<int> first(n, -1);
    for (int i = 0; i < static_cast<int>(ts.size()); ++i)
        for (int v : ts[i]) {
            if (first[v] != -1) return std::make_pair(ts[first[v]], ts[i]);
            first[v] = i;
        }
    return std::nullopt;
}

void PlaneGraph::compute_class_report() {
    class_report_.four_cycle = find_four_cycle(rot_);
    class_report_.intersecting_triangles = find_intersecting_triangles(rot_);
}

// --- structure queries ---

PendentStructure PlaneGraph::pendent_3_structure(int v) const {
    PendentStructure ps;
    std::set<int> nbrs;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
        const Face& face = faces_[f];
        if (face.length() != 3 || face.contains(v)) continue;
        bool hit = false;
        for (int u : face.boundary)
            if (degree(u) == 3 && adjacent(u, v)) {
                hit = true;
                nbrs.insert(u);
            }
        if (hit) ps.faces.push_back(f);
    }
    ps.neighbors.assign(nbrs.begin(), nbrs.end());
    return ps;
}

VertexClass PlaneGraph::classify_vertex(int v) const {
    if (!class_report_.in_class()) fail(Err::OutOfClass, "classify_vertex needs an in-class graph");
    const int d = degree(v);
    if (d < 3) fail(Err::OutOfClass, "classify_vertex needs d(v) >= 3, got " + std::to_string(d));

    int inc3 = 0;
    {
        std::set<int> seen;
        for (int f : faces_at_[v])
            if (faces_[f].length() == 3 && seen.insert(f).second) ++inc3;
    }
    const int pend = static_cast<int>(pendent_3_structure(v).faces.size());

    VertexClass vc;
    vc.degree = d;
    vc.incident_3_faces = inc3;
    vc.pendent_3_faces = pend;
    const bool on3 = inc3 > 0;
    if (d == 3)
        vc.tag = VertexTag::Three;
    else if (pend == d - 3)
        vc.tag = on3 ? VertexTag::K1 : VertexTag::K2;
    else if (d == 4 && on3 && pend == 0)
        vc.tag = VertexTag::Four3;
    else if ((d >= 5 && pend == d - 4) || (d == 4 && !on3 && pend == 0))
        vc.tag = VertexTag::Heavy;
    else if (d >= 5 && pend <= d - 5)
        vc.tag = VertexTag::Special;
    else
        vc.tag = VertexTag::Other;
    return vc;
}

FaceClass PlaneGraph::classify_5_face(int face_id) const {
    if (!class_report_.in_class()) fail(Err::OutOfClass, "classify_5_face needs an in-class graph");
    const Face& f = faces_[face_id];
    if (f.length() != 5) fail(Err::NotA5Face, "face has length " + std::to_string(f.length()));

    FaceClass fc;
    fc.tag = FaceTag::Plain;

    // weakly incident: vertices of 3-faces sharing an edge with f
    std::set<int> weak;
    for (int i = 0; i < 5; ++i) {
        int a = f.boundary[i], b = f.boundary[(i + 1) % 5];
        int other = face_of(b, a); // face on the other side of edge a-b
        if (other == face_id) continue;
        if (faces_[other].length() == 3)
            for (int w : faces_[other].boundary)
                if (!f.contains(w)) weak.insert(w);
    }
    fc.weakly_incident.assign(weak.begin(), weak.end());

    std::set<int> distinct(f.boundary.begin(), f.boundary.end());
    if (distinct.size() != 5) return fc; // repeated vertex: no poor pattern

    std::vector<int> threes, rest;
    for (int v : f.boundary)
        (degree(v) == 3 ? threes : rest).push_back(v);
    if (threes.size() != 1 || rest.size() != 4) return fc;

    std::vector<VertexClass> cls;
    for (int v : rest) cls.push_back(classify_vertex(v));

    auto is_41 = [](const VertexClass& c) { return c.tag == VertexTag::K1 && c.degree == 4; };
    auto is_43 = [](const VertexClass& c) { return c.tag == VertexTag::Four3; };
    auto pend_d4 = [](const VertexClass& c) { return c.degree >= 4 && c.pendent_3_faces == c.degree - 4; };
    auto pend_d3 = [](const VertexClass& c) { return c.degree >= 4 && c.pendent_3_faces == c.degree - 3; };

    // role multiset match over the 4 permutations of the non-3-vertices
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end());
    auto match = [&](auto r0, auto r1, auto r2, auto r3) {
        std::array<int, 4> p = idx;
        do {
            if (r0(cls[p[0]]) && r1(cls[p[1]]) && r2(cls[p[2]]) && r3(cls[p[3]])) return true;
        } while (std::next_permutation(p.begin(), p.end()));
        return false;
    };
    if (match(is_41, is_41, is_43, pend_d4))
        fc.tag = FaceTag::PoorI;
    else if (match(is_43, is_43, is_41, pend_d3))
        fc.tag = FaceTag::PoorII;
    return fc;
}

std::pair<PlaneGraph, std::vector<int>> PlaneGraph::induced(const std::vector<int>& keep) const {
    std::vector<int> old_ids(keep);
    std::sort(old_ids.begin(), old_ids.end());
    old_ids.erase(std::unique(old_ids.begin(), old_ids.end()), old_ids.end());
    std::vector<int> new_id(num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(old_ids.size()); ++i) new_id[old_ids[i]] = i;

    std::vector<std::vector<int>> rot(old_ids.size());
    for (int i = 0; i < static_cast<int>(old_ids.size()); ++i)
        for (int u : rot_[old_ids[i]])
            if (new_id[u] != -1) rot[i].push_back(new_id[u]);
    return {from_rotations(std::move(rot)), old_ids};
}

// --- .pg format ---

PlaneGraph parse_pg(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<int> n;
    std::vector<std::vector<int>> rot;
    std::vector<bool> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!n) {
            std::string kw;
            if (!(ls >> kw)) continue; // blank
            int count = 0;
            if (kw != "planar" || !(ls >> count) || count < 0)
                fail(Err::Parse, "line " + std::to_string(lineno) + ": expected 'planar <n>'");
            n = count;
            rot.assign(count, {});
            seen.assign(count, false);
            continue;
        }
        std::string head;
        if (!(ls >> head)) continue;
        if (head.empty() || head.back() != ':')
            fail(Err::Parse, "line " + std::to_string(lineno) + ": expected 'v:'");
        int v = -1;
        try {
            v = std::stoi(head.substr(0, head.size() - 1));
        } catch (...) {
            fail(Err::Parse, "line " + std::to_string(lineno) + ": bad vertex id");
        }
        if (v < 0 || v >= *n) fail(Err::Parse, "line " + std::to_string(lineno) + ": vertex id out of range");
        if (seen[v]) fail(Err::Parse, "line " + std::to_string(lineno) + ": duplicate rotation for " + std::to_string(v));
        seen[v] = true;
        int u;
        while (ls >> u) rot[v].push_back(u);
        if (!ls.eof()) fail(Err::Parse, "line " + std::to_string(lineno) + ": bad neighbor list");
    }
    if (!n) fail(Err::Parse, "missing 'planar <n>' header");
    for (int v = 0; v < *n; ++v)
        if (!seen[v]) fail(Err::Parse, "missing rotation line for vertex " + std::to_string(v));
    return PlaneGraph::from_rotations(std::move(rot));
}

PlaneGraph load_pg(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pg(ss.str());
}

std::string write_pg(const PlaneGraph& g) {
    std::ostringstream out;
    out << "planar " << g.num_vertices() << "\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        out << v << ":";
        for (int u : g.neighbors(v)) out << " " << u;
        out << "\n";
    }
    return out.str();
}

} // namespace flexdp
