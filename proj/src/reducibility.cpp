#include "flexdp/reducibility.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace flexdp {

const char* rc_name(RcKind k) {
    static const char* names[] = {"terminal", "RC1", "RC2", "RC3", "RC4",
                                  "RC5",      "RC6", "RC7", "RC8", "RC9"};
    return names[static_cast<int>(k)];
}

std::vector<int> ReducibleMatch::removed() const {
    std::vector<int> out;
    std::set_difference(block.begin(), block.end(), boundary.begin(), boundary.end(),
                        std::back_inserter(out));
    return out;
}

bool is_f_forbidding(const PlaneGraph& host, const std::vector<int>& I) {
    std::vector<std::vector<int>> adj = host.rotations();
    const int apex = static_cast<int>(adj.size());
    adj.emplace_back();
    for (int v : I) {
        adj[apex].push_back(v);
        adj[v].push_back(apex);
    }
    return !find_four_cycle(adj) && !find_intersecting_triangles(adj);
}

std::vector<int> boundary_sizes(const PlaneGraph& host, const std::vector<int>& S,
                                const std::vector<int>& B, int k) {
    std::vector<int> removed;
    std::set_difference(S.begin(), S.end(), B.begin(), B.end(), std::back_inserter(removed));
    std::vector<int> sizes;
    for (int v : removed) {
        int dq = 0;
        for (int u : host.neighbors(v))
            if (std::binary_search(removed.begin(), removed.end(), u)) ++dq;
        sizes.push_back(k - host.degree(v) + dq);
    }
    return sizes;
}

// --- universally quantified colorability engine ---

namespace {

constexpr int kMaxCore = 16;
constexpr int kMaxCoreEdges = 48;

// Backtracking existence check over one compact cover. The core graph
// structure is fixed across the cover stream, so earlier-neighbor lists are
// precomputed once.
struct CoreSolver {
    int n = 0;
    std::vector<int> sizes;
    struct Inc {
        int u;        // earlier neighbor
        int e;        // edge index in core.edges
        bool forward; // true if u is the first endpoint of the edge
    };
    std::vector<std::vector<Inc>> earlier;
    std::int8_t fwd[kMaxCoreEdges][4];
    std::int8_t bwd[kMaxCoreEdges][4];
    std::int8_t color[kMaxCore];
    std::uint64_t nodes = 0;

    void init(const SmallGraph& core, std::vector<int> sz) {
        n = core.n;
        sizes = std::move(sz);
        earlier.assign(n, {});
        for (int e = 0; e < static_cast<int>(core.edges.size()); ++e) {
            auto [a, b] = core.edges[e];
            earlier[b].push_back({a, e, true});
        }
    }

    void load(const SmallGraph& core, const CompactCover& cc) {
        for (int e = 0; e < static_cast<int>(core.edges.size()); ++e) {
            for (int c = 0; c < 4; ++c) fwd[e][c] = bwd[e][c] = -1;
            for (int i = 0; i < cc[e].count; ++i) {
                auto [x, y] = cc[e].pairs[i];
                fwd[e][x] = y;
                bwd[e][y] = x;
            }
        }
    }

    bool rec(int v) {
        ++nodes;
        if (v == n) return true;
        unsigned avail = (1u << sizes[v]) - 1u;
        for (const Inc& in : earlier[v]) {
            int blocked = in.forward ? fwd[in.e][color[in.u]] : bwd[in.e][color[in.u]];
            if (blocked >= 0) avail &= ~(1u << blocked);
        }
        while (avail) {
            int c = __builtin_ctz(avail);
            avail &= avail - 1;
            color[v] = static_cast<std::int8_t>(c);
            if (rec(v + 1)) return true;
        }
        return false;
    }

    bool exists() { return rec(0); }
};

} // namespace

bool forall_covers_colorable(const SmallGraph& q, const std::vector<int>& sizes,
                             const CheckOptions& opts, std::uint64_t& covers_checked,
                             std::optional<Cover>* counterexample) {
    if (q.n == 0) return true;
    if (q.n > opts.max_block)
        fail(Err::BudgetExceeded, "block size " + std::to_string(q.n) + " exceeds budget");
    for (int v = 0; v < q.n; ++v) {
        if (sizes[v] > opts.max_list) fail(Err::BudgetExceeded, "list size exceeds budget");
        if (sizes[v] <= 0) {
            // a vertex with an empty list: every cover is uncolorable
            if (counterexample) {
                Cover c;
                c.sizes = sizes;
                *counterexample = c;
            }
            return false;
        }
    }

    // Strip vertices that can always be colored last: if size(v) exceeds the
    // number of remaining neighbors, each of which blocks at most one color,
    // then the quantified claim on q and on q - v are equivalent.
    std::vector<bool> alive(q.n, true);
    int alive_count = q.n;
    if (opts.strip) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < q.n && !changed; ++v) {
                if (!alive[v]) continue;
                int deg = 0;
                for (int u : q.adj[v])
                    if (alive[u]) ++deg;
                if (sizes[v] >= deg + 1) {
                    alive[v] = false;
                    --alive_count;
                    changed = true;
                }
            }
        }
    }
    if (alive_count == 0) return true;

    std::vector<int> core_ids;
    for (int v = 0; v < q.n; ++v)
        if (alive[v]) core_ids.push_back(v);
    std::vector<int> local(q.n, -1);
    for (int i = 0; i < static_cast<int>(core_ids.size()); ++i) local[core_ids[i]] = i;
    std::vector<std::pair<int, int>> core_edges;
    for (auto [u, v] : q.edges)
        if (alive[u] && alive[v]) core_edges.push_back({local[u], local[v]});
    SmallGraph core = SmallGraph::from_edges(alive_count, core_edges);
    std::vector<int> core_sizes;
    for (int v : core_ids) core_sizes.push_back(sizes[v]);

    CoreSolver solver;
    solver.init(core, core_sizes);

    std::optional<CompactCover> bad;
    std::uint64_t seen = for_each_cover(core, core_sizes, opts.dedup_relabel, opts.budget,
                                        [&](const CompactCover& cc) {
                                            solver.load(core, cc);
                                            if (solver.nodes > opts.budget.coloring_states)
                                                fail(Err::BudgetExceeded, "coloring search states");
                                            if (!solver.exists()) {
                                                bad = cc;
                                                return false;
                                            }
                                            return true;
                                        });
    covers_checked += seen;
    if (!bad) return true;

    if (counterexample) {
        // Lift the failing core cover to all of q: stripped vertices keep
        // their lists and empty matchings, so any q-coloring would restrict
        // to a core coloring, which does not exist.
        Cover full;
        full.sizes = sizes;
        for (std::size_t e = 0; e < core.edges.size(); ++e) {
            if ((*bad)[e].count == 0) continue;
            Matching m;
            for (int i = 0; i < (*bad)[e].count; ++i)
                m.pairs.emplace_back((*bad)[e].pairs[i].first, (*bad)[e].pairs[i].second);
            std::sort(m.pairs.begin(), m.pairs.end());
            int u = core_ids[core.edges[e].first], v = core_ids[core.edges[e].second];
            full.matchings[{std::min(u, v), std::max(u, v)}] = std::move(m);
        }
        *counterexample = std::move(full);
    }
    return false;
}

namespace {

struct BlockContext {
    std::vector<int> removed; // host ids, sorted
    SmallGraph q;             // induced on removed (local indices)
    std::vector<int> base;    // base sizes aligned with removed
};

BlockContext make_block(const PlaneGraph& host, const std::vector<int>& S,
                        const std::vector<int>& B, int k) {
    std::vector<int> sset(S), bset(B);
    std::sort(sset.begin(), sset.end());
    std::sort(bset.begin(), bset.end());
    if (!std::includes(sset.begin(), sset.end(), bset.begin(), bset.end()))
        fail(Err::InvalidSizes, "boundary not a subset of the block");

    BlockContext ctx;
    std::set_difference(sset.begin(), sset.end(), bset.begin(), bset.end(),
                        std::back_inserter(ctx.removed));
    if (ctx.removed.empty()) fail(Err::InvalidSizes, "boundary must be a proper subset");
    std::vector<int> local(host.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(ctx.removed.size()); ++i) local[ctx.removed[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (int v : ctx.removed)
        for (int u : host.neighbors(v))
            if (local[u] >= 0 && local[u] > local[v]) edges.push_back({local[v], local[u]});
    ctx.q = SmallGraph::from_edges(static_cast<int>(ctx.removed.size()), edges);
    ctx.base = boundary_sizes(host, sset, bset, k);
    return ctx;
}

std::string id_list(const std::vector<int>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ids[i]);
    }
    return s;
}

} // namespace

CheckResult check_fix(const PlaneGraph& host, const std::vector<int>& S,
                      const std::vector<int>& B, int k, const CheckOptions& opts) {
    BlockContext ctx = make_block(host, S, B, k);
    for (std::size_t i = 0; i < ctx.base.size(); ++i)
        if (ctx.base[i] < 1)
            fail(Err::InvalidSizes, "size " + std::to_string(ctx.base[i]) + " at vertex " +
                                        std::to_string(ctx.removed[i]));
    CheckResult res;
    for (std::size_t i = 0; i < ctx.removed.size(); ++i) {
        std::vector<int> sizes(ctx.base);
        sizes[i] = 1;
        std::optional<Cover> cex;
        if (!forall_covers_colorable(ctx.q, sizes, opts, res.covers_checked, &cex)) {
            res.ok = false;
            res.counterexample = CounterexampleCover{
                ctx.removed, sizes, std::move(*cex), "fix v=" + std::to_string(ctx.removed[i])};
            return res;
        }
    }
    return res;
}

CheckResult check_forb(const PlaneGraph& host, const std::vector<int>& S,
                       const std::vector<int>& B, int k, const CheckOptions& opts) {
    BlockContext ctx = make_block(host, S, B, k);
    CheckResult res;
    const int max_i = std::max(0, k - 2);
    const int nq = static_cast<int>(ctx.removed.size());

    std::vector<std::vector<int>> subsets;
    subsets.push_back({});
    std::vector<int> cur;
    std::function<void(int, int)> gen = [&](int from, int want) {
        if (static_cast<int>(cur.size()) == want) {
            subsets.push_back(cur);
            return;
        }
        for (int i = from; i < nq; ++i) {
            cur.push_back(i);
            gen(i + 1, want);
            cur.pop_back();
        }
    };
    for (int size = 1; size <= std::min(max_i, nq); ++size) gen(0, size);

    for (const auto& sub : subsets) {
        std::vector<int> I;
        for (int i : sub) I.push_back(ctx.removed[i]);
        bool forbidding;
        if (opts.forbid_host) {
            std::vector<int> J;
            for (int v : I) J.push_back(opts.forbid_translate.empty() ? v : opts.forbid_translate[v]);
            forbidding = is_f_forbidding(*opts.forbid_host, J);
        } else {
            forbidding = is_f_forbidding(host, I);
        }
        if (!forbidding) {
            res.skipped_sets.push_back(I);
            continue;
        }
        res.forbidding_sets.push_back(I);
        std::vector<int> sizes(ctx.base);
        for (int i : sub) sizes[i] -= 1;
        std::optional<Cover> cex;
        if (!forall_covers_colorable(ctx.q, sizes, opts, res.covers_checked, &cex)) {
            res.ok = false;
            res.counterexample =
                CounterexampleCover{ctx.removed, sizes, std::move(*cex), "forb I={" + id_list(I) + "}"};
            return res;
        }
    }
    return res;
}

VerifyReport verify_match(const PlaneGraph& host, const ReducibleMatch& m, int k,
                          const CheckOptions& opts) {
    VerifyReport rep;
    rep.sizes = boundary_sizes(host, m.block, m.boundary, k);
    rep.block_size = static_cast<int>(m.removed().size());
    rep.fix = check_fix(host, m.block, m.boundary, k, opts);
    if (rep.fix.ok) rep.forb = check_forb(host, m.block, m.boundary, k, opts);
    rep.ok = rep.fix.ok && rep.forb.ok;
    return rep;
}

// --- structural matchers ---

namespace {

std::vector<int> sorted_neighbors(const PlaneGraph& g, int v) {
    std::vector<int> nb(g.neighbors(v));
    std::sort(nb.begin(), nb.end());
    return nb;
}

std::vector<int> three_faces_at(const PlaneGraph& g, int v) {
    std::vector<int> out;
    std::set<int> seen;
    for (int f : g.faces_at(v))
        if (g.face(f).length() == 3 && seen.insert(f).second) out.push_back(f);
    return out;
}

ReducibleMatch build_match(RcKind kind, std::set<int> S, std::set<int> B, std::vector<int> key) {
    ReducibleMatch m;
    m.kind = kind;
    m.block.assign(S.begin(), S.end());
    m.boundary.assign(B.begin(), B.end());
    m.key = std::move(key);
    return m;
}

// A ("pendent union"): every vertex of every pendent 3-face of the given
// vertices; A1: the 3-vertices among them.
void pendent_union(const PlaneGraph& g, const std::vector<int>& verts, std::set<int>& A,
                   std::set<int>& A1) {
    for (int v : verts)
        for (int f : g.pendent_3_structure(v).faces)
            for (int x : g.face(f).boundary) {
                A.insert(x);
                if (g.degree(x) == 3) A1.insert(x);
            }
}

int pendent_neighbors_outside(const PlaneGraph& g, int v, const std::vector<int>& path) {
    int count = 0;
    for (int u : g.pendent_3_structure(v).neighbors)
        if (std::find(path.begin(), path.end(), u) == path.end()) ++count;
    return count;
}

} // namespace

std::optional<ReducibleMatch> match_rc1(const PlaneGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) <= 2) return build_match(RcKind::RC1, {v}, {}, {v});
    return std::nullopt;
}

std::optional<ReducibleMatch> match_rc2(const PlaneGraph& g) {
    std::optional<ReducibleMatch> best;
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        const Face& face = g.face(f);
        if (face.length() != 3) continue;
        std::vector<int> threes, others;
        for (int v : face.boundary)
            (g.degree(v) == 3 ? threes : others).push_back(v);
        if (threes.size() < 2) continue;
        std::sort(threes.begin(), threes.end());
        int u = threes[0], v = threes[1];
        int w = -1;
        for (int x : face.boundary)
            if (x != u && x != v) w = x;
        std::vector<int> key{u, v, w};
        if (!best || key < best->key)
            best = build_match(RcKind::RC2, {u, v, w}, {w}, key);
    }
    return best;
}

std::optional<ReducibleMatch> match_rc3(const PlaneGraph& g) {
    std::optional<ReducibleMatch> best;
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        const Face& face = g.face(f);
        if (face.length() != 5) continue;
        std::set<int> distinct(face.boundary.begin(), face.boundary.end());
        if (distinct.size() != 5) continue;
        for (int rot = 0; rot < 5; ++rot) {
            for (int dir : {1, 4}) {
                std::array<int, 5> b{};
                for (int i = 0; i < 5; ++i) b[i] = face.boundary[(rot + i * dir) % 5];
                if (g.degree(b[0]) != 3 || g.degree(b[3]) != 3) continue;
                if (g.degree(b[1]) != 4 || g.degree(b[2]) != 4) continue;
                auto t1 = three_faces_at(g, b[1]), t2 = three_faces_at(g, b[2]);
                if (t1.empty() || t2.empty()) continue;
                std::vector<int> key(b.begin(), b.end());
                if (best && !(key < best->key)) continue;
                std::set<int> S(face.boundary.begin(), face.boundary.end());
                std::set<int> B{b[4]};
                for (int tf : {t1[0], t2[0]})
                    for (int x : g.face(tf).boundary) {
                        S.insert(x);
                        if (!distinct.count(x)) B.insert(x);
                    }
                best = build_match(RcKind::RC3, S, B, key);
            }
        }
    }
    return best;
}

static std::optional<ReducibleMatch> match_star(const PlaneGraph& g, RcKind kind, int slack,
                                                bool need_3face) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        const int d = g.degree(v);
        if (d < 3) continue;
        if (need_3face && three_faces_at(g, v).empty()) continue;
        std::vector<int> A;
        for (int u : sorted_neighbors(g, v))
            if (g.degree(u) == 3) A.push_back(u);
        if (static_cast<int>(A.size()) < d - slack) continue;
        std::set<int> S(A.begin(), A.end());
        std::set<int> B;
        for (int u : g.neighbors(v)) {
            S.insert(u);
            if (g.degree(u) != 3) B.insert(u);
        }
        S.insert(v);
        return build_match(kind, S, B, {v});
    }
    return std::nullopt;
}

std::optional<ReducibleMatch> match_rc4(const PlaneGraph& g) {
    return match_star(g, RcKind::RC4, 1, false);
}

std::optional<ReducibleMatch> match_rc5(const PlaneGraph& g) {
    return match_star(g, RcKind::RC5, 2, true);
}

std::optional<ReducibleMatch> match_rc6(const PlaneGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        const int d = g.degree(v);
        if (d < 3) continue;
        PendentStructure ps = g.pendent_3_structure(v);
        if (static_cast<int>(ps.faces.size()) < d - 2) continue;
        std::set<int> A, A1;
        pendent_union(g, {v}, A, A1);
        std::set<int> S(A.begin(), A.end());
        for (int u : g.neighbors(v)) S.insert(u);
        std::set<int> B;
        for (int x : S)
            if (!A1.count(x)) B.insert(x);
        S.insert(v);
        B.erase(v);
        return build_match(RcKind::RC6, S, B, {v});
    }
    return std::nullopt;
}

std::optional<ReducibleMatch> match_rc7(const PlaneGraph& g) {
    for (int v1 = 0; v1 < g.num_vertices(); ++v1) {
        if (g.degree(v1) < 3) continue;
        for (int v2 : sorted_neighbors(g, v1)) {
            if (g.degree(v2) < 3) continue;
            for (int v3 : sorted_neighbors(g, v2)) {
                if (v3 == v1 || g.degree(v3) < 4) continue;
                std::vector<int> path{v1, v2, v3};
                bool ok = true;
                for (int v : path)
                    if (pendent_neighbors_outside(g, v, path) < g.degree(v) - 3) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                std::set<int> A, A1;
                pendent_union(g, path, A, A1);
                std::set<int> S(A.begin(), A.end());
                for (int v : path)
                    for (int u : g.neighbors(v)) S.insert(u);
                for (int v : path) S.insert(v);
                std::set<int> B;
                for (int x : S)
                    if (!A1.count(x) && std::find(path.begin(), path.end(), x) == path.end())
                        B.insert(x);
                return build_match(RcKind::RC7, S, B, path);
            }
        }
    }
    return std::nullopt;
}

std::optional<ReducibleMatch> match_rc8(const PlaneGraph& g) {
    for (int v1 = 0; v1 < g.num_vertices(); ++v1) {
        if (g.degree(v1) < 3) continue;
        for (int v2 : sorted_neighbors(g, v1)) {
            if (g.degree(v2) != 4 || three_faces_at(g, v2).empty()) continue;
            for (int v3 : sorted_neighbors(g, v2)) {
                if (v3 == v1 || g.degree(v3) < 3) continue;
                for (int v4 : sorted_neighbors(g, v3)) {
                    if (v4 == v1 || v4 == v2 || g.degree(v4) < 3) continue;
                    std::vector<int> path{v1, v2, v3, v4};
                    bool ok = true;
                    for (int v : {v1, v3, v4})
                        if (pendent_neighbors_outside(g, v, path) < g.degree(v) - 3) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    std::set<int> A, A1;
                    pendent_union(g, path, A, A1);
                    std::set<int> S(A.begin(), A.end());
                    for (int v : path)
                        for (int u : g.neighbors(v)) S.insert(u);
                    for (int v : path) S.insert(v);
                    std::set<int> B;
                    for (int x : S)
                        if (!A1.count(x) && std::find(path.begin(), path.end(), x) == path.end())
                            B.insert(x);
                    return build_match(RcKind::RC8, S, B, path);
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<ReducibleMatch> match_rc9(const PlaneGraph& g) {
    std::optional<ReducibleMatch> best;
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        const Face& face = g.face(f);
        if (face.length() != 5) continue;
        std::set<int> distinct(face.boundary.begin(), face.boundary.end());
        if (distinct.size() != 5) continue;
        FaceClass fc = g.classify_5_face(f);
        if (fc.tag == FaceTag::Plain) continue;
        bool special_weak = false;
        for (int w : fc.weakly_incident)
            if (g.degree(w) >= 5 && g.classify_vertex(w).tag == VertexTag::Special) {
                special_weak = true;
                break;
            }
        if (special_weak) continue;

        // locate the unique 3-vertex and its 3-face; orient so the 3-face
        // sits on the v1-v5 edge
        int pos = -1;
        for (int i = 0; i < 5; ++i)
            if (g.degree(face.boundary[i]) == 3) pos = i;
        if (pos < 0) continue;
        int v1 = face.boundary[pos];
        auto tfs = three_faces_at(g, v1);
        if (tfs.empty()) continue; // the matching rule requires v1 on a 3-face
        const Face& tri = g.face(tfs[0]);
        int succ = face.boundary[(pos + 1) % 5];
        int pred = face.boundary[(pos + 4) % 5];
        std::array<int, 5> b{};
        if (tri.contains(pred)) {
            for (int i = 0; i < 5; ++i) b[i] = face.boundary[(pos + i) % 5];
        } else if (tri.contains(succ)) {
            for (int i = 0; i < 5; ++i) b[i] = face.boundary[(pos + 5 - i) % 5];
        } else {
            continue;
        }
        int u = -1;
        for (int x : tri.boundary)
            if (x != v1 && x != b[4]) u = x;

        std::vector<int> key(b.begin(), b.end());
        if (best && !(key < best->key)) continue;

        std::vector<int> hosts(b.begin(), b.end());
        hosts.push_back(u);
        std::set<int> A, A1;
        pendent_union(g, hosts, A, A1);
        std::set<int> S(A.begin(), A.end());
        for (int v : hosts)
            for (int x : g.neighbors(v)) S.insert(x);
        for (int v : hosts) S.insert(v);
        std::set<int> B;
        for (int x : S)
            if (!A1.count(x) && !distinct.count(x) && x != u) B.insert(x);
        best = build_match(RcKind::RC9, S, B, key);
    }
    return best;
}

std::optional<ReducibleMatch> find_reducible(const PlaneGraph& g, int k) {
    (void)k;
    if (!g.class_membership().in_class())
        fail(Err::OutOfClass, "find_reducible requires a graph without 4-cycles and intersecting triangles");
    if (g.num_vertices() == 0) return std::nullopt;
    using Fn = std::optional<ReducibleMatch> (*)(const PlaneGraph&);
    static const Fn matchers[] = {match_rc1, match_rc2, match_rc3, match_rc4, match_rc5,
                                  match_rc6, match_rc7, match_rc8, match_rc9};
    for (Fn fn : matchers)
        if (auto m = fn(g)) return m;
    return std::nullopt;
}

} // namespace flexdp
