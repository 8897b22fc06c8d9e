#include "flexdp/cover.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "flexdp/plane_graph.hpp"

namespace flexdp {

SmallGraph SmallGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    SmallGraph g;
    g.n = n;
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        if (u < 0 || v >= n || u == v) fail(Err::Parse, "bad edge");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

SmallGraph SmallGraph::of(const PlaneGraph& g) {
    return from_edges(g.num_vertices(), g.edges());
}

int Matching::image_of(int a) const {
    for (auto [x, y] : pairs)
        if (x == a) return y;
    return -1;
}

int Matching::preimage_of(int b) const {
    for (auto [x, y] : pairs)
        if (y == b) return x;
    return -1;
}

const Matching* Cover::matching(int u, int v) const {
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    auto it = matchings.find(key);
    if (it == matchings.end() || it->second.pairs.empty()) return nullptr;
    return &it->second;
}

int Cover::blocked_color(int u, int cu, int v) const {
    const Matching* m = matching(u, v);
    if (!m) return -1;
    return u < v ? m->image_of(cu) : m->preimage_of(cu);
}

bool valid_coloring(const SmallGraph& g, const Cover& c, const Coloring& phi) {
    if (static_cast<int>(phi.choice.size()) != g.n) return false;
    for (int v = 0; v < g.n; ++v)
        if (phi.choice[v] < 0 || phi.choice[v] >= c.sizes[v]) return false;
    for (auto [u, v] : g.edges)
        if (c.blocked_color(u, phi.choice[u], v) == phi.choice[v]) return false;
    return true;
}

Cover cover_from_lists(const SmallGraph& g, const std::vector<std::vector<std::string>>& lists) {
    Cover c;
    std::vector<std::vector<std::string>> sorted(lists);
    for (auto& l : sorted) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        if (l.empty()) fail(Err::Parse, "empty color list");
    }
    for (auto& l : sorted) c.sizes.push_back(static_cast<int>(l.size()));
    for (auto [u, v] : g.edges) {
        Matching m;
        for (int i = 0; i < static_cast<int>(sorted[u].size()); ++i) {
            auto it = std::find(sorted[v].begin(), sorted[v].end(), sorted[u][i]);
            if (it != sorted[v].end())
                m.pairs.emplace_back(i, static_cast<int>(it - sorted[v].begin()));
        }
        if (!m.pairs.empty()) c.matchings[{u, v}] = std::move(m);
    }
    return c;
}

Cover identity_cover(const SmallGraph& g, int k) {
    Cover c;
    c.sizes.assign(g.n, k);
    Matching id;
    for (int i = 0; i < k; ++i) id.pairs.emplace_back(i, i);
    for (auto [u, v] : g.edges) c.matchings[{u, v}] = id;
    return c;
}

std::vector<Coloring> enumerate_colorings(const SmallGraph& g, const Cover& c,
                                          const EnumBudget& budget) {
    std::vector<Coloring> out;
    Coloring phi;
    phi.choice.assign(g.n, -1);
    std::uint64_t states = 0;
    for (int v = 0; v < g.n; ++v)
        if (c.sizes[v] <= 0) return out;

    std::function<void(int)> rec = [&](int v) {
        if (v == g.n) {
            out.push_back(phi);
            return;
        }
        for (int col = 0; col < c.sizes[v]; ++col) {
            if (++states > budget.coloring_states)
                fail(Err::BudgetExceeded, "coloring enumeration states");
            bool ok = true;
            for (int u : g.adj[v]) {
                if (u >= v || phi.choice[u] < 0) continue;
                if (c.blocked_color(u, phi.choice[u], v) == col) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            phi.choice[v] = col;
            rec(v + 1);
            phi.choice[v] = -1;
        }
    };
    rec(0);
    return out;
}

bool is_colorable(const SmallGraph& g, const Cover& c, const EnumBudget& budget) {
    for (int v = 0; v < g.n; ++v)
        if (c.sizes[v] <= 0) return false;
    Coloring phi;
    phi.choice.assign(g.n, -1);
    std::uint64_t states = 0;
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == g.n) return true;
        for (int col = 0; col < c.sizes[v]; ++col) {
            if (++states > budget.coloring_states)
                fail(Err::BudgetExceeded, "coloring search states");
            bool ok = true;
            for (int u : g.adj[v]) {
                if (u >= v || phi.choice[u] < 0) continue;
                if (c.blocked_color(u, phi.choice[u], v) == col) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            phi.choice[v] = col;
            if (rec(v + 1)) return true;
            phi.choice[v] = -1;
        }
        return false;
    };
    return rec(0);
}

const std::vector<Matching>& partial_injections(int a, int b) {
    static std::map<std::pair<int, int>, std::vector<Matching>> cache;
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    if (a < 0 || b < 0 || a > 6 || b > 6) fail(Err::BudgetExceeded, "list size beyond table");

    std::vector<Matching> out;
    Matching cur;
    std::vector<bool> used(b, false);
    std::function<void(int)> rec = [&](int left) {
        if (left == a) {
            out.push_back(cur);
            return;
        }
        rec(left + 1); // left color unmatched
        for (int r = 0; r < b; ++r) {
            if (used[r]) continue;
            used[r] = true;
            cur.pairs.emplace_back(left, r);
            rec(left + 1);
            cur.pairs.pop_back();
            used[r] = false;
        }
    };
    rec(0);
    return cache.emplace(std::make_pair(a, b), std::move(out)).first->second;
}

// --- cover streams ---

namespace {

// Edge processing order: spanning-forest edges in BFS discovery order first
// (smallest roots), then the remaining edges sorted. Pinned-prefix
// canonicalization branches least this way.
std::vector<int> edge_processing_order(const SmallGraph& g) {
    std::vector<int> order;
    std::vector<bool> seen(g.n, false), used(g.edges.size(), false);
    std::map<std::pair<int, int>, int> eid;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) eid[g.edges[i]] = i;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.adj[v])
                if (!seen[u]) {
                    seen[u] = true;
                    int id = eid[{std::min(u, v), std::max(u, v)}];
                    used[id] = true;
                    order.push_back(id);
                    q.push(u);
                }
        }
    }
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (!used[i]) order.push_back(i);
    return order;
}

struct CanonicalEnum {
    const SmallGraph& g;
    const std::vector<int>& sizes;
    const EnumBudget& budget;
    const std::function<bool(const CompactCover&)>& fn;
    std::vector<int> order;
    std::vector<int> pinned;
    CompactCover work;
    std::uint64_t count = 0;
    bool stopped = false;

    CanonicalEnum(const SmallGraph& g_, const std::vector<int>& sizes_, const EnumBudget& b_,
                  const std::function<bool(const CompactCover&)>& fn_)
        : g(g_), sizes(sizes_), budget(b_), fn(fn_) {
        order = edge_processing_order(g);
        pinned.assign(g.n, 0);
        work.assign(g.edges.size(), {});
    }

    void run() { rec(0); }

    void emit() {
        if (++count > budget.covers) fail(Err::BudgetExceeded, "cover enumeration");
        if (!fn(work)) stopped = true;
    }

    void rec(std::size_t step) {
        if (stopped) return;
        if (step == order.size()) {
            emit();
            return;
        }
        const int e = order[step];
        const auto [u, v] = g.edges[e];
        const int fu = pinned[u], fv = pinned[v];
        const int hu = sizes[u], hv = sizes[v];

        // Matching split relative to the pinned prefixes:
        //   A/sigma: pinned u-colors paired with pinned v-colors,
        //   B: pinned u-colors paired with fresh v-colors (ascending),
        //   D: pinned v-colors paired with fresh u-colors (ascending),
        //   t: parallel fresh-fresh pairs.
        // Fresh colors on each side are interchangeable until used, so
        // taking them in slot order loses no cover up to relabeling.
        std::vector<int> avec, sigma, bvec, dvec;
        std::vector<bool> vused(fv, false);

        auto place = [&]() {
            const int nb = static_cast<int>(bvec.size());
            const int nd = static_cast<int>(dvec.size());
            for (int t = 0; t + nd <= hu - fu && t + nb <= hv - fv; ++t) {
                if (stopped) return;
                EdgePairs ep;
                auto add = [&](int x, int y) {
                    ep.pairs[ep.count++] = {static_cast<std::int8_t>(x), static_cast<std::int8_t>(y)};
                };
                std::size_t bi = 0;
                for (int a = 0; a < fu; ++a) {
                    auto ia = std::find(avec.begin(), avec.end(), a);
                    if (ia != avec.end())
                        add(a, sigma[ia - avec.begin()]);
                    else if (bi < bvec.size() && bvec[bi] == a) {
                        add(a, fv + static_cast<int>(bi));
                        ++bi;
                    }
                }
                for (int j = 0; j < nd; ++j) add(fu + j, dvec[j]);
                for (int s = 0; s < t; ++s) add(fu + nd + s, fv + nb + s);
                work[e] = ep;
                const int pu = pinned[u], pv = pinned[v];
                pinned[u] = fu + nd + t;
                pinned[v] = fv + nb + t;
                rec(step + 1);
                pinned[u] = pu;
                pinned[v] = pv;
            }
        };

        std::function<void(int)> pickD = [&](int from) {
            if (stopped) return;
            place();
            if (static_cast<int>(dvec.size()) >= hu - fu) return;
            for (int r = from; r < fv; ++r) {
                if (vused[r]) continue;
                vused[r] = true;
                dvec.push_back(r);
                pickD(r + 1);
                dvec.pop_back();
                vused[r] = false;
            }
        };
        std::function<void(int)> pickB = [&](int from) {
            if (stopped) return;
            pickD(0);
            if (static_cast<int>(bvec.size()) >= hv - fv) return;
            for (int a = from; a < fu; ++a) {
                if (std::find(avec.begin(), avec.end(), a) != avec.end()) continue;
                bvec.push_back(a);
                pickB(a + 1);
                bvec.pop_back();
            }
        };
        std::function<void(int)> pickA = [&](int a) {
            if (stopped) return;
            if (a == fu) {
                pickB(0);
                return;
            }
            pickA(a + 1); // a not paired with a pinned v-color
            for (int r = 0; r < fv; ++r) {
                if (vused[r]) continue;
                vused[r] = true;
                avec.push_back(a);
                sigma.push_back(r);
                pickA(a + 1);
                sigma.pop_back();
                avec.pop_back();
                vused[r] = false;
            }
        };
        pickA(0);
    }
};

} // namespace

std::uint64_t for_each_cover(const SmallGraph& g, const std::vector<int>& sizes,
                             bool dedup_relabel, const EnumBudget& budget,
                             const std::function<bool(const CompactCover&)>& fn) {
    if (static_cast<int>(sizes.size()) != g.n) fail(Err::Parse, "sizes length mismatch");
    for (int h : sizes) {
        if (h < 0) fail(Err::Parse, "negative list size");
        if (h > 4) fail(Err::BudgetExceeded, "cover enumeration limited to list sizes <= 4");
    }

    if (dedup_relabel) {
        CanonicalEnum ce(g, sizes, budget, fn);
        ce.run();
        return ce.count;
    }

    std::vector<const std::vector<Matching>*> tables;
    for (auto [u, v] : g.edges) tables.push_back(&partial_injections(sizes[u], sizes[v]));
    const std::size_t m = g.edges.size();
    std::vector<std::size_t> idx(m, 0);
    CompactCover work(m);
    std::uint64_t count = 0;
    bool done = false;
    while (!done) {
        for (std::size_t e = 0; e < m; ++e) {
            const Matching& mt = (*tables[e])[idx[e]];
            EdgePairs ep;
            for (auto [a, b] : mt.pairs)
                ep.pairs[ep.count++] = {static_cast<std::int8_t>(a), static_cast<std::int8_t>(b)};
            work[e] = ep;
        }
        if (++count > budget.covers) fail(Err::BudgetExceeded, "cover enumeration");
        if (!fn(work)) break;
        // odometer
        done = true;
        for (std::size_t e = 0; e < m; ++e) {
            if (++idx[e] < tables[e]->size()) {
                done = false;
                break;
            }
            idx[e] = 0;
        }
        if (m == 0) done = true; // single empty cover
    }
    return count;
}

std::vector<Cover> enumerate_covers(const SmallGraph& g, const std::vector<int>& sizes,
                                    bool dedup_relabel, const EnumBudget& budget) {
    std::vector<Cover> out;
    for_each_cover(g, sizes, dedup_relabel, budget, [&](const CompactCover& cc) {
        out.push_back(to_cover(g, sizes, cc));
        return true;
    });
    return out;
}

Cover to_cover(const SmallGraph& g, const std::vector<int>& sizes, const CompactCover& cc) {
    Cover c;
    c.sizes = sizes;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (cc[e].count == 0) continue;
        Matching m;
        for (int i = 0; i < cc[e].count; ++i)
            m.pairs.emplace_back(cc[e].pairs[i].first, cc[e].pairs[i].second);
        std::sort(m.pairs.begin(), m.pairs.end());
        c.matchings[g.edges[e]] = std::move(m);
    }
    return c;
}

Rat WeightedRequest::total() const {
    Rat t(0);
    for (const auto& row : weight)
        for (const Rat& w : row) t += w;
    return t;
}

Rat request_value(const WeightedRequest& w, const Coloring& phi) {
    Rat t(0);
    for (std::size_t v = 0; v < w.weight.size(); ++v) {
        int c = v < phi.choice.size() ? phi.choice[v] : -1;
        if (c >= 0 && c < static_cast<int>(w.weight[v].size())) t += w.weight[v][c];
    }
    return t;
}

// --- formats ---

Cover parse_cover(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<int, int> sizes;
    std::map<std::pair<int, int>, Matching> ms;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto bad = [&](const std::string& why) {
            fail(Err::Parse, "cover line " + std::to_string(lineno) + ": " + why);
        };
        if (kw == "sizes") {
            std::string item;
            while (ls >> item) {
                auto colon = item.find(':');
                if (colon == std::string::npos) bad("expected v:h");
                int v = std::stoi(item.substr(0, colon));
                int h = std::stoi(item.substr(colon + 1));
                if (v < 0 || h < 1) bad("bad v:h");
                sizes[v] = h;
            }
        } else if (kw == "match") {
            int u, v;
            std::string colon;
            if (!(ls >> u >> v)) bad("expected 'match u v:'");
            // consume ':' which may be glued to v or standalone
            if (ls.peek() == ':') ls.get();
            Matching m;
            std::string pair;
            while (ls >> pair) {
                if (pair == ":") continue;
                auto dash = pair.find('-');
                if (dash == std::string::npos) bad("expected i-j");
                m.pairs.emplace_back(std::stoi(pair.substr(0, dash)), std::stoi(pair.substr(dash + 1)));
            }
            std::sort(m.pairs.begin(), m.pairs.end());
            if (u > v) {
                for (auto& p : m.pairs) std::swap(p.first, p.second);
                std::swap(u, v);
                std::sort(m.pairs.begin(), m.pairs.end());
            }
            ms[{u, v}] = std::move(m);
        } else {
            bad("unknown keyword '" + kw + "'");
        }
    }
    Cover c;
    int n = sizes.empty() ? 0 : sizes.rbegin()->first + 1;
    c.sizes.assign(n, 0);
    for (auto [v, h] : sizes) c.sizes[v] = h;
    for (int v = 0; v < n; ++v)
        if (c.sizes[v] == 0) fail(Err::Parse, "cover missing size for vertex " + std::to_string(v));
    for (auto& [e, m] : ms) {
        if (e.second >= n) fail(Err::Parse, "cover matching on unknown vertex");
        for (auto [a, b] : m.pairs)
            if (a < 0 || a >= c.sizes[e.first] || b < 0 || b >= c.sizes[e.second])
                fail(Err::Parse, "cover matching index out of list range");
        if (!m.pairs.empty()) c.matchings[e] = std::move(m);
    }
    return c;
}

std::string write_cover(const Cover& c) {
    std::ostringstream out;
    for (std::size_t v = 0; v < c.sizes.size(); ++v)
        out << "sizes " << v << ":" << c.sizes[v] << "\n";
    for (const auto& [e, m] : c.matchings) {
        if (m.pairs.empty()) continue;
        out << "match " << e.first << " " << e.second << ":";
        for (auto [a, b] : m.pairs) out << " " << a << "-" << b;
        out << "\n";
    }
    return out.str();
}

WeightedRequest parse_req(const std::string& text, const std::vector<int>& sizes) {
    WeightedRequest w;
    w.weight.resize(sizes.size());
    for (std::size_t v = 0; v < sizes.size(); ++v) w.weight[v].assign(sizes[v], Rat(0));
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int v, c;
        std::string rat;
        if (!(ls >> v)) continue;
        if (!(ls >> c >> rat)) fail(Err::Parse, "req line " + std::to_string(lineno) + ": expected 'v c weight'");
        if (v < 0 || v >= static_cast<int>(sizes.size()) || c < 0 || c >= sizes[v])
            fail(Err::Parse, "req line " + std::to_string(lineno) + ": (v,c) outside lists");
        Rat r = parse_rat(rat);
        if (r < 0) fail(Err::Parse, "req line " + std::to_string(lineno) + ": negative weight");
        w.weight[v][c] = r;
    }
    return w;
}

std::string write_req(const WeightedRequest& w) {
    std::ostringstream out;
    for (std::size_t v = 0; v < w.weight.size(); ++v)
        for (std::size_t c = 0; c < w.weight[v].size(); ++c)
            if (w.weight[v][c] != 0) out << v << " " << c << " " << rat_str(w.weight[v][c]) << "\n";
    return out.str();
}

} // namespace flexdp
