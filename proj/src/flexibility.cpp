#include "flexdp/flexibility.hpp"

#include <algorithm>
#include <set>

namespace flexdp {

Rat epsilon(int k, int b) {
    if (k < 3 || b < 1) fail(Err::Parse, "epsilon needs k >= 3, b >= 1");
    Rat p = Rat(1) / rat_pow(Rat(k), static_cast<unsigned long>(b));
    return rat_pow(p, static_cast<unsigned long>(k - 1));
}

Cover identity_cover(const PlaneGraph& g, int k) {
    return identity_cover(SmallGraph::of(g), k);
}

Resolution build_resolution(const PlaneGraph& g, int k, const ResolutionOptions& opts) {
    if (!g.connected()) fail(Err::Disconnected, "build_resolution requires a connected graph");
    if (!g.class_membership().in_class())
        fail(Err::OutOfClass, "build_resolution requires an in-class graph");

    Resolution res;
    std::vector<int> live(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) live[v] = v;

    while (!live.empty()) {
        auto [residual, ids] = g.induced(live);
        auto to_host = [&](const std::vector<int>& local) {
            std::vector<int> out;
            for (int v : local) out.push_back(ids[v]);
            std::sort(out.begin(), out.end());
            return out;
        };

        std::optional<ReducibleMatch> m = find_reducible(residual, k);
        if (!m && static_cast<int>(live.size()) <= opts.check.max_block) {
            // no pattern matches: accept the whole residual as the terminal
            // block if it verifies with empty boundary
            ReducibleMatch whole;
            whole.kind = RcKind::Whole;
            whole.block.resize(residual.num_vertices());
            for (int v = 0; v < residual.num_vertices(); ++v) whole.block[v] = v;
            whole.key = whole.block;
            if (verify_match(residual, whole, k, opts.check).ok) m = whole;
        }
        if (!m) {
            std::string s;
            for (int v : live) s += std::to_string(v) + " ";
            fail(Err::Stuck, "no reducible configuration in residual { " + s + "}");
        }

        const bool terminal =
            m->boundary.empty() && static_cast<int>(m->block.size()) == residual.num_vertices();

        if (opts.verify) {
            CheckOptions check = opts.check;
            if (opts.forbid_in_original) {
                check.forbid_host = &g;
                check.forbid_translate = ids;
            }
            VerifyReport rep = verify_match(residual, *m, k, check);
            if (!rep.ok)
                fail(Err::Stuck, std::string("step verification failed (") + rc_name(m->kind) +
                                     "): " + (rep.fix.ok ? "FORB" : "FIX"));
        }

        ResolutionStep step;
        step.residual = to_host(live);
        step.terminal = terminal;
        step.match = *m;
        step.match.block = to_host(m->block);
        step.match.boundary = to_host(m->boundary);
        step.match.key.clear();
        for (int v : m->key) step.match.key.push_back(ids[v]);
        step.removed = step.match.removed();
        res.b = std::max(res.b, static_cast<int>(step.removed.size()));
        res.steps.push_back(step);

        std::vector<int> next;
        std::set_difference(step.residual.begin(), step.residual.end(), step.removed.begin(),
                            step.removed.end(), std::back_inserter(next));
        live = next;
    }
    return res;
}

Rat ColoringDistribution::total_probability() const {
    Rat t(0);
    for (const auto& [phi, p] : entries) t += p;
    return t;
}

namespace {

// Valid colorings of the block given the partial coloring psi on the rest of
// the live set: list membership plus within-block matchings plus matchings
// toward colored neighbors.
std::vector<std::vector<int>> block_extensions(const PlaneGraph& g, const Cover& c,
                                               const std::vector<int>& block,
                                               const Coloring& psi) {
    const int bn = static_cast<int>(block.size());
    std::vector<std::vector<int>> allowed(bn);
    for (int i = 0; i < bn; ++i) {
        int y = block[i];
        for (int col = 0; col < c.sizes[y]; ++col) {
            bool ok = true;
            for (int v : g.neighbors(y)) {
                int pc = psi.choice[v];
                if (pc >= 0 && c.blocked_color(v, pc, y) == col) {
                    ok = false;
                    break;
                }
            }
            if (ok) allowed[i].push_back(col);
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur(bn, -1);
    std::function<void(int)> rec = [&](int i) {
        if (i == bn) {
            out.push_back(cur);
            return;
        }
        int y = block[i];
        for (int col : allowed[i]) {
            bool ok = true;
            for (int j = 0; j < i; ++j) {
                if (!g.adjacent(block[j], y)) continue;
                if (c.blocked_color(block[j], cur[j], y) == col) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                cur[i] = col;
                rec(i + 1);
                cur[i] = -1;
            }
        }
    };
    rec(0);
    return out;
}

} // namespace

ColoringDistribution exact_distribution(const PlaneGraph& g, const Cover& c, const Resolution& r,
                                        std::uint64_t outcome_budget, DistributionTrace* trace) {
    ColoringDistribution dist;
    Coloring empty;
    empty.choice.assign(g.num_vertices(), -1);
    dist.entries.emplace_back(empty, Rat(1));
    std::vector<int> colored;

    if (trace) trace->levels.clear();
    for (auto it = r.steps.rbegin(); it != r.steps.rend(); ++it) {
        const std::vector<int>& block = it->removed;
        ColoringDistribution next;
        for (const auto& [psi, p] : dist.entries) {
            auto exts = block_extensions(g, c, block, psi);
            if (exts.empty())
                fail(Err::NoExtension, "verified block admits no extension; resolution is unsound");
            Rat share = p / Rat(static_cast<long>(exts.size()));
            for (const auto& ext : exts) {
                Coloring phi = psi;
                for (std::size_t i = 0; i < block.size(); ++i) phi.choice[block[i]] = ext[i];
                next.entries.emplace_back(std::move(phi), share);
                if (next.entries.size() > outcome_budget)
                    fail(Err::BudgetExceeded, "distribution support");
            }
        }
        dist = std::move(next);
        colored.insert(colored.end(), block.begin(), block.end());
        std::sort(colored.begin(), colored.end());
        if (trace) trace->levels.push_back({colored, dist});
    }
    return dist;
}

std::pair<Rat, std::pair<int, int>> min_fixation_probability(const ColoringDistribution& d,
                                                             const Cover& c) {
    std::pair<Rat, std::pair<int, int>> best{Rat(2), {-1, -1}};
    for (std::size_t v = 0; v < c.sizes.size(); ++v) {
        for (int col = 0; col < c.sizes[v]; ++col) {
            Rat marginal(0);
            for (const auto& [phi, p] : d.entries)
                if (phi.choice[v] == col) marginal += p;
            if (marginal < best.first) best = {marginal, {static_cast<int>(v), col}};
        }
    }
    return best;
}

Rat avoidance_probability(const ColoringDistribution& d, const std::vector<int>& I,
                          const std::vector<int>& avoided) {
    Rat total(0);
    for (const auto& [phi, p] : d.entries) {
        bool ok = true;
        for (std::size_t i = 0; i < I.size(); ++i)
            if (phi.choice[I[i]] == avoided[i]) {
                ok = false;
                break;
            }
        if (ok) total += p;
    }
    return total;
}

// splitmix64 step applied to seed + counter: stateless in effect
std::uint64_t Rng::next() {
    std::uint64_t z = seed + (++counter) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::bounded(std::uint64_t n) {
    if (n == 0) fail(Err::Parse, "bounded(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

Coloring sample_coloring(const PlaneGraph& g, const Cover& c, const Resolution& r, Rng& rng) {
    Coloring psi;
    psi.choice.assign(g.num_vertices(), -1);
    for (auto it = r.steps.rbegin(); it != r.steps.rend(); ++it) {
        const std::vector<int>& block = it->removed;
        auto exts = block_extensions(g, c, block, psi);
        if (exts.empty()) fail(Err::NoExtension, "verified block admits no extension");
        const auto& ext = exts[rng.bounded(exts.size())];
        for (std::size_t i = 0; i < block.size(); ++i) psi.choice[block[i]] = ext[i];
    }
    return psi;
}

SatisfyResult satisfy_request(const PlaneGraph& g, const Cover& c, const Resolution& r,
                              const WeightedRequest& w, std::uint64_t outcome_budget,
                              int fallback_samples, Rng rng) {
    SatisfyResult out;
    out.b = r.b;
    out.eps = epsilon(4, r.b);
    out.total = w.total();
    try {
        ColoringDistribution dist = exact_distribution(g, c, r, outcome_budget);
        out.exact = true;
        bool first = true;
        Rat expectation(0);
        for (const auto& [phi, p] : dist.entries) {
            Rat val = request_value(w, phi);
            expectation += p * val;
            if (first || val > out.value) {
                out.value = val;
                out.phi = phi;
                first = false;
            }
        }
        out.expectation = expectation;
        return out;
    } catch (const Error& e) {
        if (e.kind() != Err::BudgetExceeded) throw;
    }
    out.exact = false;
    bool first = true;
    for (int i = 0; i < fallback_samples; ++i) {
        Coloring phi = sample_coloring(g, c, r, rng);
        Rat val = request_value(w, phi);
        if (first || val > out.value) {
            out.value = val;
            out.phi = phi;
            first = false;
        }
    }
    out.expectation = Rat(0);
    return out;
}

} // namespace flexdp
