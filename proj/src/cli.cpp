#include "flexdp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "flexdp/discharging.hpp"
#include "flexdp/flexibility.hpp"

namespace flexdp {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string ids(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(v[i]);
    }
    return s;
}

// exact value, with a decimal rendering appended in human mode
std::string show(const Rat& r, bool structured) {
    if (structured) return rat_str(r);
    return rat_str(r) + " (~" + rat_approx(r) + ")";
}

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    return std::strtoull(s, nullptr, 10);
}

struct Ctx {
    const RunConfig& cfg;
    std::ostream& out;
    CheckOptions check;
    std::uint64_t outcome_budget;
};

Cover load_cover(const Ctx& c, const PlaneGraph& g) {
    if (c.cfg.cover_path.empty()) return identity_cover(g, c.cfg.k);
    Cover cov = parse_cover(read_file(c.cfg.cover_path));
    if (static_cast<int>(cov.sizes.size()) != g.num_vertices())
        fail(Err::Parse, "cover vertex count does not match graph");
    return cov;
}

int cmd_check(Ctx& c, const PlaneGraph& g) {
    const ClassReport& r = g.class_membership();
    c.out << "vertices " << g.num_vertices() << "\n";
    c.out << "edges " << g.num_edges() << "\n";
    c.out << "faces " << g.faces().size() << "\n";
    c.out << "connected " << (g.connected() ? "yes" : "no") << "\n";
    if (r.four_cycle) {
        const auto& w = *r.four_cycle;
        c.out << "four-cycle " << w[0] << " " << w[1] << " " << w[2] << " " << w[3] << "\n";
    }
    if (r.intersecting_triangles) {
        const auto& [t1, t2] = *r.intersecting_triangles;
        c.out << "intersecting-triangles " << t1[0] << " " << t1[1] << " " << t1[2] << " / "
              << t2[0] << " " << t2[1] << " " << t2[2] << "\n";
    }
    c.out << "in-class " << (r.in_class() ? "yes" : "no") << "\n";
    return r.in_class() ? 0 : 1;
}

void print_match(Ctx& c, const ReducibleMatch& m) {
    c.out << "kind " << rc_name(m.kind) << "\n";
    c.out << "block " << ids(m.block) << "\n";
    c.out << "boundary " << ids(m.boundary) << "\n";
    c.out << "removed " << ids(m.removed()) << "\n";
    c.out << "block-size " << m.removed().size() << "\n";
}

int cmd_find(Ctx& c, const PlaneGraph& g) {
    auto m = find_reducible(g, c.cfg.k);
    if (!m) {
        c.out << "match none\n";
        c.out << "scanned vertices " << g.num_vertices() << " faces " << g.faces().size() << "\n";
        return 1;
    }
    c.out << "match found\n";
    print_match(c, *m);
    return 0;
}

int cmd_verify(Ctx& c, const PlaneGraph& g) {
    ReducibleMatch m;
    if (!c.cfg.manual_block.empty()) {
        m.kind = RcKind::Whole;
        m.block = c.cfg.manual_block;
        m.boundary = c.cfg.manual_boundary;
        std::sort(m.block.begin(), m.block.end());
        std::sort(m.boundary.begin(), m.boundary.end());
        m.key = m.block;
    } else {
        auto found = find_reducible(g, c.cfg.k);
        if (!found) {
            c.out << "match none\n";
            return 1;
        }
        m = *found;
    }
    print_match(c, m);
    VerifyReport rep = verify_match(g, m, c.cfg.k, c.check);
    c.out << "sizes " << ids(rep.sizes) << "\n";
    c.out << "covers-checked " << (rep.fix.covers_checked + rep.forb.covers_checked) << "\n";
    c.out << "fix " << (rep.fix.ok ? "pass" : "fail") << "\n";
    c.out << "forb " << (rep.forb.ok ? "pass" : "fail") << "\n";
    c.out << "verified " << (rep.ok ? "yes" : "no") << "\n";
    const CheckResult& bad = rep.fix.ok ? rep.forb : rep.fix;
    if (!rep.ok && bad.counterexample) {
        const CounterexampleCover& cex = *bad.counterexample;
        c.out << "counterexample " << cex.context << "\n";
        c.out << "counterexample-vertices " << ids(cex.vertices) << "\n";
        c.out << write_cover(cex.cover);
    }
    return rep.ok ? 0 : 1;
}

int cmd_resolve(Ctx& c, const PlaneGraph& g, Resolution* out_res = nullptr) {
    ResolutionOptions ropts;
    ropts.check = c.check;
    Resolution res = build_resolution(g, c.cfg.k, ropts);
    c.out << "steps " << res.steps.size() << "\n";
    for (std::size_t i = 0; i < res.steps.size(); ++i) {
        const ResolutionStep& s = res.steps[i];
        c.out << "step " << i << " " << rc_name(s.match.kind) << " removed " << ids(s.removed)
              << " boundary " << ids(s.match.boundary) << (s.terminal ? " terminal" : "") << "\n";
    }
    c.out << "b " << res.b << "\n";
    c.out << "epsilon " << show(epsilon(c.cfg.k, res.b), c.cfg.structured) << "\n";
    if (out_res) *out_res = res;
    return 0;
}

int cmd_sample(Ctx& c, const PlaneGraph& g) {
    Cover cov = load_cover(c, g);
    ResolutionOptions ropts;
    ropts.check = c.check;
    Resolution res = build_resolution(g, c.cfg.k, ropts);
    Rng rng{c.cfg.seed, 0};
    SmallGraph sg = SmallGraph::of(g);
    for (int i = 0; i < c.cfg.sample_count; ++i) {
        Coloring phi = sample_coloring(g, cov, res, rng);
        if (!valid_coloring(sg, cov, phi)) fail(Err::NoExtension, "sampler produced an invalid coloring");
        c.out << "coloring";
        for (int col : phi.choice) c.out << " " << col;
        c.out << "\n";
    }
    c.out << "b " << res.b << "\n";
    c.out << "epsilon " << show(epsilon(c.cfg.k, res.b), c.cfg.structured) << "\n";
    return 0;
}

int cmd_satisfy(Ctx& c, const PlaneGraph& g) {
    Cover cov = load_cover(c, g);
    if (c.cfg.request_path.empty()) fail(Err::Parse, "satisfy needs --request");
    WeightedRequest w = parse_req(read_file(c.cfg.request_path), cov.sizes);
    ResolutionOptions ropts;
    ropts.check = c.check;
    Resolution res = build_resolution(g, c.cfg.k, ropts);
    Rng rng{c.cfg.seed, 0};
    SatisfyResult sr =
        satisfy_request(g, cov, res, w, c.outcome_budget, c.cfg.sample_count > 1 ? c.cfg.sample_count : 10000, rng);
    c.out << "mode " << (sr.exact ? "exact" : "sampling") << "\n";
    c.out << "b " << sr.b << "\n";
    c.out << "epsilon " << show(sr.eps, c.cfg.structured) << "\n";
    c.out << "total-weight " << show(sr.total, c.cfg.structured) << "\n";
    if (sr.exact) c.out << "expectation " << show(sr.expectation, c.cfg.structured) << "\n";
    c.out << "value " << show(sr.value, c.cfg.structured) << "\n";
    c.out << "coloring";
    for (int col : sr.phi.choice) c.out << " " << col;
    c.out << "\n";
    bool bound_ok = sr.value >= sr.eps * sr.total;
    c.out << "epsilon-bound " << (bound_ok ? "met" : (sr.exact ? "VIOLATED" : "not certified (sampling mode)"))
          << "\n";
    return bound_ok || !sr.exact ? 0 : 1;
}

int cmd_discharge(Ctx& c, const PlaneGraph& g) {
    AuditReport rep = audit(g);
    for (const std::string& w : rep.warnings) c.out << "warning " << w << "\n";
    for (const AuditEntry& e : rep.entries) {
        c.out << (e.is_face ? "face " : "vertex ") << e.id << " initial " << rat_str(e.initial)
              << " received " << rat_str(e.received) << " sent " << rat_str(e.sent) << " final "
              << rat_str(e.final) << "\n";
    }
    for (const auto& [f, branch] : rep.face_cases) c.out << "face-case " << f << " " << branch << "\n";
    if (c.cfg.log_transfers)
        for (const Transfer& t : rep.ledger.transfers)
            c.out << "transfer " << t.rule << " " << t.vertex << " -> " << t.face << " "
                  << rat_str(t.amount) << "\n";
    c.out << "negative-count " << rep.negative.size() << "\n";
    c.out << "total " << rat_str(rep.total) << "\n";
    c.out << "conserved " << (rep.conserved ? "yes" : "no") << "\n";
    return rep.negative.empty() && rep.conserved ? 0 : 1;
}

int cmd_enumerate(Ctx& c, const PlaneGraph& g) {
    Cover cov = load_cover(c, g);
    SmallGraph sg = SmallGraph::of(g);
    if (c.cfg.enumerate_what == "colorings") {
        auto cols = enumerate_colorings(sg, cov, c.check.budget);
        for (const Coloring& phi : cols) {
            c.out << "coloring";
            for (int col : phi.choice) c.out << " " << col;
            c.out << "\n";
        }
        c.out << "count " << cols.size() << "\n";
        return 0;
    }
    if (c.cfg.enumerate_what == "covers") {
        std::uint64_t count = for_each_cover(sg, cov.sizes, c.cfg.enum_dedup, c.check.budget,
                                             [](const CompactCover&) { return true; });
        c.out << "count " << count << "\n";
        return 0;
    }
    fail(Err::Parse, "enumerate expects colorings or covers");
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out) {
    try {
        Ctx c{cfg, out, {}, 0};
        c.check.strip = !cfg.no_strip;
        c.check.dedup_relabel = !cfg.no_dedup;
        c.check.budget.covers =
            cfg.cover_budget.value_or(env_budget("FLEXDP_COVER_BUDGET", c.check.budget.covers));
        c.check.budget.coloring_states = cfg.coloring_budget.value_or(
            env_budget("FLEXDP_COLORING_BUDGET", c.check.budget.coloring_states));
        c.outcome_budget = cfg.outcome_budget.value_or(env_budget("FLEXDP_OUTCOME_BUDGET", 500000));

        if (cfg.graph_path.empty()) fail(Err::Parse, "missing --graph");
        PlaneGraph g = load_pg(cfg.graph_path);

        if (cfg.command == "check") return cmd_check(c, g);
        if (cfg.command == "find-reducible") return cmd_find(c, g);
        if (cfg.command == "verify") return cmd_verify(c, g);
        if (cfg.command == "resolve") return cmd_resolve(c, g);
        if (cfg.command == "sample") return cmd_sample(c, g);
        if (cfg.command == "satisfy") return cmd_satisfy(c, g);
        if (cfg.command == "discharge") return cmd_discharge(c, g);
        if (cfg.command == "enumerate") return cmd_enumerate(c, g);
        fail(Err::Parse, "unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        out << "error " << e.what() << "\n";
        // verification failures surface as exit 1, input problems as exit 2
        switch (e.kind()) {
        case Err::Stuck:
        case Err::NoExtension: return 1;
        default: return 2;
        }
    } catch (const std::exception& e) {
        out << "error " << e.what() << "\n";
        return 2;
    }
}

} // namespace flexdp
