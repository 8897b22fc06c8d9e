#include "flexdp/discharging.hpp"

#include <algorithm>
#include <set>

namespace flexdp {

Rat ChargeLedger::total() const {
    Rat t(0);
    for (const Rat& r : vertex_charge) t += r;
    for (const Rat& r : face_charge) t += r;
    return t;
}

ChargeLedger initial_charges(const PlaneGraph& g) {
    if (!g.connected()) fail(Err::Disconnected, "initial_charges requires a connected graph");
    ChargeLedger led;
    for (int v = 0; v < g.num_vertices(); ++v) led.vertex_charge.push_back(Rat(g.degree(v) - 2));
    led.face_charge.assign(g.faces().size(), Rat(-2));
    return led;
}

namespace {

// R4 row: what a 4+-vertex of the given class hands each incident 5+-face.
Rat r4_amount(const VertexClass& vc, bool& known) {
    known = true;
    switch (vc.tag) {
    case VertexTag::K1: return vc.degree == 4 ? Rat(1, 3) : Rat(5, 12);
    case VertexTag::K2: return vc.degree == 4 ? Rat(5, 12) : Rat(7, 15);
    case VertexTag::Four3: return Rat(4, 9);
    case VertexTag::Heavy: return Rat(1, 2);
    case VertexTag::Special: return Rat(5, 9);
    default: known = false; return Rat(0);
    }
}

// 5-faces adjacent (sharing an edge) to a 3-face containing v, with v not
// on them.
std::vector<int> pendent_5_faces(const PlaneGraph& g, int v) {
    std::set<int> out;
    std::set<int> tris;
    for (int f : g.faces_at(v))
        if (g.face(f).length() == 3) tris.insert(f);
    for (int t : tris) {
        const Face& tri = g.face(t);
        for (int i = 0; i < 3; ++i) {
            int a = tri.boundary[i], b = tri.boundary[(i + 1) % 3];
            int other = g.face_of(b, a);
            if (other == t) continue;
            if (g.face(other).length() == 5 && !g.face(other).contains(v)) out.insert(other);
        }
    }
    return {out.begin(), out.end()};
}

} // namespace

ChargeLedger apply_rules(const PlaneGraph& g, const ChargeLedger& initial) {
    if (!g.class_membership().in_class())
        fail(Err::OutOfClass, "discharging rules apply to graphs without 4-cycles and intersecting triangles");

    ChargeLedger led = initial;
    auto transfer = [&](int v, int f, Rat amount, const char* rule) {
        led.vertex_charge[v] -= amount;
        led.face_charge[f] += amount;
        led.transfers.push_back({v, f, amount, rule});
    };

    for (int v = 0; v < g.num_vertices(); ++v) {
        const int d = g.degree(v);
        if (d < 3) continue; // outside every rule; audit flags these
        if (d == 3) {
            for (int f : g.faces_at(v)) transfer(v, f, Rat(1, 3), "R1"); // multiplicity
            continue;
        }
        VertexClass vc = g.classify_vertex(v);
        for (int f : g.faces_at(v))
            if (g.face(f).length() == 3) transfer(v, f, Rat(2, 3), "R2");
        for (int f : g.pendent_3_structure(v).faces) transfer(v, f, Rat(1, 3), "R2");
        if (vc.tag == VertexTag::Special && d >= 5)
            for (int f : pendent_5_faces(g, v)) transfer(v, f, Rat(1, 9), "R3");
        bool known = false;
        Rat r4 = r4_amount(vc, known);
        if (known)
            for (int f : g.faces_at(v))
                if (g.face(f).length() >= 5) transfer(v, f, r4, "R4");
    }
    return led;
}

AuditReport audit(const PlaneGraph& g) {
    AuditReport rep;
    ChargeLedger init = initial_charges(g);
    rep.total = init.total();
    if (rep.total != Rat(-4)) fail(Err::EmbeddingInconsistent, "initial charges do not sum to -4");

    int min_deg = g.num_vertices() ? g.degree(0) : 0;
    for (int v = 0; v < g.num_vertices(); ++v) min_deg = std::min(min_deg, g.degree(v));
    if (g.num_vertices() > 0 && min_deg < 3)
        rep.warnings.push_back("vertices of degree <= 2 present; rules R1-R4 ignore them");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) >= 4) {
            VertexClass vc = g.classify_vertex(v);
            if (vc.tag == VertexTag::Other)
                rep.warnings.push_back("vertex " + std::to_string(v) +
                                       " fits no discharging class; it sends nothing under R4");
        }

    rep.ledger = apply_rules(g, init);

    std::vector<Rat> recv_v(g.num_vertices(), Rat(0)), sent_v(g.num_vertices(), Rat(0));
    std::vector<Rat> recv_f(g.faces().size(), Rat(0));
    for (const Transfer& t : rep.ledger.transfers) {
        sent_v[t.vertex] += t.amount;
        recv_f[t.face] += t.amount;
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        AuditEntry e{false, v, init.vertex_charge[v], recv_v[v], sent_v[v],
                     rep.ledger.vertex_charge[v]};
        rep.entries.push_back(e);
        if (e.final < 0) rep.negative.push_back(e);
    }
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        AuditEntry e{true, f, init.face_charge[f], recv_f[f], Rat(0), rep.ledger.face_charge[f]};
        rep.entries.push_back(e);
        if (e.final < 0) rep.negative.push_back(e);
    }

    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        const Face& face = g.face(f);
        std::string branch;
        if (face.length() == 3)
            branch = "3-face";
        else if (face.length() >= 6)
            branch = "6+-face";
        else if (face.length() == 5) {
            int threes = 0;
            for (int v : face.boundary)
                if (g.degree(v) == 3) ++threes;
            if (threes >= 2)
                branch = "5-face case 1";
            else if (threes == 1)
                branch = "5-face case 2";
            else
                branch = "5-face case 3";
        } else {
            branch = "length-" + std::to_string(face.length()) + " face";
        }
        rep.face_cases.emplace_back(f, branch);
    }

    rep.conserved = rep.ledger.total() == Rat(-4);
    rep.total = rep.ledger.total();
    return rep;
}

} // namespace flexdp
