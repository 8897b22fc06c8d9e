#pragma once

#include <string>
#include <vector>

#include "flexdp/plane_graph.hpp"
#include "flexdp/rational.hpp"

namespace flexdp {

/// Every transfer goes vertex -> face; R4 is recorded face-pull style with
/// the sending vertex as the source.
struct Transfer {
    int vertex;
    int face;
    Rat amount;
    std::string rule; // "R1".."R4"
};

struct ChargeLedger {
    std::vector<Rat> vertex_charge;
    std::vector<Rat> face_charge;
    std::vector<Transfer> transfers;
    Rat total() const;
};

/// mu(v) = d(v) - 2, mu(f) = -2; the total is -4 on any connected plane
/// graph. Throws Disconnected otherwise.
ChargeLedger initial_charges(const PlaneGraph& g);

/// One simultaneous pass of R1-R4 from the given ledger. The rules read only
/// pre-discharge structure, so order is irrelevant. Incidence counts with
/// multiplicity along face boundaries. Throws OutOfClass.
ChargeLedger apply_rules(const PlaneGraph& g, const ChargeLedger& initial);

struct AuditEntry {
    bool is_face;
    int id;
    Rat initial;
    Rat received;
    Rat sent;
    Rat final;
};

struct AuditReport {
    ChargeLedger ledger; // final state with full transfer log
    std::vector<AuditEntry> entries;
    std::vector<AuditEntry> negative;
    std::vector<std::string> warnings;
    std::vector<std::pair<int, std::string>> face_cases; // face id -> analysis branch
    Rat total;
    bool conserved = false;
};

AuditReport audit(const PlaneGraph& g);

} // namespace flexdp
