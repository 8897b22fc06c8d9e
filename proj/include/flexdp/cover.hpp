#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flexdp/rational.hpp"

namespace flexdp {

class PlaneGraph;

/// Abstract graph view used by the cover / coloring machinery (covers do not
/// care about the embedding).
struct SmallGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // u < v, sorted
    std::vector<std::vector<int>> adj;

    static SmallGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
    static SmallGraph of(const PlaneGraph& g);
};

/// Partial injection between two color index sets; pairs sorted by left
/// endpoint, injective on both sides.
struct Matching {
    std::vector<std::pair<int, int>> pairs;
    int image_of(int a) const;    // -1 if unmatched
    int preimage_of(int b) const; // -1 if unmatched
    bool operator==(const Matching& o) const { return pairs == o.pairs; }
};

/// DP-cover: one list size per vertex plus one partial injection per edge
/// (absent entry = empty matching). Lists are index sets {0..h(v)-1}; the
/// within-list cliques are implicit.
struct Cover {
    std::vector<int> sizes;
    std::map<std::pair<int, int>, Matching> matchings; // key u < v

    const Matching* matching(int u, int v) const; // nullptr if empty/absent
    /// Color of v ruled out when u takes cu (edge u-v), or -1.
    int blocked_color(int u, int cu, int v) const;
};

struct Coloring {
    std::vector<int> choice; // per vertex; -1 = uncolored
    bool operator==(const Coloring& o) const { return choice == o.choice; }
    bool operator<(const Coloring& o) const { return choice < o.choice; }
};

bool valid_coloring(const SmallGraph& g, const Cover& c, const Coloring& phi);

/// Standard list-coloring-to-cover construction: indices enumerate each
/// (sorted, deduplicated) list; edge matchings pair equal names.
Cover cover_from_lists(const SmallGraph& g, const std::vector<std::vector<std::string>>& lists);

/// The canonical k-cover: every list {0..k-1}, every edge the identity
/// matching.
Cover identity_cover(const SmallGraph& g, int k = 4);

struct EnumBudget {
    std::uint64_t coloring_states = 10'000'000;
    std::uint64_t covers = 50'000'000;
};

/// All valid colorings in lexicographic order (by vertex index, then color).
std::vector<Coloring> enumerate_colorings(const SmallGraph& g, const Cover& c,
                                          const EnumBudget& budget = {});
bool is_colorable(const SmallGraph& g, const Cover& c, const EnumBudget& budget = {});

/// All partial injections between index sets of sizes a and b, deterministic
/// order (left colors processed ascending; unmatched before matched).
const std::vector<Matching>& partial_injections(int a, int b);

/// One edge's matching in a streamed cover; pair slots beyond `count` are
/// unused. List sizes stay <= 4, so 4 pairs suffice.
struct EdgePairs {
    int count = 0;
    std::array<std::pair<std::int8_t, std::int8_t>, 4> pairs{};
};
/// Matchings aligned with SmallGraph::edges.
using CompactCover = std::vector<EdgePairs>;

/// Streams every cover of g with the given list sizes (each edge ranging over
/// all partial injections) into fn, in deterministic order; fn returns false
/// to stop early. With `dedup_relabel`, only canonical representatives under
/// per-list index permutation are yielded (every cover is equivalent to at
/// least one yielded cover, so universally quantified checks are unaffected).
/// Returns the number of covers yielded; throws BudgetExceeded past
/// budget.covers.
std::uint64_t for_each_cover(const SmallGraph& g, const std::vector<int>& sizes,
                             bool dedup_relabel, const EnumBudget& budget,
                             const std::function<bool(const CompactCover&)>& fn);

std::vector<Cover> enumerate_covers(const SmallGraph& g, const std::vector<int>& sizes,
                                    bool dedup_relabel = false, const EnumBudget& budget = {});

Cover to_cover(const SmallGraph& g, const std::vector<int>& sizes, const CompactCover& cc);

struct WeightedRequest {
    std::vector<std::vector<Rat>> weight; // [v][color]
    Rat total() const;
};

Rat request_value(const WeightedRequest& w, const Coloring& phi);

// --- text formats ---
Cover parse_cover(const std::string& text);
std::string write_cover(const Cover& c);
WeightedRequest parse_req(const std::string& text, const std::vector<int>& sizes);
std::string write_req(const WeightedRequest& w);

} // namespace flexdp
