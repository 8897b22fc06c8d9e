#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flexdp/cover.hpp"
#include "flexdp/plane_graph.hpp"

namespace flexdp {

enum class RcKind {
    Whole = 0, // not a pattern: a terminal residual taken as one block
    RC1 = 1,
    RC2,
    RC3,
    RC4,
    RC5,
    RC6,
    RC7,
    RC8,
    RC9,
};
const char* rc_name(RcKind k);

/// A located configuration: block S, boundary B (both host vertex ids,
/// sorted), with the boundary exactly as the matching rule prescribes.
struct ReducibleMatch {
    RcKind kind;
    std::vector<int> block;    // S
    std::vector<int> boundary; // B, proper subset of S
    std::vector<int> key;      // defining tuple, used for tie-breaking
    std::vector<int> removed() const; // S \ B, sorted
};

struct CheckOptions {
    bool strip = true;          // peel always-extendable vertices first
    bool dedup_relabel = true;  // canonical covers only (sound, see cover.hpp)
    EnumBudget budget{};
    int max_block = 12; // |S \ B| cap
    int max_list = 4;
    // Diagnostic override for FORB: test forbidding sets against this graph
    // (ids mapped through forbid_translate) instead of the check host.
    const PlaneGraph* forbid_host = nullptr;
    std::vector<int> forbid_translate; // host id -> forbid_host id
};

/// Evidence that a universally quantified colorability check failed: a cover
/// of the block graph (vertices in host ids) admitting no coloring.
struct CounterexampleCover {
    std::vector<int> vertices; // host ids of S\B, sorted; cover indexes align
    std::vector<int> sizes;
    Cover cover;
    std::string context; // which quantified instance failed
};

struct CheckResult {
    bool ok = true;
    std::optional<CounterexampleCover> counterexample;
    std::uint64_t covers_checked = 0;
    std::vector<std::vector<int>> forbidding_sets;     // FORB: the I actually checked
    std::vector<std::vector<int>> skipped_sets;        // FORB: non-forbidding I skipped
};

/// True iff host plus an apex vertex adjacent to exactly I contains no
/// 4-cycle and no intersecting triangles. Embedding-free.
bool is_f_forbidding(const PlaneGraph& host, const std::vector<int>& I);

/// Sizes k - d_host(v) + d_{S-B}(v) for v in S\B (aligned with sorted S\B).
std::vector<int> boundary_sizes(const PlaneGraph& host, const std::vector<int>& S,
                                const std::vector<int>& B, int k);

/// FIX: for every v in S\B and every cover of the induced block with sizes
/// (k - d_G + d_{S-B}) forced to 1 at v, a coloring exists. Exhaustive over
/// covers; throws InvalidSizes when a base size is < 1.
CheckResult check_fix(const PlaneGraph& host, const std::vector<int>& S,
                      const std::vector<int>& B, int k, const CheckOptions& opts = {});

/// FORB: for every F-forbidding I in S\B with |I| <= k-2 (forbiddingness
/// tested in the host graph the block lives in), every cover with sizes
/// k - d_G + d_{S-B} - 1_I admits a coloring. All |I| in {0,1,2} are checked.
CheckResult check_forb(const PlaneGraph& host, const std::vector<int>& S,
                       const std::vector<int>& B, int k, const CheckOptions& opts = {});

struct VerifyReport {
    bool ok = false;
    CheckResult fix;
    CheckResult forb;
    std::vector<int> sizes; // base boundary sizes over S\B
    int block_size = 0;     // |S \ B|
};

VerifyReport verify_match(const PlaneGraph& host, const ReducibleMatch& m, int k = 4,
                          const CheckOptions& opts = {});

// Per-configuration structural matchers; each returns the lexicographically
// least match of its kind, with S and B exactly as its rule prescribes.
std::optional<ReducibleMatch> match_rc1(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc2(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc3(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc4(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc5(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc6(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc7(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc8(const PlaneGraph& g);
std::optional<ReducibleMatch> match_rc9(const PlaneGraph& g);

/// First match in priority order RC1..RC9 (ties within a kind already broken
/// lexicographically by the matchers). Requires an in-class graph.
std::optional<ReducibleMatch> find_reducible(const PlaneGraph& g, int k = 4);

// Exposed for tests: the universally quantified colorability core.
// Checks every cover of q with the given sizes; on failure fills
// counterexample (over all of q, stripped vertices carrying empty matchings).
bool forall_covers_colorable(const SmallGraph& q, const std::vector<int>& sizes,
                             const CheckOptions& opts, std::uint64_t& covers_checked,
                             std::optional<Cover>* counterexample);

} // namespace flexdp
