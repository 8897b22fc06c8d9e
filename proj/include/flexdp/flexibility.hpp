#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flexdp/cover.hpp"
#include "flexdp/plane_graph.hpp"
#include "flexdp/reducibility.hpp"

namespace flexdp {

/// (k^-b)^(k-1), exactly.
Rat epsilon(int k, int b);

struct ResolutionStep {
    ReducibleMatch match;      // host ids of the residual it was found in
    std::vector<int> removed;  // S \ B, sorted host ids
    std::vector<int> residual; // vertices of the residual the block was found in
    bool terminal = false;
};

struct Resolution {
    std::vector<ResolutionStep> steps;
    int b = 1; // max |S_i \ B_i| over all steps, terminal included
};

struct ResolutionOptions {
    CheckOptions check{};
    bool verify = true;            // verify every step (FIX and FORB)
    bool forbid_in_original = false; // diagnostic: test forbidding sets in G
                                     // instead of the residual the block lives in
};

/// Peels g by reducible blocks until the residual itself is a verified block
/// with empty boundary. Requires g connected and in class.
Resolution build_resolution(const PlaneGraph& g, int k = 4, const ResolutionOptions& opts = {});

struct ColoringDistribution {
    std::vector<std::pair<Coloring, Rat>> entries; // disjoint colorings, probs sum to 1
    Rat total_probability() const;
};

/// One residual level of the recursive construction: `colored` lists the
/// vertices of G_i, `dist` the distribution over their colorings.
struct DistributionLevel {
    std::vector<int> colored;
    ColoringDistribution dist;
};

struct DistributionTrace {
    std::vector<DistributionLevel> levels; // terminal-first; last level = all of G
};

/// The recursive distribution, exactly: at each block, extend each residual
/// coloring uniformly over its valid extensions. Throws NoExtension if a
/// block admits none (impossible for verified resolutions).
ColoringDistribution exact_distribution(const PlaneGraph& g, const Cover& c, const Resolution& r,
                                        std::uint64_t outcome_budget = 500'000,
                                        DistributionTrace* trace = nullptr);

/// Minimum over all (v, c) of Prob[phi(v) = c], with an argmin witness.
std::pair<Rat, std::pair<int, int>> min_fixation_probability(const ColoringDistribution& d,
                                                             const Cover& c);

/// Prob[phi(v) != avoided[i] for every v = I[i]].
Rat avoidance_probability(const ColoringDistribution& d, const std::vector<int>& I,
                          const std::vector<int>& avoided);

/// Counter-based deterministic generator; no global state.
struct Rng {
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;
    std::uint64_t next();
    std::uint64_t bounded(std::uint64_t n); // uniform in [0, n), unbiased
};

/// One draw from the same process exact_distribution integrates; its law
/// equals the exact distribution.
Coloring sample_coloring(const PlaneGraph& g, const Cover& c, const Resolution& r, Rng& rng);

struct SatisfyResult {
    Coloring phi;
    Rat value;
    Rat total;
    Rat expectation; // E[request value] under the exact distribution (exact mode)
    Rat eps;
    int b = 1;
    bool exact = true; // false: best-of-N sampling fallback, guarantee statistical only
};

/// Exact mode: argmax of the request value over the distribution support
/// (optimal, hence >= expectation >= eps * total). Falls back to best of
/// `fallback_samples` draws when the support exceeds the outcome budget.
SatisfyResult satisfy_request(const PlaneGraph& g, const Cover& c, const Resolution& r,
                              const WeightedRequest& w, std::uint64_t outcome_budget = 500'000,
                              int fallback_samples = 10'000, Rng rng = {});

Cover identity_cover(const PlaneGraph& g, int k = 4);

} // namespace flexdp
