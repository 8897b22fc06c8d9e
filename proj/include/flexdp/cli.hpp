#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flexdp {

struct RunConfig {
    std::string command; // check | find-reducible | verify | resolve | sample |
                         // satisfy | discharge | enumerate
    std::string graph_path;
    std::string cover_path;   // empty: canonical identity 4-cover
    std::string request_path; // satisfy
    std::uint64_t seed = 0;
    int sample_count = 1;
    int k = 4;
    bool structured = false;
    bool log_transfers = false;
    std::string enumerate_what = "colorings"; // colorings | covers
    bool enum_dedup = false; // covers: canonical representatives only
    std::vector<int> manual_block;            // verify: optional explicit S
    std::vector<int> manual_boundary;         // verify: optional explicit B
    std::optional<std::uint64_t> cover_budget;
    std::optional<std::uint64_t> coloring_budget;
    std::optional<std::uint64_t> outcome_budget;
    bool no_strip = false;
    bool no_dedup = false;
};

/// Dispatches to the module operations. Exit status: 0 success / verified,
/// 1 verification failure or negative-charge finding, 2 input error.
/// Budget defaults may be overridden by FLEXDP_COVER_BUDGET,
/// FLEXDP_COLORING_BUDGET and FLEXDP_OUTCOME_BUDGET when not set explicitly.
int run(const RunConfig& config, std::ostream& out);

} // namespace flexdp
