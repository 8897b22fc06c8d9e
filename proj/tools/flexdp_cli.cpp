#include <iostream>

#include "CLI11.hpp"
#include "flexdp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"flexdp: weighted flexible DP-coloring workbench for plane graphs"};
    app.require_subcommand(1);

    flexdp::RunConfig cfg;
    std::string format = "human";

    auto add_common = [&](CLI::App* sub, bool needs_graph = true) {
        auto* g = sub->add_option("--graph", cfg.graph_path, "plane graph in .pg format");
        if (needs_graph) g->required();
        sub->add_option("--format", format, "human | structured")
            ->check(CLI::IsMember({"human", "structured"}));
        sub->add_option("--cover-budget", [&cfg](const std::vector<std::string>& v) {
            cfg.cover_budget = std::stoull(v[0]);
            return true;
        }, "max covers per quantified check");
        sub->add_option("--coloring-budget", [&cfg](const std::vector<std::string>& v) {
            cfg.coloring_budget = std::stoull(v[0]);
            return true;
        }, "max states per coloring search");
        sub->add_option("--outcome-budget", [&cfg](const std::vector<std::string>& v) {
            cfg.outcome_budget = std::stoull(v[0]);
            return true;
        }, "max support size for exact distributions");
        sub->add_flag("--no-strip", cfg.no_strip, "disable the peel reduction in FIX/FORB checks");
        sub->add_flag("--no-dedup", cfg.no_dedup,
                      "enumerate raw covers instead of canonical representatives");
        sub->add_option("-k", cfg.k, "list size (default 4)");
    };

    auto* check = app.add_subcommand("check", "validate a graph and test class membership");
    add_common(check);
    auto* findr = app.add_subcommand("find-reducible", "locate the first reducible configuration");
    add_common(findr);
    auto* verify = app.add_subcommand("verify", "verify a reducible configuration exhaustively");
    add_common(verify);
    verify->add_option("--block", cfg.manual_block, "explicit block S (vertex ids)");
    verify->add_option("--boundary", cfg.manual_boundary, "explicit boundary B");
    auto* resolve = app.add_subcommand("resolve", "build and verify a full resolution");
    add_common(resolve);
    auto* sample = app.add_subcommand("sample", "draw colorings from the recursive distribution");
    add_common(sample);
    sample->add_option("--seed", cfg.seed, "rng seed");
    sample->add_option("--n", cfg.sample_count, "number of samples");
    sample->add_option("--cover", cfg.cover_path, "cover in .cover format (default identity)");
    auto* satisfy = app.add_subcommand("satisfy", "satisfy a weighted request");
    add_common(satisfy);
    satisfy->add_option("--request", cfg.request_path, "request in .req format")->required();
    satisfy->add_option("--cover", cfg.cover_path, "cover in .cover format (default identity)");
    satisfy->add_option("--seed", cfg.seed, "rng seed (sampling fallback)");
    satisfy->add_option("--samples", cfg.sample_count, "samples in fallback mode");
    auto* discharge = app.add_subcommand("discharge", "run the discharging audit");
    add_common(discharge);
    discharge->add_flag("--log", cfg.log_transfers, "print the transfer log");
    auto* enumerate = app.add_subcommand("enumerate", "list colorings or count covers");
    add_common(enumerate);
    enumerate->add_option("--what", cfg.enumerate_what, "colorings | covers")
        ->check(CLI::IsMember({"colorings", "covers"}));
    enumerate->add_option("--cover", cfg.cover_path, "cover in .cover format (default identity)");
    enumerate->add_flag("--dedup", cfg.enum_dedup, "covers: canonical representatives only");

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.structured = format == "structured";
    return flexdp::run(cfg, std::cout);
}
