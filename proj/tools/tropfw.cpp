#include <string>

#include <CLI11.hpp>

#include "tropfw/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, tropfw::RunConfig& cfg) {
    cmd->add_option("--output", cfg.output, "Output file (default: stdout)");
    cmd->add_option("--tol-tie", cfg.tol_tie, "Tie-detection tolerance");
    cmd->add_option("--tol-obj", cfg.tol_obj, "Objective convergence tolerance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical Fermat-Weber polytrope solver"};
    app.require_subcommand(1);

    tropfw::RunConfig cfg;
    std::string schedule = "exact-line-search";

    auto* solve = app.add_subcommand("solve", "Exact min-cost-flow pipeline");
    solve->add_option("--input", cfg.input, "Sample CSV/TSV")->required();
    add_common_flags(solve, cfg);

    auto* descend = app.add_subcommand("descend", "Iterative subgradient descent");
    descend->add_option("--input", cfg.input, "Sample CSV/TSV")->required();
    descend->add_option("--x0", cfg.x0, "Start point, e.g. \"0,0,0\"");
    descend->add_option("--step0", cfg.step0, "Initial step size (default: f(x0)/2n)");
    descend->add_option("--schedule", schedule, "diminishing|constant|exact-line-search");
    descend->add_option("--max-iters", cfg.max_iters, "Iteration budget");
    descend->add_option("--seed", cfg.seed, "Seed for the random start point");
    add_common_flags(descend, cfg);

    auto* distance = app.add_subcommand("distance", "Tropical distance of two points");
    distance->add_option("points", cfg.points, "Two point literals")->expected(2);
    add_common_flags(distance, cfg);

    auto* oracle = app.add_subcommand("oracle-check", "Grid-verify a solve output");
    oracle->add_option("--input", cfg.input, "JSON produced by solve")->required();
    oracle->add_option("--grid-h", cfg.grid_h, "Grid spacing");
    add_common_flags(oracle, cfg);

    auto* plot = app.add_subcommand("plot", "SVG plot of a d=3 instance");
    plot->add_option("--input", cfg.input, "Sample CSV/TSV")->required();
    add_common_flags(plot, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : tropfw::kExitInputError;
    }

    if (schedule == "diminishing") {
        cfg.schedule = tropfw::StepSchedule::diminishing;
    } else if (schedule == "constant") {
        cfg.schedule = tropfw::StepSchedule::constant;
    } else if (schedule == "exact-line-search") {
        cfg.schedule = tropfw::StepSchedule::exact_line_search;
    } else {
        std::cerr << "tropfw: unknown schedule: " << schedule << "\n";
        return tropfw::kExitInputError;
    }

    if (solve->parsed()) return tropfw::cmd_solve(cfg);
    if (descend->parsed()) return tropfw::cmd_descend(cfg);
    if (distance->parsed()) return tropfw::cmd_distance(cfg);
    if (oracle->parsed()) return tropfw::cmd_oracle_check(cfg);
    if (plot->parsed()) return tropfw::cmd_plot(cfg);
    return tropfw::kExitInputError;
}
