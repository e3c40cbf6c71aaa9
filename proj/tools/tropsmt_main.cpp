// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tropsmt/cli.hpp"

using namespace tropsmt;

namespace {

struct Flags {
    std::string epsilon = "1/11";
    std::string rounding = "integer";
    std::string mode = "equilibrium";
    std::string backend = "internal";
    std::string solver;
    double solver_timeout = 600;
    bool preprocess = false;
    bool no_minimize = false;
    bool no_prune = false;
    std::string filter = "bidirectional";
    std::size_t round_limit = 0;
    double time_limit = 0;
    std::string output;
    std::string stats = "human";
    std::string format = "json";
};

void add_run_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--backend", f.backend, "internal or external")
        ->check(CLI::IsMember({"internal", "external"}));
    cmd->add_option("--solver", f.solver, "external solver command line (default: $TROPSMT_SOLVER, z3, cvc5)");
    cmd->add_option("--solver-timeout", f.solver_timeout, "seconds per external check");
    cmd->add_flag("--preprocess", f.preprocess, "propagate singleton bags and drop redundant polyhedra first");
    cmd->add_flag("--no-minimize", f.no_minimize, "keep redundant constraints in found polyhedra");
    cmd->add_flag("--no-prune", f.no_prune, "baseline keeps intermediates included in siblings");
    cmd->add_option("--inclusion-filter", f.filter)->check(CLI::IsMember({"off", "forward", "bidirectional"}));
    cmd->add_option("--round-limit", f.round_limit, "stop after this many rounds");
    cmd->add_option("--time-limit", f.time_limit, "stop after this many seconds");
    cmd->add_option("--stats", f.stats)->check(CLI::IsMember({"human", "json"}));
    cmd->add_option("--format", f.format, "input format of bag files");
}

cli::RunConfig to_config(const Flags &f) {
    cli::RunConfig cfg;
    cfg.tropical.epsilon = parse_rational(f.epsilon);
    cfg.tropical.rounding = f.rounding == "rational" ? Rounding::Rational : Rounding::Integer;
    cfg.tropical.mode = f.mode == "prevariety" ? TropicalMode::Prevariety : TropicalMode::Equilibrium;
    cfg.backend = f.backend == "external" ? cli::Backend::External : cli::Backend::Internal;
    if (!f.solver.empty())
        cfg.external_command = split_command(f.solver);
    cfg.external_timeout = std::chrono::milliseconds(static_cast<long long>(f.solver_timeout * 1000));
    cfg.preprocess = f.preprocess;
    cfg.minimize = !f.no_minimize;
    cfg.baseline_prune = !f.no_prune;
    static const std::map<std::string, InclusionFilter> filters{{"off", InclusionFilter::Off},
                                                                {"forward", InclusionFilter::Forward},
                                                                {"bidirectional", InclusionFilter::Bidirectional}};
    cfg.inclusion_filter = filters.at(f.filter);
    if (f.round_limit > 0)
        cfg.round_limit = f.round_limit;
    if (f.time_limit > 0)
        cfg.time_limit = Duration(f.time_limit);
    if (!f.output.empty())
        cfg.output = f.output;
    cfg.stats_format = f.stats == "json" ? cli::StatsFormat::Json : cli::StatsFormat::Human;
    cfg.input_format = f.format;
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact tropical prevariety solver"};
    app.require_subcommand(1);
    Flags f;
    std::string input;
    std::vector<std::string> inputs;

    auto *trop = app.add_subcommand("tropicalize", "turn a polynomial system into a bag file");
    trop->add_option("system", input, "system file")->required()->check(CLI::ExistingFile);
    trop->add_option("--epsilon", f.epsilon, "valuation base, a rational in (0, 1)");
    trop->add_option("--rounding", f.rounding)->check(CLI::IsMember({"integer", "rational"}));
    trop->add_option("--mode", f.mode)->check(CLI::IsMember({"equilibrium", "prevariety"}));

    auto *solve = app.add_subcommand("solve", "enumerate the polyhedra of the intersection");
    solve->add_option("bags", input, "bag file")->required()->check(CLI::ExistingFile);
    add_run_flags(solve, f);

    auto *base = app.add_subcommand("baseline", "pairwise polyhedral intersection");
    base->add_option("bags", input, "bag file")->required()->check(CLI::ExistingFile);
    base->add_flag("--no-prune", f.no_prune, "keep polyhedra included in siblings");
    base->add_option("--stats", f.stats)->check(CLI::IsMember({"human", "json"}));
    base->add_option("--format", f.format);

    auto *cmp = app.add_subcommand("compare", "run both algorithms and check that their unions agree");
    cmp->add_option("bags", input, "bag file")->required()->check(CLI::ExistingFile);
    add_run_flags(cmp, f);

    auto *bench = app.add_subcommand("bench", "compare over several bag files, one table row each");
    bench->add_option("bags", inputs, "bag files")->required()->check(CLI::ExistingFile);
    add_run_flags(bench, f);

    auto *exp = app.add_subcommand("export-smt", "write the initial formula as SMT-LIB2");
    exp->add_option("bags", input, "bag file")->required()->check(CLI::ExistingFile);
    exp->add_option("--format", f.format);

    for (auto *cmd : {trop, solve, base, cmp, bench, exp})
        cmd->add_option("-o,--output", f.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kInputError;
    }

    cli::RunConfig cfg;
    try {
        cfg = to_config(f);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kInputError;
    }

    if (trop->parsed())
        return cli::cmd_tropicalize(input, cfg, std::cout, std::cerr);
    if (solve->parsed())
        return cli::cmd_solve(input, cfg, std::cout, std::cerr);
    if (base->parsed())
        return cli::cmd_baseline(input, cfg, std::cout, std::cerr);
    if (cmp->parsed())
        return cli::cmd_compare(input, cfg, std::cout, std::cerr);
    if (bench->parsed())
        return cli::cmd_bench({inputs.begin(), inputs.end()}, cfg, std::cout, std::cerr);
    return cli::cmd_export_smt(input, cfg, std::cout, std::cerr);
}
