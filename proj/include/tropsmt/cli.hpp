// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tropsmt/enumerate.hpp"
#include "tropsmt/smt.hpp"
#include "tropsmt/tropicalize.hpp"

namespace tropsmt::cli {

enum class Backend { Internal, External };
enum class StatsFormat { Human, Json };

struct RunConfig {
    TropicalizationConfig tropical; // eps 1/11, integer rounding, equilibrium
    Backend backend = Backend::Internal;
    std::vector<std::string> external_command; ///< empty: $TROPSMT_SOLVER or a solver on PATH
    std::chrono::milliseconds external_timeout{std::chrono::minutes(10)};
    bool preprocess = false;
    bool minimize = true;
    bool baseline_prune = true; ///< drop subsumed intermediates in the baseline
    InclusionFilter inclusion_filter = InclusionFilter::Bidirectional;
    std::optional<std::size_t> round_limit;
    std::optional<Duration> time_limit;
    std::optional<std::filesystem::path> output; ///< stdout when unset
    StatsFormat stats_format = StatsFormat::Human;
    std::string input_format = "json";

    void validate() const;
};

enum ExitCode : int {
    kOk = 0,
    kIncomplete = 2,
    kDisagreement = 3,
    kInputError = 4,
    kBackendError = 5,
};

/// Throws BackendError when the external backend is requested but no solver is found.
SessionFactory session_factory(const RunConfig &cfg);
EnumerationOptions enumeration_options(const RunConfig &cfg);

/// Reader for a bag-file syntax. "json" is built in; others can be registered.
using ProblemReader = std::function<Problem(const std::string &text)>;
void register_problem_format(const std::string &name, ProblemReader reader);
Problem load_problem(const std::filesystem::path &path, const std::string &format = "json");

// Each command writes its primary artifact to cfg.output (or `out`) and
// diagnostics to `err`, and returns an ExitCode. Exceptions are mapped to
// exit codes here, so callers only see return values.
int cmd_tropicalize(const std::filesystem::path &system_file, const RunConfig &cfg, std::ostream &out,
                    std::ostream &err);
int cmd_solve(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_baseline(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_compare(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_export_smt(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out,
                   std::ostream &err);
/// One table row per bag file: Comb, PH, rounds, times of both algorithms, IntMaxPH.
int cmd_bench(const std::vector<std::filesystem::path> &bag_files, const RunConfig &cfg, std::ostream &out,
              std::ostream &err);

} // namespace tropsmt::cli
