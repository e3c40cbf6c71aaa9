// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "tropsmt/baseline.hpp"
#include "tropsmt/io.hpp"
#include "tropsmt/preprocess.hpp"

namespace tropsmt::cli {

namespace {

std::map<std::string, ProblemReader> &readers() {
    static std::map<std::string, ProblemReader> table{{"json", [](const std::string &text) {
                                                            return parse_problem(text);
                                                        }}};
    return table;
}

std::mutex readers_mutex;

void emit(const RunConfig &cfg, std::ostream &out, const std::string &text) {
    if (cfg.output)
        write_text_file(*cfg.output, text);
    else
        out << text << std::flush;
}

std::string seconds(Duration d) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << d.count() << "s";
    return s.str();
}

double speedup(Duration baseline, Duration enumerate) {
    return enumerate.count() > 0 ? baseline.count() / enumerate.count() : 0.0;
}

// Runs `body` and maps the library's exception types onto exit codes.
template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const BackendError &e) {
        err << "backend error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kBackendError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

struct SolveRun {
    Problem problem;
    std::optional<PreprocessReport> report;
    EnumerationResult result;
};

SolveRun run_enumeration(const Problem &input, const RunConfig &cfg, std::ostream *stream) {
    SolveRun run{input, std::nullopt, {}};
    const auto factory = session_factory(cfg);
    if (cfg.preprocess) {
        auto [reduced, report] = preprocess(input, factory);
        run.problem = std::move(reduced);
        run.report = report;
    }
    auto opts = enumeration_options(cfg);
    if (stream) {
        const auto &names = run.problem.variable_names;
        opts.emit_callback = [stream, &names](const FoundPolyhedron &f) {
            *stream << "round " << f.round << ": " << to_string(f.polyhedron, names) << "\n" << std::flush;
        };
    }
    auto session = factory(run.problem.dimension, run.problem.variable_names);
    run.result = compute_polyhedron_dnf(run.problem, opts, *session);
    return run;
}

void print_human(std::ostream &err, const RunStatistics &s, std::size_t ph, bool complete) {
    err << "PH " << ph << ", rounds " << s.rounds << (complete ? "" : " (incomplete)") << ", S "
        << seconds(s.time_search) << ", M " << seconds(s.time_minimize) << ", I " << seconds(s.time_inclusion)
        << ", total " << seconds(s.time_total) << ", inclusion checks " << s.full_inclusion_checks << "/"
        << s.polyhedra_emitted << " emitted\n";
}

} // namespace

void RunConfig::validate() const {
    tropical.validate();
    if (round_limit && *round_limit == 0)
        throw std::invalid_argument("round limit must be positive");
    if (time_limit && time_limit->count() <= 0)
        throw std::invalid_argument("time limit must be positive");
    if (external_timeout.count() <= 0)
        throw std::invalid_argument("external solver timeout must be positive");
}

SessionFactory session_factory(const RunConfig &cfg) {
    if (cfg.backend == Backend::Internal)
        return internal_session_factory();
    ExternalSolverConfig ext;
    ext.timeout = cfg.external_timeout;
    if (!cfg.external_command.empty()) {
        ext.command = cfg.external_command;
    } else if (auto found = default_external_command()) {
        ext.command = *found;
    } else {
        throw BackendError(BackendError::Kind::ProcessFailure,
                           "no external solver found; set TROPSMT_SOLVER or pass --solver");
    }
    return external_session_factory(std::move(ext));
}

EnumerationOptions enumeration_options(const RunConfig &cfg) {
    EnumerationOptions opts;
    opts.minimize_constraints = cfg.minimize;
    opts.inclusion_filter = cfg.inclusion_filter;
    opts.round_limit = cfg.round_limit;
    opts.time_limit = cfg.time_limit;
    return opts;
}

void register_problem_format(const std::string &name, ProblemReader reader) {
    std::lock_guard lock(readers_mutex);
    readers()[name] = std::move(reader);
}

Problem load_problem(const std::filesystem::path &path, const std::string &format) {
    ProblemReader reader;
    {
        std::lock_guard lock(readers_mutex);
        auto it = readers().find(format);
        if (it == readers().end())
            throw ParseError("unknown input format '" + format + "'");
        reader = it->second;
    }
    Problem p = reader(read_text_file(path));
    try {
        p.validate();
    } catch (const std::invalid_argument &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return p;
}

int cmd_tropicalize(const std::filesystem::path &system_file, const RunConfig &cfg, std::ostream &out,
                    std::ostream &err) {
    return guarded(err, [&] {
        cfg.validate();
        const PolynomialSystem sys = parse_system(read_text_file(system_file));
        const auto result = tropicalize_system(sys, cfg.tropical);
        for (std::size_t e : result.rootless_equations)
            err << "warning: equation " << e + 1 << " has no tropical root; its bag is empty\n";
        for (std::size_t b = 0; b < result.problem.bags.size(); ++b)
            err << "bag " << b + 1 << ": " << result.problem.bags[b].size() << " polyhedra\n";
        err << "Comb " << result.problem.combination_count() << "\n";
        emit(cfg, out, serialize_problem(result.problem));
        return kOk;
    });
}

int cmd_solve(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        cfg.validate();
        const Problem input = load_problem(bag_file, cfg.input_format);
        const SolveRun run = run_enumeration(input, cfg, &err);
        const auto &r = run.result;
        Json doc = result_to_json(run.problem, r, run.report ? &*run.report : nullptr);
        emit(cfg, out, pretty_json(doc) + "\n");
        if (cfg.stats_format == StatsFormat::Json)
            err << Json{{"stats", doc["stats"]}}.dump() << "\n";
        else
            print_human(err, r.stats, r.polyhedra.size(), r.complete);
        return r.complete ? kOk : kIncomplete;
    });
}

int cmd_baseline(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        cfg.validate();
        const Problem input = load_problem(bag_file, cfg.input_format);
        const BaselineResult r = naive_intersection(input, cfg.baseline_prune);
        Json doc = result_to_json(input, r);
        emit(cfg, out, pretty_json(doc) + "\n");
        if (cfg.stats_format == StatsFormat::Json)
            err << Json{{"stats", doc["stats"]}}.dump() << "\n";
        else
            err << "PH " << r.polyhedra.size() << ", IntMaxPH " << r.stats.max_intermediate << ", intersections "
                << r.stats.intersections_performed << ", total " << seconds(r.stats.time_total) << "\n";
        return kOk;
    });
}

int cmd_compare(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        cfg.validate();
        const Problem input = load_problem(bag_file, cfg.input_format);
        // Sequential on purpose, so the two timings are comparable.
        const SolveRun run = run_enumeration(input, cfg, nullptr);
        const BaselineResult base = naive_intersection(input, cfg.baseline_prune);
        const auto found = polyhedra_of(run.result.polyhedra);
        const bool agree = run.result.complete &&
                           unions_equal(found, base.polyhedra, input.dimension, internal_session_factory());

        const auto &s = run.result.stats;
        const Duration enum_time = s.time_total + (run.report ? run.report->time_spent : Duration{0});
        Json doc = Json::object();
        doc["agree"] = agree;
        doc["complete"] = run.result.complete;
        doc["ph"] = found.size();
        doc["baseline_ph"] = base.polyhedra.size();
        doc["int_max_ph"] = base.stats.max_intermediate;
        doc["rounds"] = s.rounds;
        doc["time_enumerate"] = enum_time.count();
        doc["time_baseline"] = base.stats.time_total.count();
        doc["speedup"] = speedup(base.stats.time_total, enum_time);
        doc["enumerate"] = statistics_to_json(s);
        doc["baseline"] = statistics_to_json(base.stats);

        std::string text;
        if (cfg.stats_format == StatsFormat::Json) {
            text = pretty_json(doc) + "\n";
        } else {
            std::ostringstream s_out;
            s_out << (agree ? "agree" : "DISAGREE") << ": PH " << found.size() << " (baseline "
                  << base.polyhedra.size() << "), IntMaxPH " << base.stats.max_intermediate << ", rounds "
                  << s.rounds << "\n"
                  << "enumerate " << seconds(enum_time) << ", baseline " << seconds(base.stats.time_total)
                  << ", speed-up " << std::setprecision(3) << speedup(base.stats.time_total, enum_time) << "\n";
            text = s_out.str();
        }
        emit(cfg, out, text);
        if (!run.result.complete)
            return kIncomplete;
        return agree ? kOk : kDisagreement;
    });
}

int cmd_export_smt(const std::filesystem::path &bag_file, const RunConfig &cfg, std::ostream &out,
                   std::ostream &err) {
    return guarded(err, [&] {
        const Problem input = load_problem(bag_file, cfg.input_format);
        const Formula f = encode_problem(input);
        emit(cfg, out, export_smtlib2(std::span<const Formula>(&f, 1), input.variable_names));
        return kOk;
    });
}

int cmd_bench(const std::vector<std::filesystem::path> &bag_files, const RunConfig &cfg, std::ostream &out,
              std::ostream &err) {
    return guarded(err, [&] {
        cfg.validate();
        std::ostringstream table;
        int status = kOk;
        if (cfg.stats_format == StatsFormat::Human)
            table << std::left << std::setw(28) << "file" << std::right << std::setw(12) << "Comb" << std::setw(6)
                  << "PH" << std::setw(8) << "rounds" << std::setw(10) << "S" << std::setw(10) << "M"
                  << std::setw(10) << "I" << std::setw(10) << "enum" << std::setw(10) << "base" << std::setw(10)
                  << "IntMaxPH" << std::setw(6) << "ok" << "\n";
        Json rows = Json::array();
        for (const auto &path : bag_files) {
            const Problem input = load_problem(path, cfg.input_format);
            const SolveRun run = run_enumeration(input, cfg, nullptr);
            const BaselineResult base = naive_intersection(input, cfg.baseline_prune);
            const auto found = polyhedra_of(run.result.polyhedra);
            const bool agree = run.result.complete && unions_equal(found, base.polyhedra, input.dimension);
            if (!run.result.complete)
                status = std::max(status, static_cast<int>(kIncomplete));
            if (run.result.complete && !agree)
                status = kDisagreement;
            const auto &s = run.result.stats;
            if (cfg.stats_format == StatsFormat::Json) {
                rows.push_back(Json{{"file", path.string()},
                                    {"comb", input.combination_count()},
                                    {"ph", found.size()},
                                    {"rounds", s.rounds},
                                    {"enumerate", statistics_to_json(s)},
                                    {"baseline", statistics_to_json(base.stats)},
                                    {"agree", agree}});
            } else {
                auto sec = [](Duration d) { return seconds(d); };
                table << std::left << std::setw(28) << path.filename().string() << std::right << std::setw(12)
                      << input.combination_count() << std::setw(6) << found.size() << std::setw(8) << s.rounds
                      << std::setw(10) << sec(s.time_search) << std::setw(10) << sec(s.time_minimize)
                      << std::setw(10) << sec(s.time_inclusion) << std::setw(10) << sec(s.time_total)
                      << std::setw(10) << sec(base.stats.time_total) << std::setw(10) << base.stats.max_intermediate
                      << std::setw(6) << (agree ? "yes" : "NO") << "\n";
            }
        }
        emit(cfg, out, cfg.stats_format == StatsFormat::Json ? pretty_json(rows) + "\n" : table.str());
        return status;
    });
}

} // namespace tropsmt::cli
