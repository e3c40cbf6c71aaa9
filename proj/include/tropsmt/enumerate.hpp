// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tropsmt/geometry.hpp"
#include "tropsmt/smt.hpp"

namespace tropsmt {

using Duration = std::chrono::duration<double>;

/// A result polyhedron together with the model point that produced it.
struct FoundPolyhedron {
    Polyhedron polyhedron;
    Point witness;
    std::size_t round = 0;
};

enum class InclusionFilter { Off, Forward, Bidirectional };

const char *to_string(InclusionFilter mode);

struct EnumerationOptions {
    bool minimize_constraints = true;
    InclusionFilter inclusion_filter = InclusionFilter::Bidirectional;
    std::optional<std::size_t> round_limit;
    std::optional<Duration> time_limit;
    std::function<void(const FoundPolyhedron &)> emit_callback;

    void validate() const;
};

/// Time spent in search (S), minimization (M) and insertion (I), plus
/// inclusion-filter counters.
struct RunStatistics {
    std::size_t rounds = 0;
    Duration time_search{0};
    Duration time_minimize{0};
    Duration time_inclusion{0};
    Duration time_total{0};
    std::size_t full_inclusion_checks = 0;
    std::size_t point_prefilter_hits = 0;
    std::size_t polyhedra_emitted = 0;
    std::size_t polyhedra_dropped = 0;
    std::size_t polyhedra_superseded = 0;
    std::size_t peak_live = 0;
};

struct EnumerationResult {
    std::vector<FoundPolyhedron> polyhedra;
    RunStatistics stats;
    bool complete = false;
};

/// Anytime enumeration of the solution union. `session` must be fresh and
/// match the problem's dimension; the problem's formula is asserted here.
EnumerationResult compute_polyhedron_dnf(const Problem &p, const EnumerationOptions &opts, SolverSession &session);

/// One containing polyhedron per bag: the one with the most constraints
/// tight at `x`, ties broken by input order. Throws std::logic_error when a
/// bag has no member containing `x`.
std::vector<Polyhedron> select_per_bag(std::span<const Rational> x, const Problem &p);

/// Drops each constraint c (in canonical order) for which the remaining
/// constraints imply c.
Polyhedron minimize_polyhedron(const Polyhedron &r);

enum class InsertOutcome { Inserted, DroppedSubsumed, InsertedSuperseding };

struct InsertResult {
    InsertOutcome outcome;
    std::vector<FoundPolyhedron> superseded;
};

InsertResult insert_filtered(std::vector<FoundPolyhedron> &results, FoundPolyhedron found, InclusionFilter mode,
                             RunStatistics &stats);

/// Solver-checked union inclusion: a subset of b iff (a and not b) is unsatisfiable.
bool union_included(std::span<const Polyhedron> a, std::span<const Polyhedron> b, std::size_t dimension,
                    const SessionFactory &factory = internal_session_factory());
bool unions_equal(std::span<const Polyhedron> a, std::span<const Polyhedron> b, std::size_t dimension,
                  const SessionFactory &factory = internal_session_factory());

std::vector<Polyhedron> polyhedra_of(std::span<const FoundPolyhedron> found);

} // namespace tropsmt
