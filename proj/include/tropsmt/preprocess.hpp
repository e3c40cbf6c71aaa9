// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "tropsmt/enumerate.hpp"
#include "tropsmt/geometry.hpp"
#include "tropsmt/smt.hpp"

namespace tropsmt {

struct PreprocessReport {
    std::size_t singleton_constraints_collected = 0;
    std::size_t polyhedra_dropped_empty = 0;
    std::size_t polyhedra_dropped_redundant = 0;
    Duration time_spent{0};

    PreprocessReport &operator+=(const PreprocessReport &o);
};

/// Intersects every polyhedron with the common constraints of the singleton
/// bags and drops the members that become empty. Repeats while the drops
/// create new singleton bags, so applying it twice changes nothing.
std::pair<Problem, PreprocessReport> propagate_singletons(const Problem &p);

/// Drops each member B of a bag when B and C and not A is unsatisfiable,
/// where A is the union of its bag siblings and C the rest of the problem.
/// Bags and members are visited in input order and removals are immediate.
std::pair<Problem, PreprocessReport> drop_redundant(const Problem &p,
                                                    const SessionFactory &factory = internal_session_factory());

/// propagate_singletons followed by drop_redundant.
std::pair<Problem, PreprocessReport> preprocess(const Problem &p,
                                                const SessionFactory &factory = internal_session_factory());

} // namespace tropsmt
