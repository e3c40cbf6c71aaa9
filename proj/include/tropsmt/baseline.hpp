// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tropsmt/enumerate.hpp"
#include "tropsmt/geometry.hpp"

namespace tropsmt {

struct BaselineStats {
    std::size_t max_intermediate = 0; ///< peak nonempty polyhedra in any bag, before pruning
    std::size_t intersections_performed = 0;
    std::size_t empties_dropped = 0;
    std::size_t subsumed_dropped = 0;
    Duration time_total{0};
};

struct BaselineResult {
    std::vector<Polyhedron> polyhedra;
    BaselineStats stats;
};

/// Pairwise bag intersection: repeatedly replace the two bags with the
/// smallest size product by all their nonempty pairwise intersections,
/// optionally dropping members included in another member of the new bag.
BaselineResult naive_intersection(const Problem &p, bool prune);

} // namespace tropsmt
