// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/baseline.hpp"

#include <algorithm>
#include <chrono>

namespace tropsmt {

namespace {

void prune_subsumed(std::vector<Polyhedron> &bag, BaselineStats &stats) {
    std::vector<bool> dropped(bag.size(), false);
    for (std::size_t k = 0; k < bag.size(); ++k) {
        for (std::size_t m = 0; m < bag.size(); ++m) {
            if (m == k || dropped[m])
                continue;
            if (includes(bag[m], bag[k])) {
                dropped[k] = true;
                ++stats.subsumed_dropped;
                break;
            }
        }
    }
    std::vector<Polyhedron> kept;
    for (std::size_t k = 0; k < bag.size(); ++k)
        if (!dropped[k])
            kept.push_back(std::move(bag[k]));
    bag = std::move(kept);
}

} // namespace

BaselineResult naive_intersection(const Problem &p, bool prune) {
    const auto start = std::chrono::steady_clock::now();
    p.validate();
    BaselineResult out;
    auto &stats = out.stats;

    if (p.bags.empty()) {
        out.polyhedra.push_back(Polyhedron::universe(p.dimension));
        stats.time_total = std::chrono::steady_clock::now() - start;
        return out;
    }

    std::vector<std::vector<Polyhedron>> bags;
    bags.reserve(p.bags.size());
    for (const auto &bag : p.bags) {
        std::vector<Polyhedron> members;
        for (const auto &member : bag.polyhedra) {
            if (is_empty(member))
                ++stats.empties_dropped;
            else
                members.push_back(member);
        }
        stats.max_intermediate = std::max(stats.max_intermediate, members.size());
        if (prune)
            prune_subsumed(members, stats);
        bags.push_back(std::move(members));
    }

    while (bags.size() > 1) {
        std::size_t best_i = 0;
        std::size_t best_j = 1;
        double best_product = -1;
        for (std::size_t i = 0; i < bags.size(); ++i)
            for (std::size_t j = i + 1; j < bags.size(); ++j) {
                const double product = static_cast<double>(bags[i].size()) * static_cast<double>(bags[j].size());
                if (best_product < 0 || product < best_product) {
                    best_product = product;
                    best_i = i;
                    best_j = j;
                }
            }

        std::vector<Polyhedron> merged;
        for (const auto &a : bags[best_i])
            for (const auto &b : bags[best_j]) {
                ++stats.intersections_performed;
                Polyhedron r = intersect(a, b);
                if (is_empty(r))
                    ++stats.empties_dropped;
                else
                    merged.push_back(std::move(r));
            }
        stats.max_intermediate = std::max(stats.max_intermediate, merged.size());
        if (prune)
            prune_subsumed(merged, stats);

        bags.erase(bags.begin() + static_cast<std::ptrdiff_t>(best_j));
        bags.erase(bags.begin() + static_cast<std::ptrdiff_t>(best_i));
        bags.push_back(std::move(merged));
    }

    out.polyhedra = std::move(bags.front());
    stats.time_total = std::chrono::steady_clock::now() - start;
    return out;
}

} // namespace tropsmt
