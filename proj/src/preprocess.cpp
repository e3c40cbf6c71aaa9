// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/preprocess.hpp"

#include <chrono>

namespace tropsmt {

PreprocessReport &PreprocessReport::operator+=(const PreprocessReport &o) {
    singleton_constraints_collected += o.singleton_constraints_collected;
    polyhedra_dropped_empty += o.polyhedra_dropped_empty;
    polyhedra_dropped_redundant += o.polyhedra_dropped_redundant;
    time_spent += o.time_spent;
    return *this;
}

std::pair<Problem, PreprocessReport> propagate_singletons(const Problem &p) {
    const auto start = std::chrono::steady_clock::now();
    p.validate();
    Problem out = p;
    PreprocessReport report;

    for (;;) {
        Polyhedron common(out.dimension);
        bool any_singleton = false;
        for (std::size_t b = 0; b < out.bags.size(); ++b) {
            if (out.bags[b].size() != 1)
                continue;
            any_singleton = true;
            common = intersect(common, out.bags[b].polyhedra.front());
        }
        if (!any_singleton)
            break;
        report.singleton_constraints_collected = common.size();

        bool new_singleton = false;
        for (auto &bag : out.bags) {
            if (bag.size() <= 1)
                continue;
            std::vector<Polyhedron> kept;
            for (auto &member : bag.polyhedra) {
                if (is_empty(intersect(member, common)))
                    ++report.polyhedra_dropped_empty;
                else
                    kept.push_back(std::move(member));
            }
            bag.polyhedra = std::move(kept);
            new_singleton = new_singleton || bag.size() == 1;
        }
        if (!new_singleton)
            break;
    }
    report.time_spent = std::chrono::steady_clock::now() - start;
    return {std::move(out), report};
}

std::pair<Problem, PreprocessReport> drop_redundant(const Problem &p, const SessionFactory &factory) {
    const auto start = std::chrono::steady_clock::now();
    p.validate();
    Problem out = p;
    PreprocessReport report;

    for (std::size_t b = 0; b < out.bags.size(); ++b) {
        std::vector<Formula> other_bags;
        for (std::size_t o = 0; o < out.bags.size(); ++o)
            if (o != b)
                other_bags.push_back(encode_bag(out.bags[o], out.dimension));
        const Formula rest = Formula::all_of(std::move(other_bags), out.dimension);

        auto &members = out.bags[b].polyhedra;
        for (std::size_t i = 0; i < members.size();) {
            std::vector<Polyhedron> siblings;
            for (std::size_t j = 0; j < members.size(); ++j)
                if (j != i)
                    siblings.push_back(members[j]);
            auto session = factory(out.dimension, out.variable_names);
            session->add_assertion(encode_polyhedron(members[i]));
            session->add_assertion(rest);
            session->add_assertion(Formula::negation(encode_union(siblings, out.dimension)));
            if (session->check()) {
                ++i;
            } else {
                members.erase(members.begin() + static_cast<std::ptrdiff_t>(i));
                ++report.polyhedra_dropped_redundant;
            }
        }
    }
    report.time_spent = std::chrono::steady_clock::now() - start;
    return {std::move(out), report};
}

std::pair<Problem, PreprocessReport> preprocess(const Problem &p, const SessionFactory &factory) {
    auto [propagated, report] = propagate_singletons(p);
    auto [reduced, more] = drop_redundant(propagated, factory);
    report += more;
    return {std::move(reduced), report};
}

} // namespace tropsmt
