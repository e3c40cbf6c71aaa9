// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropsmt/baseline.hpp"
#include "tropsmt/preprocess.hpp"

using namespace tropsmt;
using tropsmt::testing::Gen;

namespace {

LinearConstraint le(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Le}; }
LinearConstraint eq(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Eq}; }

bool same_solution(const Problem &a, const Problem &b) {
    return unions_equal(naive_intersection(a, false).polyhedra, naive_intersection(b, false).polyhedra, a.dimension);
}

} // namespace

TEST(PropagateSingletons, NoSingletonsIsIdentity) {
    const Problem p(1, {Bag{{Polyhedron(1, {le({1}, 0)}), Polyhedron(1, {le({-1}, -1)})}}});
    const auto [out, report] = propagate_singletons(p);
    EXPECT_EQ(out, p);
    EXPECT_EQ(report.polyhedra_dropped_empty, 0u);
    EXPECT_EQ(report.singleton_constraints_collected, 0u);
}

TEST(PropagateSingletons, DropsPolyhedraDisjointFromSingletons) {
    const Polyhedron zero(2, {eq({1, 0}, 0)});
    const Polyhedron far(2, {le({-1, 0}, 1), le({0, 1}, 0)}); // x1 >= 1
    const Polyhedron near(2, {le({0, 1}, 0)});
    const Problem p(2, {Bag{{zero}}, Bag{{far, near}}});
    const auto [out, report] = propagate_singletons(p);
    ASSERT_EQ(out.bags.size(), 2u);
    EXPECT_EQ(out.bags[0].polyhedra, std::vector<Polyhedron>{zero});
    EXPECT_EQ(out.bags[1].polyhedra, std::vector<Polyhedron>{near});
    EXPECT_EQ(report.polyhedra_dropped_empty, 1u);
    // x1 = 0 first, then x2 <= 0 once the second bag became a singleton.
    EXPECT_EQ(report.singleton_constraints_collected, 2u);
}

TEST(PropagateSingletons, CanEmptyABag) {
    const Problem p(1, {Bag{{Polyhedron(1, {le({1}, 0)})}},           // x <= 0
                        Bag{{Polyhedron(1, {le({-1}, 2)})}},          // x >= 2
                        Bag{{Polyhedron(1, {le({1}, -5)}), Polyhedron(1)}}});
    const auto [out, report] = propagate_singletons(p);
    EXPECT_TRUE(out.bags[2].empty());
    EXPECT_TRUE(naive_intersection(p, true).polyhedra.empty());
    EXPECT_TRUE(naive_intersection(out, true).polyhedra.empty());
}

TEST(PropagateSingletons, Idempotent) {
    Gen gen(60);
    for (int i = 0; i < 100; ++i) {
        Problem p = gen.problem(3, 4, 3, 3, 4);
        if (!p.bags.empty() && gen.coin())
            p.bags.push_back(Bag{{gen.polyhedron(p.dimension, 2, 3)}});
        const auto once = propagate_singletons(p).first;
        EXPECT_EQ(propagate_singletons(once).first, once);
    }
}

TEST(DropRedundant, SubsetDroppedDisjointKept) {
    const Polyhedron a(1, {le({1}, 0)});
    const Polyhedron b(1, {le({1}, -1)});
    const auto [out, report] = drop_redundant(Problem(1, {Bag{{a, b}}}));
    EXPECT_EQ(out.bags[0].polyhedra, std::vector<Polyhedron>{b});
    EXPECT_EQ(report.polyhedra_dropped_redundant, 1u);

    const Polyhedron c(1, {le({1}, 1)});  // x <= -1
    const Polyhedron d(1, {le({-1}, 1)}); // x >= 1
    const auto [kept, r2] = drop_redundant(Problem(1, {Bag{{c, d}}}));
    EXPECT_EQ(kept.bags[0].size(), 2u);
    EXPECT_EQ(r2.polyhedra_dropped_redundant, 0u);
}

TEST(DropRedundant, DisjointFromOtherBags) {
    // In bag 0, {x >= 3} overlaps its sibling but misses bag 1 entirely.
    const Problem p(1, {Bag{{Polyhedron(1, {le({-1}, 3)}), Polyhedron(1, {le({1}, -4)})}},
                        Bag{{Polyhedron(1, {le({1}, -2)})}}});
    const auto [out, report] = drop_redundant(p);
    EXPECT_EQ(out.bags[0].size(), 1u);
    EXPECT_EQ(out.bags[0].polyhedra[0], p.bags[0].polyhedra[1]);
    EXPECT_TRUE(same_solution(p, out));
}

TEST(Preprocess, PreservesSolutionsOnRandomProblems) {
    Gen gen(61);
    for (int i = 0; i < 80; ++i) {
        const Problem p = gen.problem();
        const auto [out, report] = preprocess(p);
        ASSERT_TRUE(same_solution(p, out)) << "problem " << i;
        EXPECT_EQ(report.polyhedra_dropped_empty + report.polyhedra_dropped_redundant,
                  p.polyhedron_count() - out.polyhedron_count());
        // A bag only loses its last member when the whole solution is empty.
        for (std::size_t b = 0; b < p.bags.size(); ++b)
            if (!p.bags[b].empty() && out.bags[b].empty()) {
                EXPECT_TRUE(naive_intersection(p, true).polyhedra.empty());
            }
    }
}
