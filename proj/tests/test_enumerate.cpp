// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropsmt/baseline.hpp"
#include "tropsmt/enumerate.hpp"

using namespace tropsmt;
using tropsmt::testing::Gen;

namespace {

LinearConstraint le(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Le}; }
LinearConstraint eq(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Eq}; }

EnumerationResult run(const Problem &p, EnumerationOptions opts = {}) {
    auto s = make_internal_session(p.dimension, p.variable_names);
    return compute_polyhedron_dnf(p, opts, *s);
}

Problem quadrants() {
    return Problem(2, {Bag{{Polyhedron(2, {le({1, 0}, 0)}), Polyhedron(2, {le({-1, 0}, 0)})}},
                       Bag{{Polyhedron(2, {le({0, 1}, 0)}), Polyhedron(2, {le({0, -1}, 0)})}}});
}

} // namespace

TEST(Enumerate, SinglePolyhedron) {
    const Polyhedron half(1, {le({1}, 0)});
    const auto r = run(Problem(1, {Bag{{half}}}));
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.stats.rounds, 1u);
    ASSERT_EQ(r.polyhedra.size(), 1u);
    EXPECT_EQ(r.polyhedra[0].polyhedron, half);
    EXPECT_EQ(r.polyhedra[0].round, 1u);
}

TEST(Enumerate, EmptyBagMeansNoSolution) {
    const auto r = run(Problem(2, {Bag{{Polyhedron(2)}}, Bag{}}));
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.stats.rounds, 0u);
    EXPECT_TRUE(r.polyhedra.empty());
}

TEST(Enumerate, ZeroBagsIsTheWholeSpace) {
    const auto r = run(Problem(3));
    ASSERT_EQ(r.polyhedra.size(), 1u);
    EXPECT_TRUE(r.polyhedra[0].polyhedron.is_universe());
}

TEST(Enumerate, Quadrants) {
    const Problem p = quadrants();
    const auto r = run(p);
    EXPECT_TRUE(r.complete);
    EXPECT_LE(r.polyhedra.size(), 4u);
    EXPECT_GE(r.stats.rounds, r.polyhedra.size());
    const auto base = naive_intersection(p, true);
    EXPECT_TRUE(unions_equal(polyhedra_of(r.polyhedra), base.polyhedra, 2));
    EXPECT_TRUE(unions_equal(polyhedra_of(r.polyhedra), std::vector<Polyhedron>{Polyhedron(2)}, 2));
}

TEST(Enumerate, RoundLimitGivesIncompletePrefix) {
    EnumerationOptions opts;
    opts.round_limit = 1;
    const auto r = run(quadrants(), opts);
    EXPECT_FALSE(r.complete);
    EXPECT_EQ(r.stats.rounds, 1u);
    EXPECT_EQ(r.polyhedra.size(), 1u);
}

TEST(Enumerate, TimeLimitStops) {
    EnumerationOptions opts;
    opts.time_limit = Duration(1e-9);
    const auto r = run(tropsmt::testing::slab_family(6), opts);
    EXPECT_FALSE(r.complete);
    opts.time_limit = Duration(0);
    EXPECT_THROW(run(quadrants(), opts), std::invalid_argument);
    opts.time_limit.reset();
    opts.round_limit = 0;
    EXPECT_THROW(run(quadrants(), opts), std::invalid_argument);
}

TEST(SelectPerBag, PrefersMoreTightConstraints) {
    const Polyhedron loose(1, {le({1}, -5)});            // x <= 5
    const Polyhedron tight(1, {le({1}, 0), le({-1}, -3)}); // -3 <= x <= 0
    const Problem p(1, {Bag{{loose, tight}}});
    EXPECT_EQ(select_per_bag(Point{0}, p).front(), tight);
    EXPECT_EQ(select_per_bag(Point{-1}, p).front(), loose); // tie at zero tight rows: input order
    EXPECT_EQ(select_per_bag(Point{5}, p).front(), loose);
    for (int i = 0; i < 3; ++i)
        EXPECT_EQ(select_per_bag(Point{0}, p).front(), tight);
}

TEST(SelectPerBag, SingletonsAndInteriorPoints) {
    const Problem p = quadrants();
    const auto chosen = select_per_bag(Point{1, -1}, p);
    ASSERT_EQ(chosen.size(), 2u);
    EXPECT_EQ(chosen[0], p.bags[0].polyhedra[1]);
    EXPECT_EQ(chosen[1], p.bags[1].polyhedra[0]);
    const Problem single(1, {Bag{{Polyhedron(1, {le({1}, 0)})}}});
    EXPECT_EQ(select_per_bag(Point{-7}, single).front(), single.bags[0].polyhedra[0]);
    EXPECT_THROW(select_per_bag(Point{7}, single), std::logic_error);
}

TEST(Minimize, Examples) {
    EXPECT_EQ(minimize_polyhedron(Polyhedron(1, {le({1}, 0), le({1}, -1)})), Polyhedron(1, {le({1}, 0)}));
    const Polyhedron half(1, {le({1}, 0)});
    EXPECT_EQ(minimize_polyhedron(half), half);
    const Polyhedron box(2, {le({1, 0}, -1), le({0, 1}, -1), le({1, 1}, -2)});
    const Polyhedron m = minimize_polyhedron(box);
    EXPECT_EQ(m, Polyhedron(2, {le({1, 0}, -1), le({0, 1}, -1)}));
    EXPECT_TRUE(includes(m, box) && includes(box, m));
}

TEST(Minimize, PreservesSolutionSet) {
    Gen gen(50);
    for (int i = 0; i < 300; ++i) {
        const auto p = gen.polyhedron(3, 6, 3);
        if (is_empty(p))
            continue;
        const auto m = minimize_polyhedron(p);
        EXPECT_LE(m.size(), p.size());
        EXPECT_TRUE(includes(m, p) && includes(p, m)) << to_string(p) << " -> " << to_string(m);
    }
}

TEST(InsertFiltered, DropsSubsumedNewPolyhedron) {
    std::vector<FoundPolyhedron> results{{Polyhedron(2, {le({0, 1}, 0)}), Point{-1, -1}, 1}};
    RunStatistics stats;
    const FoundPolyhedron face{Polyhedron(2, {eq({1, 0}, 0), le({0, 1}, 0)}), Point{0, -2}, 2};
    const auto r = insert_filtered(results, face, InclusionFilter::Forward, stats);
    EXPECT_EQ(r.outcome, InsertOutcome::DroppedSubsumed);
    EXPECT_EQ(results.size(), 1u);
    EXPECT_EQ(stats.polyhedra_dropped, 1u);
    EXPECT_EQ(stats.full_inclusion_checks, 1u);
}

TEST(InsertFiltered, SupersedesEarlierFace) {
    const FoundPolyhedron face{Polyhedron(2, {eq({1, 0}, 0), le({0, 1}, 0)}), Point{0, -2}, 1};
    std::vector<FoundPolyhedron> results{face};
    RunStatistics stats;
    const FoundPolyhedron half{Polyhedron(2, {le({0, 1}, 0)}), Point{3, -1}, 2};
    const auto r = insert_filtered(results, half, InclusionFilter::Bidirectional, stats);
    EXPECT_EQ(r.outcome, InsertOutcome::InsertedSuperseding);
    ASSERT_EQ(r.superseded.size(), 1u);
    EXPECT_EQ(r.superseded[0].polyhedron, face.polyhedron);
    ASSERT_EQ(results.size(), 1u);
    EXPECT_EQ(results[0].polyhedron, half.polyhedron);
    EXPECT_EQ(stats.polyhedra_superseded, 1u);

    // Forward mode keeps both.
    std::vector<FoundPolyhedron> fwd{face};
    RunStatistics s2;
    EXPECT_EQ(insert_filtered(fwd, half, InclusionFilter::Forward, s2).outcome, InsertOutcome::Inserted);
    EXPECT_EQ(fwd.size(), 2u);
}

TEST(InsertFiltered, DisjointNeedsNoFullChecks) {
    std::vector<FoundPolyhedron> results{{Polyhedron(1, {le({1}, 1)}), Point{-2}, 1}};
    RunStatistics stats;
    const auto r =
        insert_filtered(results, {Polyhedron(1, {le({-1}, 1)}), Point{2}, 2}, InclusionFilter::Bidirectional, stats);
    EXPECT_EQ(r.outcome, InsertOutcome::Inserted);
    EXPECT_EQ(stats.full_inclusion_checks, 0u);
    EXPECT_EQ(results.size(), 2u);

    RunStatistics off;
    insert_filtered(results, results.front(), InclusionFilter::Off, off);
    EXPECT_EQ(results.size(), 3u);
    EXPECT_EQ(off.point_prefilter_hits, 0u);
}

class RandomProblems : public ::testing::TestWithParam<int> {};

TEST_P(RandomProblems, Invariants) {
    Gen gen(1000 + GetParam());
    const Problem p = gen.problem();
    std::vector<FoundPolyhedron> emitted;
    EnumerationOptions opts;
    opts.emit_callback = [&](const FoundPolyhedron &f) { emitted.push_back(f); };
    const auto start = std::chrono::steady_clock::now();
    const auto r = run(p, opts);
    const Duration wall = std::chrono::steady_clock::now() - start;
    ASSERT_TRUE(r.complete);

    // Completeness against the baseline.
    const auto base = naive_intersection(p, true);
    const auto found = polyhedra_of(r.polyhedra);
    ASSERT_TRUE(unions_equal(found, base.polyhedra, p.dimension));
    ASSERT_FALSE(tropsmt::testing::grid_difference(found, base.polyhedra, p.dimension, p.dimension <= 2 ? 3 : 1));

    for (std::size_t i = 0; i < emitted.size(); ++i) {
        const auto &f = emitted[i];
        EXPECT_TRUE(contains(f.polyhedron, f.witness));
        EXPECT_FALSE(is_empty(f.polyhedron));
        // Soundness: the emitted polyhedron lies in every bag.
        for (const auto &bag : p.bags)
            EXPECT_TRUE(union_included(std::vector<Polyhedron>{f.polyhedron}, bag.polyhedra, p.dimension));
        // Witness exclusion: earlier polyhedra strictly exclude later witnesses.
        for (std::size_t j = 0; j < i; ++j)
            EXPECT_FALSE(contains(emitted[j].polyhedron, f.witness));
    }
    // Superseded entries are still covered by the final list.
    EXPECT_TRUE(union_included(polyhedra_of(emitted), found, p.dimension));

    // No mutual inclusion at termination.
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < found.size(); ++j)
            if (i != j)
                EXPECT_FALSE(includes(found[i], found[j]));

    const auto &s = r.stats;
    EXPECT_LE((s.time_search + s.time_minimize + s.time_inclusion).count(), wall.count());
    EXPECT_LE(s.full_inclusion_checks, s.point_prefilter_hits);
    EXPECT_EQ(s.polyhedra_emitted, emitted.size());
    EXPECT_EQ(s.polyhedra_emitted - s.polyhedra_superseded, found.size());
    EXPECT_GE(s.peak_live, found.size());

    // Anytime: every prefix is inside the final union.
    for (std::size_t limit = 1; limit < s.rounds; ++limit) {
        EnumerationOptions lim;
        lim.round_limit = limit;
        const auto partial = run(p, lim);
        EXPECT_FALSE(partial.complete);
        EXPECT_TRUE(union_included(polyhedra_of(partial.polyhedra), found, p.dimension));
    }

    // Determinism.
    const auto again = run(p);
    EXPECT_EQ(polyhedra_of(again.polyhedra), found);
}

INSTANTIATE_TEST_SUITE_P(Corpus, RandomProblems, ::testing::Range(0, 60));

TEST(Enumerate, UnminimizedResultIsIntersectionOfChoices) {
    Gen gen(51);
    EnumerationOptions opts;
    opts.minimize_constraints = false;
    opts.inclusion_filter = InclusionFilter::Off;
    for (int i = 0; i < 40; ++i) {
        const Problem p = gen.problem(3, 3, 3, 3, 4);
        for (const auto &f : run(p, opts).polyhedra) {
            Polyhedron expected(p.dimension);
            for (const auto &part : select_per_bag(f.witness, p))
                expected = intersect(expected, part);
            EXPECT_EQ(f.polyhedron, expected);
        }
    }
}

TEST(Enumerate, FiltersAndMinimizationAgree) {
    Gen gen(52);
    for (int i = 0; i < 30; ++i) {
        const Problem p = gen.problem();
        const auto reference = polyhedra_of(run(p).polyhedra);
        for (auto filter : {InclusionFilter::Off, InclusionFilter::Forward})
            for (bool minimize : {false, true}) {
                EnumerationOptions opts;
                opts.inclusion_filter = filter;
                opts.minimize_constraints = minimize;
                EXPECT_TRUE(unions_equal(polyhedra_of(run(p, opts).polyhedra), reference, p.dimension));
            }
    }
}
