// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropsmt/geometry.hpp"

using namespace tropsmt;
using tropsmt::testing::Gen;

namespace {

LinearConstraint le(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Le}; }
LinearConstraint eq(std::vector<Rational> a, Rational c) { return {std::move(a), std::move(c), Relation::Eq}; }

Point pt(std::initializer_list<Rational> xs) { return Point(xs); }

} // namespace

TEST(Canonicalize, GcdScaling) {
    EXPECT_EQ(canonicalize(le({2, 4}, 6)), le({1, 2}, 3));
}

TEST(Canonicalize, EqSignNormalization) {
    EXPECT_EQ(canonicalize(eq({-1, 0}, 0)), eq({1, 0}, 0));
}

TEST(Canonicalize, ClearsDenominators) {
    const auto raw = le({Rational(1, 2), Rational(1, 3)}, 0);
    const auto c = canonicalize(raw);
    EXPECT_EQ(c, le({3, 2}, 0));
    Gen gen(11);
    for (int i = 0; i < 200; ++i) {
        const Point x = gen.point(2, 4);
        EXPECT_EQ(satisfies(raw, x), satisfies(c, x));
    }
}

TEST(Canonicalize, ZeroFormsCollapse) {
    EXPECT_TRUE(is_trivially_true(canonicalize(le({0, 0}, -3))));
    EXPECT_TRUE(is_trivially_false(canonicalize(le({0, 0}, 3))));
    EXPECT_TRUE(is_trivially_false(canonicalize(LinearConstraint{{0}, 0, Relation::Lt})));
    EXPECT_TRUE(is_trivially_true(canonicalize(eq({0}, 0))));
    EXPECT_TRUE(is_trivially_false(canonicalize(eq({0}, 2))));
}

TEST(Canonicalize, IdempotentAndSolutionPreserving) {
    Gen gen(1);
    for (int i = 0; i < 1000; ++i) {
        auto c = gen.any_constraint(3, 6, true);
        const Rational scale(gen.integer(1, 9), gen.integer(1, 9));
        for (auto &a : c.coeffs)
            a *= scale;
        c.constant *= scale;
        const auto once = canonicalize(c);
        EXPECT_EQ(canonicalize(once), once);
        const Point x = gen.point(3, 3);
        EXPECT_EQ(satisfies(c, x), satisfies(once, x));
    }
}

TEST(Contains, Examples) {
    const Polyhedron half(1, {le({1}, 0)});
    EXPECT_TRUE(contains(half, pt({-1})));
    EXPECT_TRUE(contains(half, pt({0})));
    const Polyhedron p(2, {eq({1, 1}, 0), le({1, 0}, 0)});
    EXPECT_FALSE(contains(p, pt({1, -1})));
    EXPECT_THROW(contains(p, pt({1})), std::invalid_argument);
}

TEST(Intersect, Examples) {
    const Polyhedron a(1, {le({1}, 0)});
    EXPECT_EQ(intersect(a, a), a);
    const Polyhedron b(1, {le({-1}, 0)});
    EXPECT_EQ(intersect(a, b).size(), 2u);
    const Polyhedron c(2, {le({1, 0}, -1)});
    const Polyhedron d(2, {le({0, 1}, -2)});
    EXPECT_EQ(intersect(c, d).size(), 2u);
    EXPECT_THROW(intersect(a, c), std::invalid_argument);
}

TEST(Intersect, MatchesSetIntersection) {
    Gen gen(2);
    for (int i = 0; i < 1000; ++i) {
        const auto p = gen.polyhedron(2, 3, 4);
        const auto q = gen.polyhedron(2, 3, 4);
        const Point x = gen.point(2, 3);
        EXPECT_EQ(contains(intersect(p, q), x), contains(p, x) && contains(q, x));
    }
}

TEST(Polyhedron, OrderIndependentAndDeduplicated) {
    const Polyhedron a(2, {le({1, 0}, 0), le({0, 2}, 2), le({2, 0}, 0)});
    const Polyhedron b(2, {le({0, 1}, 1), le({1, 0}, 0)});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), 2u);
    EXPECT_TRUE(Polyhedron(2, {le({0, 0}, -1)}).is_universe());
}

TEST(IsEmpty, Examples) {
    EXPECT_TRUE(is_empty(Polyhedron(1, {le({1}, 1), le({-1}, 1)})));
    EXPECT_FALSE(is_empty(Polyhedron(2)));
    // The equalities force (1, 1), where x1 + x2 = 2 > 0.
    const Polyhedron p(2, {le({1, 1}, 0), eq({1, 0}, -1), eq({0, 1}, -1)});
    EXPECT_FALSE(contains(Polyhedron(2, {le({1, 1}, 0)}), pt({1, 1})));
    EXPECT_TRUE(is_empty(p));
}

TEST(Includes, Examples) {
    EXPECT_TRUE(includes(Polyhedron(1, {le({1}, -1)}), Polyhedron(1, {le({1}, 0)})));
    EXPECT_FALSE(includes(Polyhedron(1, {le({1}, 0)}), Polyhedron(1, {le({1}, -1)})));

    const Polyhedron p(2, {le({1, 1}, -2)});
    const Polyhedron q(2, {le({1, 0}, -1), le({0, 1}, -1)});
    // q has the single vertex (1, 1) and recession rays (-1, 0), (0, -1).
    EXPECT_TRUE(contains(p, pt({1, 1})));
    for (const Point ray : {pt({-1, 0}), pt({0, -1})}) {
        Rational dir = 0;
        for (std::size_t i = 0; i < 2; ++i)
            dir += p.constraints().front().coeffs[i] * ray[i];
        EXPECT_LE(dir, 0);
    }
    EXPECT_TRUE(includes(p, q));
    EXPECT_FALSE(includes(q, p));
}

TEST(Includes, MutualInclusionMeansEqualSets) {
    Gen gen(3);
    int equal_pairs = 0;
    for (int i = 0; i < 300; ++i) {
        auto p = gen.polyhedron(2, 3, 3);
        // Mix in exact rewrites of p so that equal pairs actually occur.
        Polyhedron q = gen.coin(0.3) ? p : gen.polyhedron(2, 3, 3);
        if (gen.coin(0.3))
            q = intersect(q, Polyhedron(2, {le({0, 0}, -1)}));
        if (gen.coin(0.3) && !p.constraints().empty()) {
            auto c = p.constraints().front();
            c.constant -= 1; // weaker copy, redundant in p
            q = intersect(p, Polyhedron(2, {c}));
        }
        const bool both = includes(p, q) && includes(q, p);
        const std::vector<Polyhedron> a{p}, b{q};
        const auto diff = tropsmt::testing::grid_difference(a, b, 2, 4);
        if (both) {
            ++equal_pairs;
            EXPECT_FALSE(diff.has_value()) << to_string(p) << " vs " << to_string(q);
        }
        if (diff)
            EXPECT_FALSE(both);
    }
    EXPECT_GT(equal_pairs, 20);
}

TEST(Problem, CombinationCountAndValidation) {
    Problem p(1, {Bag{{Polyhedron(1), Polyhedron(1)}}, Bag{{Polyhedron(1), Polyhedron(1), Polyhedron(1)}}});
    EXPECT_EQ(p.combination_count(), 6.0);
    EXPECT_EQ(p.polyhedron_count(), 5u);
    EXPECT_EQ(p.variable_names, std::vector<std::string>{"x1"});
    p.bags.push_back(Bag{{Polyhedron(2)}});
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Complement, CoversExactlyTheOutside) {
    Gen gen(4);
    for (int i = 0; i < 500; ++i) {
        const auto c = canonicalize(gen.any_constraint(2, 4, true));
        const Point x = gen.point(2, 3);
        bool in_complement = false;
        for (const auto &side : complement(c))
            in_complement = in_complement || satisfies(side, x);
        EXPECT_NE(satisfies(c, x), in_complement);
    }
}
