// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropsmt/baseline.hpp"
#include "tropsmt/smt.hpp"

using namespace tropsmt;
using tropsmt::testing::Gen;
using tropsmt::testing::truth_table_sat;

namespace {

LinearConstraint mk(std::vector<Rational> a, Rational c, Relation r = Relation::Le) {
    return {std::move(a), std::move(c), r};
}
Formula atom(std::vector<Rational> a, Rational c, Relation r = Relation::Le) { return Formula::atom(mk(a, c, r)); }

std::optional<ExternalSolverConfig> external_config() {
    auto cmd = default_external_command();
    if (!cmd)
        return std::nullopt;
    ExternalSolverConfig cfg;
    cfg.command = *cmd;
    cfg.timeout = std::chrono::seconds(30);
    return cfg;
}

ExternalSolverConfig script(const std::string &body, int timeout_ms = 2000) {
    ExternalSolverConfig cfg;
    cfg.command = {"/bin/sh", "-c", body};
    cfg.timeout = std::chrono::milliseconds(timeout_ms);
    return cfg;
}

BackendError::Kind failure_kind(const ExternalSolverConfig &cfg) {
    try {
        auto s = make_external_session(1, {}, cfg);
        s->add_assertion(atom({1}, 0));
        s->check();
    } catch (const BackendError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no BackendError raised";
    return BackendError::Kind::Unknown;
}

} // namespace

TEST(Session, BoundsPinTheModel) {
    auto s = make_internal_session(1);
    s->add_assertion(atom({1}, 0));
    s->add_assertion(atom({-1}, 0));
    EXPECT_EQ(*s->check(), (Point{0}));
}

TEST(Session, DisjunctionThenBound) {
    auto s = make_internal_session(1);
    s->add_assertion(Formula::any_of({atom({1}, 1), atom({-1}, 1)}, 1));
    s->add_assertion(atom({1}, 0));
    const auto x = s->check();
    ASSERT_TRUE(x);
    EXPECT_LE((*x)[0], -1);
}

TEST(Session, NegatedQuadrant) {
    auto s = make_internal_session(2);
    s->add_assertion(Formula::negation(Formula::all_of({atom({1, 0}, 0), atom({0, 1}, 0)}, 2)));
    const auto x = s->check();
    ASSERT_TRUE(x);
    EXPECT_TRUE((*x)[0] > 0 || (*x)[1] > 0);
}

TEST(Session, EmptyAndContradictory) {
    auto s = make_internal_session(1);
    EXPECT_TRUE(s->check());
    s->add_assertion(atom({1}, 0, Relation::Lt));
    s->add_assertion(atom({-1}, 0, Relation::Lt));
    EXPECT_FALSE(s->check());
    EXPECT_THROW(s->add_assertion(atom({1, 1}, 0)), std::invalid_argument);
}

TEST(Session, EqualityAtomAndItsNegation) {
    auto s = make_internal_session(2);
    s->add_assertion(atom({1, -1}, 0, Relation::Eq));
    s->add_assertion(Formula::negation(atom({1, 0}, 0, Relation::Eq)));
    const auto x = s->check();
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], (*x)[1]);
    EXPECT_NE((*x)[0], 0);
    s->add_assertion(atom({1, 0}, -1, Relation::Le));
    s->add_assertion(atom({-1, 0}, 1, Relation::Le));
    EXPECT_EQ(*s->check(), (Point{1, 1}));
}

TEST(Encode, ProblemStructure) {
    const Polyhedron p(1, {mk({1}, 0)});
    const Formula one = encode_problem(Problem(1, {Bag{{p}}}));
    EXPECT_EQ(one.atom_count(), 1u);
    EXPECT_TRUE(one.evaluate(Point{-1}));
    EXPECT_FALSE(one.evaluate(Point{1}));

    auto s = make_internal_session(1);
    s->add_assertion(encode_problem(Problem(1, {Bag{}})));
    EXPECT_FALSE(s->check());

    auto t = make_internal_session(1);
    t->add_assertion(encode_problem(Problem(1)));
    EXPECT_TRUE(t->check());
}

TEST(Encode, TwoBagsOfSlabsMatchBaseline) {
    const Problem p(2, {Bag{{Polyhedron(2, {mk({1, 0}, 0)}), Polyhedron(2, {mk({-1, 0}, 0)})}},
                        Bag{{Polyhedron(2, {mk({0, 1}, 0)}), Polyhedron(2, {mk({0, -1}, 0)})}}});
    const auto base = naive_intersection(p, false);
    ASSERT_EQ(base.polyhedra.size(), 4u);
    // Each quadrant is reachable: the formula plus the quadrant is satisfiable.
    for (const auto &q : base.polyhedra) {
        auto s = make_internal_session(2);
        s->add_assertion(encode_problem(p));
        s->add_assertion(encode_polyhedron(q));
        const auto x = s->check();
        ASSERT_TRUE(x);
        EXPECT_TRUE(contains(q, *x));
    }
}

TEST(Negate, Examples) {
    const Formula a = negate_polyhedron(Polyhedron(1, {mk({1}, 0)}));
    ASSERT_EQ(a.kind(), Formula::Kind::Atom);
    EXPECT_EQ(a.constraint(), mk({-1}, 0, Relation::Lt));

    const Formula b = negate_polyhedron(Polyhedron(1, {mk({1}, 0, Relation::Eq)}));
    ASSERT_EQ(b.kind(), Formula::Kind::Or);
    ASSERT_EQ(b.children().size(), 2u);
    std::vector<LinearConstraint> sides{b.children()[0].constraint(), b.children()[1].constraint()};
    std::sort(sides.begin(), sides.end());
    std::vector<LinearConstraint> want{mk({1}, 0, Relation::Lt), mk({-1}, 0, Relation::Lt)};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(sides, want);

    const Polyhedron quad(2, {mk({1, 0}, 0), mk({0, 1}, 0)});
    const Formula c = negate_polyhedron(quad);
    EXPECT_EQ(c.kind(), Formula::Kind::Or);
    EXPECT_EQ(c.children().size(), 2u);
    auto s = make_internal_session(2);
    s->add_assertion(encode_polyhedron(quad));
    s->add_assertion(c);
    EXPECT_FALSE(s->check());
}

TEST(Export, Rendering) {
    auto s = make_internal_session(1);
    s->add_assertion(atom({1}, 0));
    const std::string text = export_smtlib2(*s);
    EXPECT_NE(text.find("(set-logic QF_LRA)"), std::string::npos);
    EXPECT_NE(text.find("(declare-const x1 Real)"), std::string::npos);
    EXPECT_NE(text.find("(assert (<= x1 0))"), std::string::npos);
    EXPECT_NE(text.find("(check-sat)\n(get-model)"), std::string::npos);
    EXPECT_EQ(smtlib_numeral(Rational(1, 3)), "(/ 1 3)");
    EXPECT_EQ(smtlib_numeral(Rational(-1, 3)), "(- (/ 1 3))");
    EXPECT_EQ(smtlib_numeral(Rational(-4)), "(- 4)");
    EXPECT_EQ(smtlib_symbol("x1"), "x1");
    EXPECT_EQ(smtlib_symbol("a b"), "|a b|");
    EXPECT_EQ(export_smtlib2(*s), text);
}

TEST(Export, ModelParsing) {
    const std::vector<std::string> names{"x1", "x2"};
    const Point x = parse_smtlib_model(
        "((define-fun x1 () Real (/ 1.0 6.0))\n (define-fun x2 () Real (- 2.5)))", names);
    EXPECT_EQ(x, (Point{Rational(1, 6), Rational(-5, 2)}));
    EXPECT_EQ(parse_smtlib_model("(model (define-fun x2 () Real 3))", names), (Point{0, 3}));
    EXPECT_THROW(parse_smtlib_model("((define-fun x1 () Real (root-obj (+ (^ x 2) (- 2)) 1)))", names),
                 BackendError);
    EXPECT_THROW(parse_smtlib_model("(error \"boom\")", names), BackendError);
    EXPECT_THROW(parse_smtlib_model("((define-fun x1 () Real", names), BackendError);
}

TEST(Dpll, AgreesWithTruthTable) {
    Gen gen(30);
    int sat = 0;
    for (int i = 0; i < 400; ++i) {
        const std::size_t d = gen.integer(1, 3);
        std::vector<LinearConstraint> pool;
        const int n_atoms = gen.integer(1, 12);
        for (int k = 0; k < n_atoms; ++k)
            pool.push_back(gen.any_constraint(d, 3, true));
        const Formula f = gen.formula(pool, d, 4);
        ASSERT_LE(tropsmt::testing::atoms_of(f).size(), 12u);
        const bool expected = truth_table_sat(f);
        auto s = make_internal_session(d);
        s->add_assertion(f);
        const auto x = s->check();
        ASSERT_EQ(x.has_value(), expected) << "formula " << i;
        if (x) {
            ++sat;
            EXPECT_TRUE(f.evaluate(*x));
        }
    }
    EXPECT_GT(sat, 40);
    EXPECT_LT(sat, 360);
}

TEST(Dpll, MonotoneUnderAddedAssertions) {
    Gen gen(31);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = gen.integer(1, 3);
        std::vector<LinearConstraint> pool;
        for (int k = 0; k < 8; ++k)
            pool.push_back(gen.any_constraint(d, 3, true));
        auto s = make_internal_session(d);
        bool unsat = false;
        for (int step = 0; step < 6; ++step) {
            s->add_assertion(gen.formula(pool, d, 2));
            const bool now_sat = s->check().has_value();
            if (unsat)
                EXPECT_FALSE(now_sat);
            unsat = unsat || !now_sat;
        }
    }
}

TEST(External, AgreesWithInternal) {
    const auto cfg = external_config();
    if (!cfg)
        GTEST_SKIP() << "no external SMT solver on PATH";
    Gen gen(32);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = gen.integer(1, 4);
        std::vector<LinearConstraint> pool;
        const int n_atoms = gen.integer(1, 30);
        for (int k = 0; k < n_atoms; ++k)
            pool.push_back(gen.any_constraint(d, 5, true));
        auto in = make_internal_session(d);
        auto ex = make_external_session(d, {}, *cfg);
        for (int a = gen.integer(1, 3); a > 0; --a) {
            const Formula f = gen.formula(pool, d, 3);
            in->add_assertion(f);
            ex->add_assertion(f);
        }
        // Both sessions verify their models against the assertions internally.
        ASSERT_EQ(in->check().has_value(), ex->check().has_value()) << "session " << i;
    }
}

TEST(External, IncrementalSession) {
    const auto cfg = external_config();
    if (!cfg)
        GTEST_SKIP() << "no external SMT solver on PATH";
    auto ex = make_external_session(2, {"a", "weird name"}, *cfg);
    ex->add_assertion(atom({1, 1}, Rational(-1, 3), Relation::Eq));
    const auto x = ex->check();
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0] + (*x)[1], Rational(1, 3));
    ex->add_assertion(negate_polyhedron(Polyhedron(2, {mk({1, 1}, Rational(-1, 3), Relation::Eq)})));
    EXPECT_FALSE(ex->check());
}

TEST(External, ErrorKinds) {
    EXPECT_THROW(make_external_session(1, {}, script("exit 0", 500))->check(), BackendError);
    EXPECT_EQ(failure_kind(ExternalSolverConfig{{"/nonexistent/solver"}, std::chrono::seconds(1)}),
              BackendError::Kind::ProcessFailure);
    EXPECT_EQ(failure_kind(script("cat > /dev/null", 300)), BackendError::Kind::Timeout);
    EXPECT_EQ(failure_kind(script("while read l; do case \"$l\" in *check-sat*) echo unknown;; esac; done")),
              BackendError::Kind::Unknown);
    EXPECT_EQ(failure_kind(script("while read l; do case \"$l\" in *check-sat*) echo banana;; esac; done")),
              BackendError::Kind::Protocol);
    // A solver whose model violates the assertions is caught by verification.
    EXPECT_EQ(failure_kind(script("while read l; do case \"$l\" in *check-sat*) echo sat;; "
                                  "*get-model*) echo '((define-fun x1 () Real 5))';; esac; done")),
              BackendError::Kind::Protocol);
}

TEST(External, SplitCommand) {
    EXPECT_EQ(split_command("z3 -in"), (std::vector<std::string>{"z3", "-in"}));
    EXPECT_EQ(split_command("  cvc5   --lang=smt2 "), (std::vector<std::string>{"cvc5", "--lang=smt2"}));
    EXPECT_EQ(split_command("sh -c 'a b'"), (std::vector<std::string>{"sh", "-c", "a b"}));
}
