// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tropsmt/geometry.hpp"

namespace tropsmt {

/// Immutable Boolean combination of linear-constraint atoms. Copies share
/// the underlying node, so large formulas can be passed around by value.
/// Atoms are stored in canonical form.
class Formula {
public:
    enum class Kind { Atom, And, Or, Not };

    static Formula atom(const LinearConstraint &c);
    /// Skips canonicalization; `c` must already be canonical (as the
    /// constraints of a Polyhedron are).
    static Formula canonical_atom(const LinearConstraint &c);
    /// And over `children`; an empty list becomes And(true).
    static Formula all_of(std::vector<Formula> children, std::size_t dimension);
    /// Or over `children`; an empty list becomes Or(false).
    static Formula any_of(std::vector<Formula> children, std::size_t dimension);
    static Formula negation(Formula child);
    static Formula truth(std::size_t dimension) { return atom(make_true_constraint(dimension)); }
    static Formula falsity(std::size_t dimension) { return atom(make_false_constraint(dimension)); }

    Kind kind() const { return node_->kind; }
    std::size_t dimension() const { return node_->dimension; }
    /// Only valid for Atom nodes.
    const LinearConstraint &constraint() const { return node_->atom; }
    std::span<const Formula> children() const { return node_->children; }
    const void *identity() const { return node_.get(); }

    bool evaluate(std::span<const Rational> x) const;
    std::size_t atom_count() const;

private:
    struct Node {
        Kind kind;
        std::size_t dimension;
        LinearConstraint atom;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula combine(Kind kind, std::vector<Formula> children, std::size_t dimension);

    std::shared_ptr<const Node> node_;
};

/// And over the polyhedron's constraints (And(true) for the universe).
Formula encode_polyhedron(const Polyhedron &p);
/// Or over the bag's polyhedra (Or(false) for an empty bag).
Formula encode_bag(const Bag &bag, std::size_t dimension);
/// And over bags of Or over polyhedra of And over atoms; zero bags give And(true).
Formula encode_problem(const Problem &p);
/// Or over the complements of r's constraints; the universe negates to Or(false).
Formula negate_polyhedron(const Polyhedron &r);
/// Or over polyhedra, for comparing result unions.
Formula encode_union(std::span<const Polyhedron> polyhedra, std::size_t dimension);

} // namespace tropsmt
