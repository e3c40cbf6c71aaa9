// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace tropsmt {

Formula Formula::atom(const LinearConstraint &c) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atom;
    node->dimension = c.dimension();
    node->atom = canonicalize(c);
    return Formula(std::move(node));
}

Formula Formula::canonical_atom(const LinearConstraint &c) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atom;
    node->dimension = c.dimension();
    node->atom = c;
    return Formula(std::move(node));
}

Formula Formula::combine(Kind kind, std::vector<Formula> children, std::size_t dimension) {
    for (const auto &c : children)
        if (c.dimension() != dimension)
            throw std::invalid_argument("formula children disagree on dimension");
    if (children.empty())
        children.push_back(kind == Kind::And ? truth(dimension) : falsity(dimension));
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->dimension = dimension;
    node->children = std::move(children);
    return Formula(std::move(node));
}

Formula Formula::all_of(std::vector<Formula> children, std::size_t dimension) {
    return combine(Kind::And, std::move(children), dimension);
}

Formula Formula::any_of(std::vector<Formula> children, std::size_t dimension) {
    return combine(Kind::Or, std::move(children), dimension);
}

Formula Formula::negation(Formula child) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->dimension = child.dimension();
    node->children.push_back(std::move(child));
    return Formula(std::move(node));
}

bool Formula::evaluate(std::span<const Rational> x) const {
    switch (kind()) {
    case Kind::Atom:
        return satisfies(constraint(), x);
    case Kind::Not:
        return !children()[0].evaluate(x);
    case Kind::And:
        return std::all_of(children().begin(), children().end(), [&](const Formula &f) { return f.evaluate(x); });
    case Kind::Or:
        return std::any_of(children().begin(), children().end(), [&](const Formula &f) { return f.evaluate(x); });
    }
    return false;
}

std::size_t Formula::atom_count() const {
    if (kind() == Kind::Atom)
        return 1;
    std::size_t n = 0;
    for (const auto &c : children())
        n += c.atom_count();
    return n;
}

Formula encode_polyhedron(const Polyhedron &p) {
    std::vector<Formula> atoms;
    atoms.reserve(p.size());
    for (const auto &c : p.constraints())
        atoms.push_back(Formula::canonical_atom(c));
    return Formula::all_of(std::move(atoms), p.dimension());
}

Formula encode_bag(const Bag &bag, std::size_t dimension) {
    std::vector<Formula> members;
    members.reserve(bag.size());
    for (const auto &p : bag.polyhedra)
        members.push_back(encode_polyhedron(p));
    return Formula::any_of(std::move(members), dimension);
}

Formula encode_problem(const Problem &p) {
    std::vector<Formula> bags;
    bags.reserve(p.bags.size());
    for (const auto &b : p.bags)
        bags.push_back(encode_bag(b, p.dimension));
    return Formula::all_of(std::move(bags), p.dimension);
}

Formula negate_polyhedron(const Polyhedron &r) {
    std::vector<Formula> sides;
    for (const auto &c : r.constraints())
        for (const auto &side : complement(c))
            sides.push_back(Formula::atom(side));
    if (sides.size() == 1)
        return sides.front();
    return Formula::any_of(std::move(sides), r.dimension());
}

Formula encode_union(std::span<const Polyhedron> polyhedra, std::size_t dimension) {
    std::vector<Formula> members;
    members.reserve(polyhedra.size());
    for (const auto &p : polyhedra)
        members.push_back(encode_polyhedron(p));
    return Formula::any_of(std::move(members), dimension);
}

} // namespace tropsmt
