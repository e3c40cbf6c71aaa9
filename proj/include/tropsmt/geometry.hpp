// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tropsmt/rational.hpp"

namespace tropsmt {

/// Relation of an affine form `constant + coeffs . x` against zero.
/// Lt only arises from complementing closed constraints.
enum class Relation { Le, Lt, Eq };

const char *to_string(Relation rel);

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational constant;
    Relation relation = Relation::Le;

    std::size_t dimension() const { return coeffs.size(); }
    bool has_zero_form() const;

    friend bool operator==(const LinearConstraint &, const LinearConstraint &) = default;
    friend std::strong_ordering operator<=>(const LinearConstraint &a, const LinearConstraint &b);
};

/// Canonical representative: integer coefficients with gcd 1 (scaled by a
/// positive factor for Le/Lt, sign-normalized for Eq so that the first nonzero
/// entry of (coeffs, constant) is positive). Constraints with a zero form
/// collapse to `0 <= 0` (true) or `1 <= 0` (false).
LinearConstraint canonicalize(const LinearConstraint &c);

LinearConstraint make_true_constraint(std::size_t dimension);
LinearConstraint make_false_constraint(std::size_t dimension);
bool is_trivially_true(const LinearConstraint &c);
bool is_trivially_false(const LinearConstraint &c);

/// constant + coeffs . x, exact.
Rational evaluate(const LinearConstraint &c, std::span<const Rational> x);
bool satisfies(const LinearConstraint &c, std::span<const Rational> x);

/// Disjunction of constraints equivalent to the complement of `c`. Eq yields
/// the two strict sides; Le and Lt yield one constraint.
std::vector<LinearConstraint> complement(const LinearConstraint &c);

/// Conjunction of canonical constraints over Q^d, kept sorted and unique so
/// that equal constraint sets compare equal. Trivially-true rows are dropped.
class Polyhedron {
public:
    explicit Polyhedron(std::size_t dimension = 0) : dimension_(dimension) {}
    Polyhedron(std::size_t dimension, std::vector<LinearConstraint> constraints);

    static Polyhedron universe(std::size_t dimension) { return Polyhedron(dimension); }

    std::size_t dimension() const { return dimension_; }
    const std::vector<LinearConstraint> &constraints() const { return constraints_; }
    std::size_t size() const { return constraints_.size(); }
    bool is_universe() const { return constraints_.empty(); }

    void add(const LinearConstraint &c);

    friend bool operator==(const Polyhedron &, const Polyhedron &) = default;

private:
    std::size_t dimension_;
    std::vector<LinearConstraint> constraints_;
};

struct Bag {
    std::vector<Polyhedron> polyhedra;

    std::size_t size() const { return polyhedra.size(); }
    bool empty() const { return polyhedra.empty(); }
    friend bool operator==(const Bag &, const Bag &) = default;
};

struct Problem {
    std::size_t dimension = 0;
    std::vector<std::string> variable_names;
    std::vector<Bag> bags;

    Problem() = default;
    /// Default names x1..xd.
    explicit Problem(std::size_t dim, std::vector<Bag> bags_ = {});
    Problem(std::size_t dim, std::vector<std::string> names, std::vector<Bag> bags_);

    /// Throws std::invalid_argument when a bag or polyhedron disagrees with `dimension`.
    void validate() const;
    /// Product of bag sizes, saturating at the largest representable value.
    double combination_count() const;
    std::size_t polyhedron_count() const;

    friend bool operator==(const Problem &, const Problem &) = default;
};

std::vector<std::string> default_variable_names(std::size_t dimension);

bool contains(const Polyhedron &p, std::span<const Rational> x);
Polyhedron intersect(const Polyhedron &p, const Polyhedron &q);
bool is_empty(const Polyhedron &p);
/// True iff q is a subset of p: every (q and not c) for c in p is infeasible.
bool includes(const Polyhedron &p, const Polyhedron &q);

std::string to_string(const LinearConstraint &c, std::span<const std::string> names = {});
std::string to_string(const Polyhedron &p, std::span<const std::string> names = {});

} // namespace tropsmt
