// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/geometry.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tropsmt/lra.hpp"

namespace tropsmt {

const char *to_string(Relation rel) {
    switch (rel) {
    case Relation::Le:
        return "<=";
    case Relation::Lt:
        return "<";
    case Relation::Eq:
        return "=";
    }
    return "?";
}

bool LinearConstraint::has_zero_form() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational &v) { return sgn(v) == 0; });
}

std::strong_ordering operator<=>(const LinearConstraint &a, const LinearConstraint &b) {
    if (auto c = a.coeffs.size() <=> b.coeffs.size(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (auto c = compare(a.coeffs[i], b.coeffs[i]); c != 0)
            return c;
    if (auto c = compare(a.constant, b.constant); c != 0)
        return c;
    return static_cast<int>(a.relation) <=> static_cast<int>(b.relation);
}

LinearConstraint make_true_constraint(std::size_t dimension) {
    return {std::vector<Rational>(dimension), Rational(0), Relation::Le};
}

LinearConstraint make_false_constraint(std::size_t dimension) {
    return {std::vector<Rational>(dimension), Rational(1), Relation::Le};
}

bool is_trivially_true(const LinearConstraint &c) {
    return c.has_zero_form() && c.relation == Relation::Le && c.constant == 0;
}

bool is_trivially_false(const LinearConstraint &c) {
    return c.has_zero_form() && c.relation == Relation::Le && c.constant == 1;
}

namespace {

// Integral entries with gcd 1 and, for equations, a positive leading entry.
bool is_canonical_nonzero(const LinearConstraint &c) {
    auto integral = [](const Rational &v) { return mpz_cmp_ui(v.get_den_mpz_t(), 1) == 0; };
    if (!integral(c.constant) || !std::all_of(c.coeffs.begin(), c.coeffs.end(), integral))
        return false;
    if (c.relation == Relation::Eq) {
        auto lead = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational &v) { return sgn(v) != 0; });
        if (sgn(*lead) < 0)
            return false;
    }
    Integer g = 0;
    for (const auto &v : c.coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        if (mpz_cmp_ui(g.get_mpz_t(), 1) == 0)
            return true;
    }
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.constant.get_num_mpz_t());
    return mpz_cmp_ui(g.get_mpz_t(), 1) == 0;
}

} // namespace

LinearConstraint canonicalize(const LinearConstraint &c) {
    if (c.has_zero_form()) {
        const int s = sgn(c.constant);
        const bool holds = c.relation == Relation::Le ? s <= 0 : c.relation == Relation::Lt ? s < 0 : s == 0;
        return holds ? make_true_constraint(c.dimension()) : make_false_constraint(c.dimension());
    }

    if (is_canonical_nonzero(c))
        return c;

    Integer den_lcm = 1;
    for (const auto &v : c.coeffs)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.constant.get_den_mpz_t());

    std::vector<Integer> ints;
    ints.reserve(c.coeffs.size() + 1);
    for (const auto &v : c.coeffs)
        ints.emplace_back(v.get_num() * (den_lcm / v.get_den()));
    ints.emplace_back(c.constant.get_num() * (den_lcm / c.constant.get_den()));

    Integer g = 0;
    for (const auto &v : ints)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());

    if (c.relation == Relation::Eq) {
        auto lead = std::find_if(ints.begin(), ints.end(), [](const Integer &v) { return sgn(v) != 0; });
        if (sgn(*lead) < 0)
            g = -g;
    }

    LinearConstraint out;
    out.relation = c.relation;
    out.coeffs.reserve(c.coeffs.size());
    for (std::size_t i = 0; i + 1 < ints.size(); ++i)
        out.coeffs.emplace_back(Integer(ints[i] / g));
    out.constant = Rational(Integer(ints.back() / g));
    return out;
}

Rational evaluate(const LinearConstraint &c, std::span<const Rational> x) {
    if (x.size() != c.dimension())
        throw std::invalid_argument("point dimension does not match constraint");
    Rational sum = c.constant;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(c.coeffs[i]) != 0)
            sum += c.coeffs[i] * x[i];
    return sum;
}

bool satisfies(const LinearConstraint &c, std::span<const Rational> x) {
    const int s = sgn(evaluate(c, x));
    switch (c.relation) {
    case Relation::Le:
        return s <= 0;
    case Relation::Lt:
        return s < 0;
    case Relation::Eq:
        return s == 0;
    }
    return false;
}

std::vector<LinearConstraint> complement(const LinearConstraint &c) {
    LinearConstraint neg;
    neg.coeffs.reserve(c.coeffs.size());
    for (const auto &v : c.coeffs)
        neg.coeffs.emplace_back(-v);
    neg.constant = -c.constant;
    switch (c.relation) {
    case Relation::Le: // not (f <= 0)  <=>  -f < 0
        neg.relation = Relation::Lt;
        return {canonicalize(neg)};
    case Relation::Lt: // not (f < 0)  <=>  -f <= 0
        neg.relation = Relation::Le;
        return {canonicalize(neg)};
    case Relation::Eq: {
        LinearConstraint below = c;
        below.relation = Relation::Lt;
        neg.relation = Relation::Lt;
        return {canonicalize(below), canonicalize(neg)};
    }
    }
    return {};
}

Polyhedron::Polyhedron(std::size_t dimension, std::vector<LinearConstraint> constraints) : dimension_(dimension) {
    constraints_.reserve(constraints.size());
    for (auto &c : constraints) {
        if (c.dimension() != dimension_)
            throw std::invalid_argument("constraint dimension does not match polyhedron");
        auto canon = canonicalize(c);
        if (!is_trivially_true(canon))
            constraints_.push_back(std::move(canon));
    }
    std::sort(constraints_.begin(), constraints_.end());
    constraints_.erase(std::unique(constraints_.begin(), constraints_.end()), constraints_.end());
}

void Polyhedron::add(const LinearConstraint &c) {
    if (c.dimension() != dimension_)
        throw std::invalid_argument("constraint dimension does not match polyhedron");
    auto canon = canonicalize(c);
    if (is_trivially_true(canon))
        return;
    auto it = std::lower_bound(constraints_.begin(), constraints_.end(), canon);
    if (it == constraints_.end() || *it != canon)
        constraints_.insert(it, std::move(canon));
}

std::vector<std::string> default_variable_names(std::size_t dimension) {
    std::vector<std::string> names;
    names.reserve(dimension);
    for (std::size_t i = 0; i < dimension; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return names;
}

Problem::Problem(std::size_t dim, std::vector<Bag> bags_)
    : dimension(dim), variable_names(default_variable_names(dim)), bags(std::move(bags_)) {}

Problem::Problem(std::size_t dim, std::vector<std::string> names, std::vector<Bag> bags_)
    : dimension(dim), variable_names(std::move(names)), bags(std::move(bags_)) {}

void Problem::validate() const {
    if (variable_names.size() != dimension)
        throw std::invalid_argument("variable name count does not match dimension");
    for (std::size_t b = 0; b < bags.size(); ++b)
        for (const auto &p : bags[b].polyhedra)
            if (p.dimension() != dimension)
                throw std::invalid_argument("bag " + std::to_string(b) + " has a polyhedron of dimension " +
                                            std::to_string(p.dimension()) + ", expected " +
                                            std::to_string(dimension));
}

double Problem::combination_count() const {
    double product = 1;
    for (const auto &b : bags)
        product *= static_cast<double>(b.size());
    return product;
}

std::size_t Problem::polyhedron_count() const {
    std::size_t n = 0;
    for (const auto &b : bags)
        n += b.size();
    return n;
}

bool contains(const Polyhedron &p, std::span<const Rational> x) {
    if (x.size() != p.dimension())
        throw std::invalid_argument("point dimension does not match polyhedron");
    return std::all_of(p.constraints().begin(), p.constraints().end(),
                       [&](const LinearConstraint &c) { return satisfies(c, x); });
}

Polyhedron intersect(const Polyhedron &p, const Polyhedron &q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("cannot intersect polyhedra of different dimension");
    std::vector<LinearConstraint> merged;
    merged.reserve(p.size() + q.size());
    std::set_union(p.constraints().begin(), p.constraints().end(), q.constraints().begin(), q.constraints().end(),
                   std::back_inserter(merged));
    Polyhedron out(p.dimension());
    for (auto &c : merged)
        out.add(c);
    return out;
}

bool is_empty(const Polyhedron &p) {
    return !lra::check_conjunction(p.constraints(), p.dimension()).has_value();
}

bool includes(const Polyhedron &p, const Polyhedron &q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("cannot compare polyhedra of different dimension");
    std::vector<LinearConstraint> probe = q.constraints();
    probe.emplace_back();
    for (const auto &c : p.constraints()) {
        if (std::binary_search(q.constraints().begin(), q.constraints().end(), c))
            continue;
        for (const auto &side : complement(c)) {
            probe.back() = side;
            if (lra::check_conjunction(probe, p.dimension()))
                return false;
        }
    }
    return true;
}

std::string to_string(const LinearConstraint &c, std::span<const std::string> names) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        const Rational &a = c.coeffs[i];
        if (sgn(a) == 0)
            continue;
        const std::string name = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (!first)
            out << (sgn(a) < 0 ? " - " : " + ");
        else if (sgn(a) < 0)
            out << "-";
        const Rational mag = abs(a);
        if (mag != 1)
            out << to_string(mag) << "*";
        out << name;
        first = false;
    }
    if (first)
        out << to_string(c.constant);
    else if (sgn(c.constant) != 0)
        out << (sgn(c.constant) < 0 ? " - " : " + ") << to_string(Rational(abs(c.constant)));
    out << " " << to_string(c.relation) << " 0";
    return out.str();
}

std::string to_string(const Polyhedron &p, std::span<const std::string> names) {
    if (p.is_universe())
        return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(p.constraints()[i], names);
    }
    return out + "}";
}

} // namespace tropsmt
