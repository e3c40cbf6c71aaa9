// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/tropicalize.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tropsmt {

namespace {

Rational power(const Rational &base, long exponent) {
    Rational b = exponent < 0 ? Rational(1 / base) : base;
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), e);
    return out; // already reduced: powers of coprime integers stay coprime
}

double approx_log(const Rational &q) {
    long num_exp = 0;
    long den_exp = 0;
    const double num = mpz_get_d_2exp(&num_exp, q.get_num_mpz_t());
    const double den = mpz_get_d_2exp(&den_exp, q.get_den_mpz_t());
    return std::log(num) - std::log(den) + static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

// Both canonical: equal affine forms up to sign.
bool on_hyperplane(const LinearConstraint &le, const LinearConstraint &eq) {
    if (le.constant == eq.constant && le.coeffs == eq.coeffs)
        return true;
    if (le.constant != -eq.constant)
        return false;
    for (std::size_t i = 0; i < le.coeffs.size(); ++i)
        if (le.coeffs[i] != -eq.coeffs[i])
            return false;
    return true;
}

} // namespace

void TropicalizationConfig::validate() const {
    if (epsilon <= 0 || epsilon >= 1)
        throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
}

void PolynomialSystem::validate() const {
    if (!variable_names.empty() && variable_names.size() != dimension)
        throw std::invalid_argument("variable name count does not match dimension");
    for (std::size_t e = 0; e < equations.size(); ++e) {
        const auto &eq = equations[e];
        if (eq.empty())
            throw std::invalid_argument("equation " + std::to_string(e) + " has no terms");
        std::set<std::vector<unsigned>> seen;
        for (const auto &t : eq) {
            if (t.coeff == 0)
                throw std::invalid_argument("equation " + std::to_string(e) + " has a zero coefficient");
            if (t.exps.size() != dimension)
                throw std::invalid_argument("equation " + std::to_string(e) + " has a term of wrong dimension");
            if (!seen.insert(t.exps).second)
                throw std::invalid_argument("equation " + std::to_string(e) +
                                            " repeats a monomial; combine like terms first");
        }
    }
}

Rational log_eps(const Rational &k, const TropicalizationConfig &cfg) {
    cfg.validate();
    if (k <= 0)
        throw std::invalid_argument("log_eps needs a positive argument");
    const long scale = cfg.rounding == Rounding::Integer ? 1 : 1000;
    if (k == 1)
        return 0;

    // sign(scale*t - m/2) == sign(epsilon^m - k^(2*scale)) with t = log_eps(k).
    const Rational k_pow = power(k, 2 * scale);
    auto side = [&](long m) { return cmp(power(cfg.epsilon, m), k_pow); };
    auto upper_ok = [&](long n) {
        const long m = 2 * n + 1;
        const int s = side(m);
        return s < 0 || (s == 0 && m < 0);
    };
    auto lower_ok = [&](long n) {
        const long m = 2 * n - 1;
        const int s = side(m);
        return s > 0 || (s == 0 && m > 0);
    };

    long n = std::lround(static_cast<double>(scale) * approx_log(k) / approx_log(cfg.epsilon));
    while (!upper_ok(n))
        ++n;
    while (!lower_ok(n))
        --n;
    Rational out(n, scale);
    out.canonicalize();
    return out;
}

Bag tropicalize_equation(const Equation &eq, std::size_t dimension, const TropicalizationConfig &cfg) {
    std::vector<Rational> offsets;
    offsets.reserve(eq.size());
    for (const auto &t : eq) {
        if (t.exps.size() != dimension)
            throw std::invalid_argument("term dimension does not match system");
        offsets.push_back(log_eps(abs(t.coeff), cfg));
    }

    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
    for (std::size_t i = 0; i < eq.size(); ++i) {
        if (cfg.mode == TropicalMode::Prevariety || sgn(eq[i].coeff) > 0)
            positive.push_back(i);
        if (cfg.mode == TropicalMode::Prevariety || sgn(eq[i].coeff) < 0)
            negative.push_back(i);
    }

    // offset_a + (exps_a - exps_b) . x  REL  offset_b
    auto difference = [&](std::size_t a, std::size_t b, Relation rel) {
        LinearConstraint c;
        c.relation = rel;
        c.coeffs.reserve(dimension);
        for (std::size_t i = 0; i < dimension; ++i)
            c.coeffs.emplace_back(static_cast<long>(eq[a].exps[i]) - static_cast<long>(eq[b].exps[i]));
        c.constant = offsets[a] - offsets[b];
        return c;
    };

    Bag bag;
    for (std::size_t a : positive) {
        for (std::size_t b : negative) {
            if (a == b)
                continue;
            Polyhedron p(dimension);
            const LinearConstraint tie = canonicalize(difference(a, b, Relation::Eq));
            p.add(tie);
            for (std::size_t eta = 0; eta < eq.size(); ++eta) {
                // Inequalities on the tie's own hyperplane are implied by it.
                const LinearConstraint c = canonicalize(difference(a, eta, Relation::Le));
                if (!on_hyperplane(c, tie))
                    p.add(c);
            }
            if (std::find(bag.polyhedra.begin(), bag.polyhedra.end(), p) == bag.polyhedra.end())
                bag.polyhedra.push_back(std::move(p));
        }
    }
    return bag;
}

TropicalizationResult tropicalize_system(const PolynomialSystem &sys, const TropicalizationConfig &cfg) {
    sys.validate();
    cfg.validate();
    TropicalizationResult out;
    out.problem.dimension = sys.dimension;
    out.problem.variable_names =
        sys.variable_names.empty() ? default_variable_names(sys.dimension) : sys.variable_names;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        out.problem.bags.push_back(tropicalize_equation(sys.equations[e], sys.dimension, cfg));
        if (out.problem.bags.back().empty())
            out.rootless_equations.push_back(e);
    }
    return out;
}

} // namespace tropsmt
