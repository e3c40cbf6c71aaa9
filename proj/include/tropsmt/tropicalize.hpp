// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tropsmt/geometry.hpp"

namespace tropsmt {

struct Term {
    Rational coeff;             ///< nonzero; the sign selects the positive or negative side
    std::vector<unsigned> exps; ///< one exponent per variable
};

using Equation = std::vector<Term>;

struct PolynomialSystem {
    std::size_t dimension = 0;
    std::vector<std::string> variable_names;
    std::vector<Equation> equations;

    /// Throws std::invalid_argument on zero coefficients, wrong exponent
    /// lengths, empty equations or repeated monomials within an equation.
    void validate() const;
};

enum class Rounding { Integer, Rational };
enum class TropicalMode { Equilibrium, Prevariety };

struct TropicalizationConfig {
    Rational epsilon{1, 11};
    Rounding rounding = Rounding::Integer;
    TropicalMode mode = TropicalMode::Equilibrium;

    void validate() const;
};

/// log(k)/log(epsilon), rounded half away from zero to an integer
/// (Integer) or to a multiple of 1/1000 (Rational). Exact: the rounding
/// boundaries are decided by comparing powers of k and epsilon.
Rational log_eps(const Rational &k, const TropicalizationConfig &cfg);

/// One polyhedron per ordered pair of distinct terms (alpha positive, beta
/// negative) where both sides attain the minimum. In equilibrium mode an
/// equation without terms of both signs yields an empty bag.
Bag tropicalize_equation(const Equation &eq, std::size_t dimension, const TropicalizationConfig &cfg);

struct TropicalizationResult {
    Problem problem;
    std::vector<std::size_t> rootless_equations; ///< equations that produced an empty bag
};

TropicalizationResult tropicalize_system(const PolynomialSystem &sys, const TropicalizationConfig &cfg);

} // namespace tropsmt
