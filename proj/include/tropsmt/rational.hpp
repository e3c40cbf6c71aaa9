// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <gmpxx.h>
#include <string>
#include <string_view>
#include <vector>

namespace tropsmt {

/// Exact rational number. GMP keeps mpq_class values reduced with a positive
/// denominator as long as they are produced by arithmetic or parse_rational().
using Rational = mpq_class;
using Integer = mpz_class;
using Point = std::vector<Rational>;

/// Parses "p", "-p", "p/q" or a finite decimal "1.25". Throws
/// std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational &value);

std::strong_ordering compare(const Rational &a, const Rational &b);

/// Value a + b*delta for a positive infinitesimal delta.
struct DeltaRational {
    Rational real;
    Rational delta;

    DeltaRational() = default;
    DeltaRational(Rational r, Rational d = 0) : real(std::move(r)), delta(std::move(d)) {}

    DeltaRational &operator+=(const DeltaRational &o) {
        real += o.real;
        delta += o.delta;
        return *this;
    }
    DeltaRational &operator-=(const DeltaRational &o) {
        real -= o.real;
        delta -= o.delta;
        return *this;
    }
    friend DeltaRational operator+(DeltaRational a, const DeltaRational &b) { return a += b; }
    friend DeltaRational operator-(DeltaRational a, const DeltaRational &b) { return a -= b; }
    friend DeltaRational operator*(const Rational &k, const DeltaRational &v) {
        return {Rational(k * v.real), Rational(k * v.delta)};
    }
    friend bool operator==(const DeltaRational &a, const DeltaRational &b) {
        return a.real == b.real && a.delta == b.delta;
    }
    friend std::strong_ordering operator<=>(const DeltaRational &a, const DeltaRational &b) {
        if (auto c = compare(a.real, b.real); c != 0)
            return c;
        return compare(a.delta, b.delta);
    }
};

std::string to_string(const DeltaRational &value);

} // namespace tropsmt
