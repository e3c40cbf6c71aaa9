// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "tropsmt/rational.hpp"

using namespace tropsmt;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
    EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("+4"), Rational(4));
}

TEST(Rational, RejectsMalformedText) {
    for (const char *bad : {"", "1/0", "abc", "1//2", "1.", ".5e3", "1/2/3", "0x10"})
        EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, AlwaysReduced) {
    const Rational r = parse_rational("12/-8");
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(to_string(r), "-3/2");
    EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Rational, ToStringRoundTrips) {
    for (int p = -20; p <= 20; ++p)
        for (int q = 1; q <= 7; ++q) {
            Rational r(p, q);
            r.canonicalize();
            EXPECT_EQ(parse_rational(to_string(r)), r);
        }
}

TEST(DeltaRational, LexicographicOrder) {
    const DeltaRational a{0, -1};
    const DeltaRational b{0, 0};
    const DeltaRational c{Rational(1, 1000000), -100};
    EXPECT_LT(a, b);
    EXPECT_LT(b, c);
    EXPECT_EQ(DeltaRational(1, 2) + DeltaRational(3, -2), DeltaRational(4, 0));
    EXPECT_EQ(Rational(2) * DeltaRational(1, -1), DeltaRational(2, -2));
    EXPECT_EQ(to_string(DeltaRational(1, -1)), "1 - 1d");
}
