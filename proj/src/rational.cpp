// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropsmt {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    Integer value(std::string(s), 10);
    return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        Integer den = parse_integer(text.substr(slash + 1), text);
        if (den == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
            int_part.remove_prefix(1);
        if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac_part))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
        Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part), 10);
        Integer frac(std::string(frac_part), 10);
        Rational r(Integer(whole * scale + frac), scale);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text, text));
}

std::string to_string(const Rational &value) {
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::strong_ordering compare(const Rational &a, const Rational &b) {
    int c = cmp(a, b);
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const DeltaRational &value) {
    if (value.delta == 0)
        return to_string(value.real);
    return to_string(value.real) + (value.delta < 0 ? " - " : " + ") + to_string(Rational(abs(value.delta))) +
           "d";
}

} // namespace tropsmt
