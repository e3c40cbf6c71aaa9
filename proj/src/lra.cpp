// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/lra.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropsmt::lra {

TheoryState::TheoryState(std::size_t dimension)
    : dimension_(dimension), values_(dimension), lower_(dimension), upper_(dimension), row_of_(dimension, -1) {}

int TheoryState::add_slack(const std::vector<Rational> &form) {
    const int var = static_cast<int>(values_.size());
    for (auto &row : rows_)
        row.emplace_back(0);

    std::vector<Rational> row(values_.size() + 1);
    DeltaRational value;
    for (std::size_t i = 0; i < form.size(); ++i) {
        if (sgn(form[i]) == 0)
            continue;
        value += form[i] * values_[i];
        if (row_of_[i] < 0) {
            row[i] += form[i];
            continue;
        }
        const auto &basic_row = rows_[row_of_[i]];
        for (std::size_t j = 0; j < basic_row.size(); ++j)
            if (sgn(basic_row[j]) != 0)
                row[j] += form[i] * basic_row[j];
    }

    values_.push_back(value);
    lower_.emplace_back();
    upper_.emplace_back();
    row_of_.push_back(static_cast<int>(rows_.size()));
    basic_of_.push_back(var);
    rows_.push_back(std::move(row));
    slack_of_form_.emplace(form, var);
    return var;
}

int TheoryState::variable_for(const std::vector<Rational> &form) {
    int nonzero = 0;
    int last = -1;
    for (std::size_t i = 0; i < form.size(); ++i)
        if (sgn(form[i]) != 0) {
            ++nonzero;
            last = static_cast<int>(i);
        }
    if (nonzero == 1)
        return last; // form is exactly x_last after normalization
    if (auto it = slack_of_form_.find(form); it != slack_of_form_.end())
        return it->second;
    return add_slack(form);
}

Verdict TheoryState::poison(std::vector<Tag> tags) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    if (!poisoned_at_) {
        poisoned_at_ = trail_.size();
        poison_conflict_ = tags;
        trail_.push_back({-1, false, std::nullopt});
    }
    checked_consistent_ = false;
    return Verdict::infeasible(std::move(tags));
}

Verdict TheoryState::assert_bound(const LinearConstraint &c, Tag tag) {
    if (c.dimension() != dimension_)
        throw std::invalid_argument("constraint dimension does not match theory state");
    checked_consistent_ = false;
    if (poisoned_at_)
        return Verdict::infeasible(poison_conflict_);

    auto first = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational &v) { return sgn(v) != 0; });
    if (first == c.coeffs.end()) {
        const int s = sgn(c.constant);
        const bool holds = c.relation == Relation::Le ? s <= 0 : c.relation == Relation::Lt ? s < 0 : s == 0;
        return holds ? Verdict::ok() : poison({tag});
    }

    const Rational lead = *first;
    std::vector<Rational> form(c.coeffs.size());
    for (std::size_t i = 0; i < form.size(); ++i)
        form[i] = c.coeffs[i] / lead;
    const Rational bound = -c.constant / lead;
    const int var = variable_for(form);
    const bool flipped = sgn(lead) < 0;

    switch (c.relation) {
    case Relation::Eq: {
        if (auto v = set_upper(var, DeltaRational(bound), tag); !v.consistent)
            return v;
        return set_lower(var, DeltaRational(bound), tag);
    }
    case Relation::Le:
        return flipped ? set_lower(var, DeltaRational(bound), tag) : set_upper(var, DeltaRational(bound), tag);
    case Relation::Lt:
        return flipped ? set_lower(var, DeltaRational(bound, 1), tag) : set_upper(var, DeltaRational(bound, -1), tag);
    }
    return Verdict::ok();
}

Verdict TheoryState::set_upper(int var, const DeltaRational &value, Tag tag) {
    auto &up = upper_[var];
    if (up && up->value <= value)
        return Verdict::ok();
    if (lower_[var] && value < lower_[var]->value)
        return poison({lower_[var]->reason, tag});
    trail_.push_back({var, true, up});
    up = Bound{value, tag};
    if (row_of_[var] < 0 && values_[var] > value)
        update(var, value);
    return Verdict::ok();
}

Verdict TheoryState::set_lower(int var, const DeltaRational &value, Tag tag) {
    auto &lo = lower_[var];
    if (lo && lo->value >= value)
        return Verdict::ok();
    if (upper_[var] && value > upper_[var]->value)
        return poison({upper_[var]->reason, tag});
    trail_.push_back({var, false, lo});
    lo = Bound{value, tag};
    if (row_of_[var] < 0 && values_[var] < value)
        update(var, value);
    return Verdict::ok();
}

void TheoryState::update(int var, const DeltaRational &value) {
    const DeltaRational shift = value - values_[var];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational &a = rows_[r][var];
        if (sgn(a) != 0)
            values_[basic_of_[r]] += a * shift;
    }
    values_[var] = value;
}

void TheoryState::pivot_and_update(int basic, int entering, const DeltaRational &value) {
    const int r = row_of_[basic];
    const Rational &a = rows_[r][entering];
    const DeltaRational theta = Rational(1 / a) * (value - values_[basic]);
    values_[basic] = value;
    values_[entering] += theta;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (static_cast<int>(k) == r)
            continue;
        const Rational &coef = rows_[k][entering];
        if (sgn(coef) != 0)
            values_[basic_of_[k]] += coef * theta;
    }
    pivot(basic, entering);
}

void TheoryState::pivot(int basic, int entering) {
    ++pivots_;
    const int r = row_of_[basic];
    auto &row = rows_[r];
    // basic = sum a_j x_j  =>  entering = (basic - sum_{j != entering} a_j x_j) / a_e
    const Rational a_e = row[entering];
    for (auto &v : row)
        if (sgn(v) != 0)
            v /= -a_e;
    row[entering] = 0;
    row[basic] = 1 / a_e;

    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (static_cast<int>(k) == r)
            continue;
        auto &other = rows_[k];
        const Rational coef = other[entering];
        if (sgn(coef) == 0)
            continue;
        other[entering] = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (sgn(row[j]) != 0)
                other[j] += coef * row[j];
    }
    row_of_[entering] = r;
    row_of_[basic] = -1;
    basic_of_[r] = entering;
}

std::vector<Tag> TheoryState::explain_row(int basic, bool lower_violated) const {
    std::vector<Tag> tags;
    tags.push_back(lower_violated ? lower_[basic]->reason : upper_[basic]->reason);
    const auto &row = rows_[row_of_[basic]];
    for (std::size_t j = 0; j < row.size(); ++j) {
        const int s = sgn(row[j]);
        if (s == 0)
            continue;
        // The row cannot move toward the violated bound because each
        // contributing nonbasic sits at the bound that blocks it.
        const bool use_upper = (s > 0) == lower_violated;
        tags.push_back(use_upper ? upper_[j]->reason : lower_[j]->reason);
    }
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

Verdict TheoryState::check() {
    if (poisoned_at_) {
        checked_consistent_ = false;
        return Verdict::infeasible(poison_conflict_);
    }
    for (;;) {
        int violated = -1;
        bool below = false;
        for (std::size_t r = 0; r < basic_of_.size(); ++r) {
            const int b = basic_of_[r];
            const bool lo = lower_[b] && values_[b] < lower_[b]->value;
            const bool hi = upper_[b] && values_[b] > upper_[b]->value;
            if ((lo || hi) && (violated < 0 || b < violated)) {
                violated = b;
                below = lo;
            }
        }
        if (violated < 0) {
            checked_consistent_ = true;
            return Verdict::ok();
        }

        const auto &row = rows_[row_of_[violated]];
        int entering = -1;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const int s = sgn(row[j]);
            if (s == 0)
                continue;
            const bool increase = (s > 0) == below;
            const bool movable = increase ? (!upper_[j] || values_[j] < upper_[j]->value)
                                          : (!lower_[j] || values_[j] > lower_[j]->value);
            if (movable) {
                entering = static_cast<int>(j);
                break;
            }
        }
        if (entering < 0) {
            checked_consistent_ = false;
            return Verdict::infeasible(explain_row(violated, below));
        }
        pivot_and_update(violated, entering, below ? lower_[violated]->value : upper_[violated]->value);
    }
}

Verdict TheoryState::assert_constraint(const LinearConstraint &c, Tag tag) {
    if (auto v = assert_bound(c, tag); !v.consistent)
        return v;
    return check();
}

void TheoryState::retract_to(std::size_t mark) {
    if (mark > trail_.size())
        throw std::out_of_range("invalid trail mark");
    while (trail_.size() > mark) {
        auto &entry = trail_.back();
        if (entry.var >= 0)
            (entry.upper ? upper_ : lower_)[entry.var] = std::move(entry.previous);
        trail_.pop_back();
    }
    if (poisoned_at_ && *poisoned_at_ >= mark) {
        poisoned_at_.reset();
        poison_conflict_.clear();
    }
    checked_consistent_ = false;
}

Point TheoryState::model() const {
    if (!checked_consistent_)
        throw std::logic_error("model requested without a consistent check");
    Rational delta = 1;
    for (std::size_t v = 0; v < values_.size(); ++v) {
        const auto &val = values_[v];
        if (const auto &lo = lower_[v]; lo && lo->value.real < val.real && lo->value.delta > val.delta) {
            Rational limit = (val.real - lo->value.real) / (lo->value.delta - val.delta);
            if (limit < delta)
                delta = limit;
        }
        if (const auto &up = upper_[v]; up && val.real < up->value.real && val.delta > up->value.delta) {
            Rational limit = (up->value.real - val.real) / (val.delta - up->value.delta);
            if (limit < delta)
                delta = limit;
        }
    }
    Point x(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i)
        x[i] = values_[i].real + values_[i].delta * delta;
    return x;
}

std::optional<Point> check_conjunction(std::span<const LinearConstraint> constraints, std::size_t dimension) {
    TheoryState state(dimension);
    Tag tag = 0;
    for (const auto &c : constraints)
        if (!state.assert_bound(c, tag++).consistent)
            return std::nullopt;
    if (!state.check().consistent)
        return std::nullopt;
    return state.model();
}

} // namespace tropsmt::lra
