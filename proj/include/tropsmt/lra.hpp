// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tropsmt/geometry.hpp"
#include "tropsmt/rational.hpp"

namespace tropsmt::lra {

/// Caller-chosen label attached to an asserted constraint; conflicts are
/// reported as sets of tags.
using Tag = int;

struct Verdict {
    bool consistent = true;
    std::vector<Tag> conflict; ///< infeasible subset of asserted tags when !consistent

    static Verdict ok() { return {}; }
    static Verdict infeasible(std::vector<Tag> tags) { return {false, std::move(tags)}; }
};

/// Incremental general simplex over delta-rationals.
///
/// Every distinct linear form (up to positive/negative scaling) gets one
/// slack variable whose defining row stays in the tableau for the lifetime of
/// the state; asserting a constraint only tightens a bound. Retraction
/// restores bounds from the trail and leaves the assignment alone, which is
/// sound because loosening bounds never invalidates nonbasic values.
class TheoryState {
public:
    explicit TheoryState(std::size_t dimension);

    std::size_t dimension() const { return dimension_; }

    /// Tighten bounds for `c` without running simplex. Reports only direct
    /// bound clashes.
    Verdict assert_bound(const LinearConstraint &c, Tag tag);
    /// Restore feasibility of the tableau (Bland's rule).
    Verdict check();
    /// assert_bound followed by check.
    Verdict assert_constraint(const LinearConstraint &c, Tag tag);
    Verdict assert_constraint(const LinearConstraint &c) { return assert_constraint(c, next_tag_++); }

    std::size_t mark() const { return trail_.size(); }
    /// Throws std::out_of_range when `mark` is beyond the current trail.
    void retract_to(std::size_t mark);

    /// Concrete rational point satisfying every asserted constraint. Throws
    /// std::logic_error unless the last check() was consistent.
    Point model() const;

    std::size_t variable_count() const { return values_.size(); }
    std::size_t pivot_count() const { return pivots_; }

private:
    struct Bound {
        DeltaRational value;
        Tag reason;
    };
    struct TrailEntry {
        int var; // -1: conflict marker
        bool upper;
        std::optional<Bound> previous;
    };

    int variable_for(const std::vector<Rational> &form);
    int add_slack(const std::vector<Rational> &form);
    Verdict set_upper(int var, const DeltaRational &value, Tag tag);
    Verdict set_lower(int var, const DeltaRational &value, Tag tag);
    Verdict poison(std::vector<Tag> tags);
    void update(int var, const DeltaRational &value);
    void pivot_and_update(int basic, int entering, const DeltaRational &value);
    void pivot(int basic, int entering);
    std::vector<Tag> explain_row(int basic, bool lower_violated) const;

    std::size_t dimension_;
    std::vector<DeltaRational> values_;
    std::vector<std::optional<Bound>> lower_;
    std::vector<std::optional<Bound>> upper_;
    std::vector<int> row_of_;             // -1 for nonbasic variables
    std::vector<int> basic_of_;           // row -> basic variable
    std::vector<std::vector<Rational>> rows_; // dense over all variables
    std::map<std::vector<Rational>, int> slack_of_form_;
    std::vector<TrailEntry> trail_;
    std::optional<std::size_t> poisoned_at_;
    std::vector<Tag> poison_conflict_;
    bool checked_consistent_ = true;
    std::size_t pivots_ = 0;
    Tag next_tag_ = 0;
};

/// One-shot feasibility of a conjunction; returns a satisfying point.
std::optional<Point> check_conjunction(std::span<const LinearConstraint> constraints, std::size_t dimension);

} // namespace tropsmt::lra
