// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "tropsmt/lra.hpp"

namespace tropsmt {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    explicit Stopwatch(Duration &sink) : sink_(sink), start_(Clock::now()) {}
    ~Stopwatch() { sink_ += Clock::now() - start_; }

private:
    Duration &sink_;
    Clock::time_point start_;
};

std::size_t tight_count(const Polyhedron &p, std::span<const Rational> x) {
    std::size_t n = 0;
    for (const auto &c : p.constraints())
        if (sgn(evaluate(c, x)) == 0)
            ++n;
    return n;
}

} // namespace

const char *to_string(InclusionFilter mode) {
    switch (mode) {
    case InclusionFilter::Off:
        return "off";
    case InclusionFilter::Forward:
        return "forward";
    case InclusionFilter::Bidirectional:
        return "bidirectional";
    }
    return "?";
}

void EnumerationOptions::validate() const {
    if (round_limit && *round_limit == 0)
        throw std::invalid_argument("round limit must be positive");
    if (time_limit && time_limit->count() <= 0)
        throw std::invalid_argument("time limit must be positive");
}

std::vector<Polyhedron> select_per_bag(std::span<const Rational> x, const Problem &p) {
    std::vector<Polyhedron> chosen;
    chosen.reserve(p.bags.size());
    for (std::size_t b = 0; b < p.bags.size(); ++b) {
        const Polyhedron *best = nullptr;
        std::size_t best_tight = 0;
        for (const auto &candidate : p.bags[b].polyhedra) {
            if (!contains(candidate, x))
                continue;
            const std::size_t tight = tight_count(candidate, x);
            if (!best || tight > best_tight) {
                best = &candidate;
                best_tight = tight;
            }
        }
        if (!best)
            throw std::logic_error("model point lies in no polyhedron of bag " + std::to_string(b));
        chosen.push_back(*best);
    }
    return chosen;
}

Polyhedron minimize_polyhedron(const Polyhedron &r) {
    std::vector<LinearConstraint> kept = r.constraints();
    std::vector<LinearConstraint> probe;
    for (std::size_t i = 0; i < kept.size();) {
        probe.assign(kept.begin(), kept.end());
        const LinearConstraint candidate = probe[i];
        probe.erase(probe.begin() + static_cast<std::ptrdiff_t>(i));
        probe.emplace_back();
        bool needed = false;
        for (const auto &side : complement(candidate)) {
            probe.back() = side;
            if (lra::check_conjunction(probe, r.dimension())) {
                needed = true;
                break;
            }
        }
        if (needed)
            ++i;
        else
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return Polyhedron(r.dimension(), std::move(kept));
}

InsertResult insert_filtered(std::vector<FoundPolyhedron> &results, FoundPolyhedron found, InclusionFilter mode,
                             RunStatistics &stats) {
    InsertResult out{InsertOutcome::Inserted, {}};
    if (mode != InclusionFilter::Off) {
        for (const auto &existing : results) {
            if (!contains(existing.polyhedron, found.witness))
                continue;
            ++stats.point_prefilter_hits;
            ++stats.full_inclusion_checks;
            if (includes(existing.polyhedron, found.polyhedron)) {
                ++stats.polyhedra_dropped;
                out.outcome = InsertOutcome::DroppedSubsumed;
                return out;
            }
        }
    }
    if (mode == InclusionFilter::Bidirectional) {
        std::vector<FoundPolyhedron> survivors;
        survivors.reserve(results.size() + 1);
        for (auto &existing : results) {
            bool superseded = false;
            if (contains(found.polyhedron, existing.witness)) {
                ++stats.point_prefilter_hits;
                ++stats.full_inclusion_checks;
                superseded = includes(found.polyhedron, existing.polyhedron);
            }
            if (superseded)
                out.superseded.push_back(std::move(existing));
            else
                survivors.push_back(std::move(existing));
        }
        results = std::move(survivors);
        if (!out.superseded.empty()) {
            out.outcome = InsertOutcome::InsertedSuperseding;
            stats.polyhedra_superseded += out.superseded.size();
        }
    }
    results.push_back(std::move(found));
    ++stats.polyhedra_emitted;
    stats.peak_live = std::max(stats.peak_live, results.size());
    return out;
}

EnumerationResult compute_polyhedron_dnf(const Problem &p, const EnumerationOptions &opts, SolverSession &session) {
    opts.validate();
    p.validate();
    if (session.dimension() != p.dimension)
        throw std::invalid_argument("session dimension does not match problem");

    const auto start = Clock::now();
    EnumerationResult out;
    auto &stats = out.stats;
    {
        Stopwatch sw(stats.time_search);
        session.add_assertion(encode_problem(p));
    }

    for (;;) {
        if (opts.round_limit && stats.rounds >= *opts.round_limit)
            break;
        if (opts.time_limit && Clock::now() - start >= *opts.time_limit)
            break;

        std::optional<Point> model;
        {
            Stopwatch sw(stats.time_search);
            model = session.check();
        }
        if (!model) {
            out.complete = true;
            break;
        }
        ++stats.rounds;

        Polyhedron region(p.dimension);
        {
            Stopwatch sw(stats.time_minimize);
            for (const auto &part : select_per_bag(*model, p))
                region = intersect(region, part);
            if (opts.minimize_constraints)
                region = minimize_polyhedron(region);
        }
        {
            Stopwatch sw(stats.time_search);
            session.add_assertion(negate_polyhedron(region));
        }

        FoundPolyhedron found{std::move(region), std::move(*model), stats.rounds};
        InsertResult inserted;
        {
            Stopwatch sw(stats.time_inclusion);
            const FoundPolyhedron *emitted = nullptr;
            inserted = insert_filtered(out.polyhedra, std::move(found), opts.inclusion_filter, stats);
            if (inserted.outcome != InsertOutcome::DroppedSubsumed)
                emitted = &out.polyhedra.back();
            if (emitted && opts.emit_callback)
                opts.emit_callback(*emitted);
        }
    }
    stats.time_total = Clock::now() - start;
    return out;
}

std::vector<Polyhedron> polyhedra_of(std::span<const FoundPolyhedron> found) {
    std::vector<Polyhedron> out;
    out.reserve(found.size());
    for (const auto &f : found)
        out.push_back(f.polyhedron);
    return out;
}

bool union_included(std::span<const Polyhedron> a, std::span<const Polyhedron> b, std::size_t dimension,
                    const SessionFactory &factory) {
    auto session = factory(dimension, default_variable_names(dimension));
    session->add_assertion(encode_union(a, dimension));
    session->add_assertion(Formula::negation(encode_union(b, dimension)));
    return !session->check().has_value();
}

bool unions_equal(std::span<const Polyhedron> a, std::span<const Polyhedron> b, std::size_t dimension,
                  const SessionFactory &factory) {
    return union_included(a, b, dimension, factory) && union_included(b, a, dimension, factory);
}

} // namespace tropsmt
