// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tropsmt::sat {

/// 2*var + negated
using Lit = int;

inline Lit make_lit(int var, bool negated = false) { return 2 * var + (negated ? 1 : 0); }
inline Lit negate(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }
inline bool is_negated(Lit l) { return (l & 1) != 0; }

enum class Value : std::uint8_t { False, True, Undef };

/// Theory plug-in for DPLL(T). The solver reports every assigned literal in
/// trail order; a non-empty return value is a set of currently-true literals
/// that is theory-inconsistent.
class TheoryHooks {
public:
    virtual ~TheoryHooks() = default;
    virtual std::vector<Lit> on_assign(Lit lit) = 0;
    virtual std::vector<Lit> final_check() = 0;
    virtual void push_level() = 0;
    /// Undo everything asserted above decision level `level`.
    virtual void pop_to_level(int level) = 0;
};

struct SatStatistics {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t theory_conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
};

/// CDCL core: two watched literals, first-UIP learning, VSIDS, phase saving
/// and Luby restarts. Clauses may be added between solve() calls; learned
/// clauses persist because assertions only grow.
class CdclSolver {
public:
    explicit CdclSolver(TheoryHooks *theory = nullptr) : theory_(theory) {}

    int new_var();
    int var_count() const { return static_cast<int>(assigns_.size()); }

    /// Adds a clause at the root level. Returns false once the clause set is
    /// known to be unsatisfiable.
    bool add_clause(std::vector<Lit> lits);

    /// On true the full assignment stays in place until backtrack_to_root().
    bool solve();
    void backtrack_to_root() { backtrack(0); }

    Value value(Lit l) const;
    bool okay() const { return ok_; }
    const SatStatistics &statistics() const { return stats_; }

private:
    struct Clause {
        std::vector<Lit> lits;
        bool learnt;
    };

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    void enqueue(Lit l, int reason);
    std::optional<std::vector<Lit>> propagate();
    void attach(int clause);
    void backtrack(int level);
    /// Learns from an all-false clause; false when it refutes the root.
    bool resolve_conflict(const std::vector<Lit> &conflict);
    void bump(int var);
    void decay() { activity_inc_ *= 1.0 / 0.95; }
    int pick_branch_var();

    void heap_insert(int var);
    void heap_up(int pos);
    void heap_down(int pos);
    int heap_pop();
    bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

    TheoryHooks *theory_;
    bool ok_ = true;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_; // literal -> clauses watching it
    std::vector<Value> assigns_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<bool> polarity_; // saved phase: true = negated
    std::vector<double> activity_;
    double activity_inc_ = 1.0;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<char> seen_;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    SatStatistics stats_;
};

} // namespace tropsmt::sat
