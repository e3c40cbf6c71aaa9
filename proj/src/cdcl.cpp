// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cdcl.hpp"

#include <algorithm>

namespace tropsmt::sat {

namespace {

double luby(double y, int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i)
        r *= y;
    return r;
}

} // namespace

int CdclSolver::new_var() {
    const int v = var_count();
    assigns_.push_back(Value::Undef);
    level_.push_back(0);
    reason_.push_back(-1);
    polarity_.push_back(true);
    activity_.push_back(0.0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v;
}

Value CdclSolver::value(Lit l) const {
    const Value v = assigns_[var_of(l)];
    if (v == Value::Undef)
        return v;
    return (v == Value::True) != is_negated(l) ? Value::True : Value::False;
}

void CdclSolver::enqueue(Lit l, int reason) {
    const int v = var_of(l);
    assigns_[v] = is_negated(l) ? Value::False : Value::True;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
}

void CdclSolver::attach(int clause) {
    const auto &lits = clauses_[clause].lits;
    watches_[lits[0]].push_back(clause);
    watches_[lits[1]].push_back(clause);
}

bool CdclSolver::add_clause(std::vector<Lit> lits) {
    if (!ok_)
        return false;
    backtrack(0);
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<Lit> kept;
    kept.reserve(lits.size());
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i]))
            return true; // tautology
        const Value v = value(lits[i]);
        if (v == Value::True)
            return true;
        if (v == Value::Undef)
            kept.push_back(lits[i]);
    }
    if (kept.empty()) {
        ok_ = false;
        return false;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], -1);
        if (propagate())
            ok_ = false;
        return ok_;
    }
    clauses_.push_back({std::move(kept), false});
    attach(static_cast<int>(clauses_.size()) - 1);
    return true;
}

std::optional<std::vector<Lit>> CdclSolver::propagate() {
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];
        ++stats_.propagations;
        if (theory_) {
            auto explanation = theory_->on_assign(p);
            if (!explanation.empty()) {
                ++stats_.theory_conflicts;
                for (auto &l : explanation)
                    l = negate(l);
                return explanation;
            }
        }

        const Lit false_lit = negate(p);
        auto &watchers = watches_[false_lit];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < watchers.size(); ++i) {
            const int ci = watchers[i];
            auto &lits = clauses_[ci].lits;
            if (lits[0] == false_lit)
                std::swap(lits[0], lits[1]);
            if (value(lits[0]) == Value::True) {
                watchers[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < lits.size(); ++k) {
                if (value(lits[k]) != Value::False) {
                    std::swap(lits[1], lits[k]);
                    watches_[lits[1]].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            watchers[keep++] = ci;
            if (value(lits[0]) == Value::False) {
                for (std::size_t j = i + 1; j < watchers.size(); ++j)
                    watchers[keep++] = watchers[j];
                watchers.resize(keep);
                qhead_ = trail_.size();
                return lits;
            }
            enqueue(lits[0], ci);
        }
        watchers.resize(keep);
    }
    return std::nullopt;
}

void CdclSolver::backtrack(int level) {
    if (decision_level() <= level)
        return;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
        const int v = var_of(trail_[i]);
        polarity_[v] = is_negated(trail_[i]);
        assigns_[v] = Value::Undef;
        reason_[v] = -1;
        heap_insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
    if (theory_)
        theory_->pop_to_level(level);
}

void CdclSolver::bump(int var) {
    activity_[var] += activity_inc_;
    if (activity_[var] > 1e100) {
        for (auto &a : activity_)
            a *= 1e-100;
        activity_inc_ *= 1e-100;
    }
    if (heap_pos_[var] >= 0)
        heap_up(heap_pos_[var]);
}

bool CdclSolver::resolve_conflict(const std::vector<Lit> &conflict) {
    ++stats_.conflicts;
    int top = 0;
    for (Lit l : conflict)
        top = std::max(top, level_[var_of(l)]);
    if (top == 0) {
        ok_ = false;
        return false;
    }
    backtrack(top);

    std::vector<Lit> learnt{0};
    int pending = 0;
    auto visit = [&](Lit q) {
        const int v = var_of(q);
        if (seen_[v] || level_[v] == 0)
            return;
        seen_[v] = 1;
        bump(v);
        if (level_[v] == decision_level())
            ++pending;
        else
            learnt.push_back(q);
    };
    for (Lit q : conflict)
        visit(q);

    std::size_t index = trail_.size();
    Lit uip = 0;
    for (;;) {
        while (!seen_[var_of(trail_[--index])]) {
        }
        uip = trail_[index];
        seen_[var_of(uip)] = 0;
        if (--pending == 0)
            break;
        const int r = reason_[var_of(uip)];
        for (Lit q : clauses_[r].lits)
            if (q != uip)
                visit(q);
    }
    learnt[0] = negate(uip);
    for (std::size_t i = 1; i < learnt.size(); ++i)
        seen_[var_of(learnt[i])] = 0;

    int back_level = 0;
    std::size_t second = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i)
        if (level_[var_of(learnt[i])] > back_level) {
            back_level = level_[var_of(learnt[i])];
            second = i;
        }
    backtrack(back_level);
    if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
    } else {
        std::swap(learnt[1], learnt[second]);
        clauses_.push_back({std::move(learnt), true});
        const int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        enqueue(clauses_[ci].lits[0], ci);
    }
    decay();
    return true;
}

int CdclSolver::pick_branch_var() {
    while (!heap_.empty()) {
        const int v = heap_pop();
        if (assigns_[v] == Value::Undef)
            return v;
    }
    return -1;
}

bool CdclSolver::solve() {
    if (!ok_)
        return false;
    backtrack(0);
    int restart_round = 0;
    std::uint64_t conflict_budget = static_cast<std::uint64_t>(luby(2, restart_round) * 100);
    std::uint64_t conflicts_here = 0;
    for (;;) {
        auto conflict = propagate();
        if (!conflict && trail_.size() == assigns_.size() && theory_) {
            auto explanation = theory_->final_check();
            if (!explanation.empty()) {
                ++stats_.theory_conflicts;
                for (auto &l : explanation)
                    l = negate(l);
                conflict = std::move(explanation);
            }
        }
        if (conflict) {
            if (!resolve_conflict(*conflict))
                return false;
            ++conflicts_here;
            continue;
        }
        if (trail_.size() == assigns_.size())
            return true;
        if (conflicts_here >= conflict_budget) {
            ++stats_.restarts;
            backtrack(0);
            conflicts_here = 0;
            conflict_budget = static_cast<std::uint64_t>(luby(2, ++restart_round) * 100);
            continue;
        }
        const int v = pick_branch_var();
        ++stats_.decisions;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        if (theory_)
            theory_->push_level();
        enqueue(make_lit(v, polarity_[v]), -1);
    }
}

void CdclSolver::heap_insert(int var) {
    if (heap_pos_[var] >= 0)
        return;
    heap_pos_[var] = static_cast<int>(heap_.size());
    heap_.push_back(var);
    heap_up(heap_pos_[var]);
}

void CdclSolver::heap_up(int pos) {
    const int v = heap_[pos];
    while (pos > 0) {
        const int parent = (pos - 1) / 2;
        if (!heap_less(v, heap_[parent]))
            break;
        heap_[pos] = heap_[parent];
        heap_pos_[heap_[pos]] = pos;
        pos = parent;
    }
    heap_[pos] = v;
    heap_pos_[v] = pos;
}

void CdclSolver::heap_down(int pos) {
    const int v = heap_[pos];
    const int n = static_cast<int>(heap_.size());
    for (;;) {
        int child = 2 * pos + 1;
        if (child >= n)
            break;
        if (child + 1 < n && heap_less(heap_[child + 1], heap_[child]))
            ++child;
        if (!heap_less(heap_[child], v))
            break;
        heap_[pos] = heap_[child];
        heap_pos_[heap_[pos]] = pos;
        pos = child;
    }
    heap_[pos] = v;
    heap_pos_[v] = pos;
}

int CdclSolver::heap_pop() {
    const int top = heap_.front();
    heap_pos_[top] = -1;
    heap_.front() = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_.front()] = 0;
        heap_down(0);
    }
    return top;
}

} // namespace tropsmt::sat
