// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropsmt/formula.hpp"

namespace tropsmt {

/// Failure of an external solver process, distinguished by cause.
class BackendError : public std::runtime_error {
public:
    enum class Kind { ProcessFailure, Protocol, Timeout, Unknown };

    BackendError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char *to_string(BackendError::Kind kind);

/// Incremental satisfiability session over QF_LRA. Assertions only grow.
class SolverSession {
public:
    SolverSession(std::size_t dimension, std::vector<std::string> variable_names);
    virtual ~SolverSession() = default;
    SolverSession(const SolverSession &) = delete;
    SolverSession &operator=(const SolverSession &) = delete;

    std::size_t dimension() const { return dimension_; }
    const std::vector<std::string> &variable_names() const { return names_; }
    const std::vector<Formula> &assertions() const { return assertions_; }

    /// Throws std::invalid_argument on a dimension mismatch.
    void add_assertion(const Formula &f);
    /// A model of all assertions, or nullopt when they are unsatisfiable.
    std::optional<Point> check();

    /// Re-evaluate every model against the assertion list (on by default).
    void set_verify_models(bool on) { verify_models_ = on; }
    virtual std::string backend_name() const = 0;

protected:
    virtual void do_add(const Formula &f) = 0;
    virtual std::optional<Point> do_check() = 0;

private:
    std::size_t dimension_;
    std::vector<std::string> names_;
    std::vector<Formula> assertions_;
    bool verify_models_ = true;
};

struct ExternalSolverConfig {
    /// argv of a solver reading SMT-LIB2 on stdin, e.g. {"z3", "-in"}.
    std::vector<std::string> command;
    std::chrono::milliseconds timeout{std::chrono::minutes(10)};
};

/// Parses a shell-like command line into argv (whitespace separated, no quoting).
std::vector<std::string> split_command(const std::string &command_line);
/// Command from $TROPSMT_SOLVER, else the first of z3/cvc5 found on PATH.
std::optional<std::vector<std::string>> default_external_command();

std::unique_ptr<SolverSession> make_internal_session(std::size_t dimension, std::vector<std::string> names = {});
std::unique_ptr<SolverSession> make_external_session(std::size_t dimension, std::vector<std::string> names,
                                                     const ExternalSolverConfig &config);

using SessionFactory = std::function<std::unique_ptr<SolverSession>(std::size_t, const std::vector<std::string> &)>;
SessionFactory internal_session_factory();
SessionFactory external_session_factory(ExternalSolverConfig config);

/// QF_LRA script: logic, declarations, one assert per assertion, check-sat, get-model.
std::string export_smtlib2(const SolverSession &session);
std::string export_smtlib2(std::span<const Formula> assertions, std::span<const std::string> names);
/// Integer literal, `(/ p q)`, or their negation `(- ...)`.
std::string smtlib_numeral(const Rational &value);
std::string smtlib_formula(const Formula &f, std::span<const std::string> names);
/// Quoted as |name| when not a plain SMT-LIB symbol.
std::string smtlib_symbol(const std::string &name);

/// Parses a `(get-model)` response into values keyed by the session's
/// variable names. Variables absent from the model default to 0. Throws
/// BackendError(Protocol) on malformed or inexact values.
Point parse_smtlib_model(const std::string &text, std::span<const std::string> names);

} // namespace tropsmt
