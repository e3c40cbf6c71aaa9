// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/smt.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cdcl.hpp"
#include "subprocess.hpp"
#include "tropsmt/lra.hpp"

namespace tropsmt {

const char *to_string(BackendError::Kind kind) {
    switch (kind) {
    case BackendError::Kind::ProcessFailure:
        return "process failure";
    case BackendError::Kind::Protocol:
        return "protocol error";
    case BackendError::Kind::Timeout:
        return "timeout";
    case BackendError::Kind::Unknown:
        return "unknown verdict";
    }
    return "?";
}

SolverSession::SolverSession(std::size_t dimension, std::vector<std::string> variable_names)
    : dimension_(dimension), names_(std::move(variable_names)) {
    if (names_.empty())
        names_ = default_variable_names(dimension_);
    if (names_.size() != dimension_)
        throw std::invalid_argument("variable name count does not match session dimension");
}

void SolverSession::add_assertion(const Formula &f) {
    if (f.dimension() != dimension_)
        throw std::invalid_argument("assertion dimension does not match session");
    assertions_.push_back(f);
    do_add(f);
}

std::optional<Point> SolverSession::check() {
    auto model = do_check();
    if (model && verify_models_) {
        if (model->size() != dimension_)
            throw BackendError(BackendError::Kind::Protocol, "model has wrong dimension");
        for (const auto &a : assertions_)
            if (!a.evaluate(*model))
                throw BackendError(BackendError::Kind::Protocol,
                                   backend_name() + " returned a model that violates an assertion");
    }
    return model;
}

// ---------------------------------------------------------------------------
// Internal DPLL(T) backend

namespace {

using sat::Lit;

struct ConstraintHash {
    std::size_t operator()(const LinearConstraint &c) const {
        auto mix = [](std::size_t h, const Rational &v) {
            const std::size_t x = static_cast<std::size_t>(mpz_get_si(v.get_num_mpz_t())) * 0x9e3779b97f4a7c15ULL ^
                                  static_cast<std::size_t>(mpz_get_ui(v.get_den_mpz_t()));
            return (h ^ x) * 0x100000001b3ULL + (h >> 29);
        };
        std::size_t h = static_cast<std::size_t>(c.relation);
        for (const auto &v : c.coeffs)
            h = mix(h, v);
        return mix(h, c.constant);
    }
};

class TheoryBridge final : public sat::TheoryHooks {
public:
    explicit TheoryBridge(std::size_t dimension) : state(dimension) {}

    /// `le` must be canonical, so its negation -f < 0 is canonical as is.
    void register_atom(int var, const LinearConstraint &le) {
        if (atoms_.size() <= static_cast<std::size_t>(var))
            atoms_.resize(var + 1);
        auto &atom = atoms_[var].emplace();
        atom.positive = le;
        atom.negative.relation = Relation::Lt;
        atom.negative.coeffs.reserve(le.coeffs.size());
        for (const auto &v : le.coeffs)
            atom.negative.coeffs.emplace_back(-v);
        atom.negative.constant = -le.constant;
    }

    std::vector<Lit> on_assign(Lit lit) override {
        const int v = sat::var_of(lit);
        if (static_cast<std::size_t>(v) >= atoms_.size() || !atoms_[v])
            return {};
        const auto &c = sat::is_negated(lit) ? atoms_[v]->negative : atoms_[v]->positive;
        auto verdict = state.assert_bound(c, lit);
        return verdict.consistent ? std::vector<Lit>{} : std::move(verdict.conflict);
    }

    std::vector<Lit> final_check() override {
        auto verdict = state.check();
        return verdict.consistent ? std::vector<Lit>{} : std::move(verdict.conflict);
    }

    void push_level() override { marks_.push_back(state.mark()); }

    void pop_to_level(int level) override {
        state.retract_to(marks_[level]);
        marks_.resize(level);
    }

    lra::TheoryState state;

private:
    struct Atom {
        LinearConstraint positive;
        LinearConstraint negative;
    };
    std::deque<std::optional<Atom>> atoms_; // no relocation: gmpxx moves are not noexcept
    std::vector<std::size_t> marks_;
};

class InternalSession final : public SolverSession {
public:
    InternalSession(std::size_t dimension, std::vector<std::string> names)
        : SolverSession(dimension, std::move(names)), bridge_(dimension), solver_(&bridge_) {
        true_var_ = solver_.new_var();
        solver_.add_clause({sat::make_lit(true_var_)});
    }

    std::string backend_name() const override { return "internal"; }

protected:
    void do_add(const Formula &f) override { assert_top(f, true); }

    std::optional<Point> do_check() override {
        if (!solver_.solve())
            return std::nullopt;
        Point model = bridge_.state.model();
        solver_.backtrack_to_root();
        return model;
    }

private:
    Lit theory_literal(const LinearConstraint &le) {
        auto [it, inserted] = theory_vars_.try_emplace(le, 0);
        if (inserted) {
            it->second = solver_.new_var();
            bridge_.register_atom(it->second, le);
            link_bounds(le, sat::make_lit(it->second));
        }
        return sat::make_lit(it->second);
    }

    // Atoms over the same linear form are x <= b or x >= b after scaling.
    // Clauses between neighbours in bound order make the SAT core see their
    // implications directly instead of through theory conflicts; chains of
    // neighbour links cover every other pair.
    void link_bounds(const LinearConstraint &le, Lit lit) {
        auto first = std::find_if(le.coeffs.begin(), le.coeffs.end(), [](const Rational &v) { return sgn(v) != 0; });
        if (first == le.coeffs.end())
            return;
        const Rational lead = *first;
        std::vector<Rational> form;
        form.reserve(le.coeffs.size());
        for (const auto &v : le.coeffs)
            form.push_back(v / lead);
        const Rational b = -le.constant / lead;
        auto &fb = bounds_by_form_[form];
        const auto add = [this](Lit a, Lit c) { solver_.add_clause({a, c}); };
        using sat::negate;

        if (sgn(lead) > 0) { // x <= b
            auto &up = fb.upper;
            if (auto it = up.lower_bound(b); it != up.begin())
                add(negate(std::prev(it)->second), lit);
            if (auto it = up.upper_bound(b); it != up.end())
                add(negate(lit), it->second);
            if (auto it = fb.lower.upper_bound(b); it != fb.lower.end())
                add(negate(lit), negate(it->second)); // x <= b excludes x >= l for l > b
            if (auto it = fb.lower.upper_bound(b); it != fb.lower.begin())
                add(lit, std::prev(it)->second); // x > b implies x >= l for l <= b
            up.emplace(b, lit);
        } else { // x >= b
            auto &lo = fb.lower;
            if (auto it = lo.lower_bound(b); it != lo.begin())
                add(negate(lit), std::prev(it)->second);
            if (auto it = lo.upper_bound(b); it != lo.end())
                add(negate(it->second), lit);
            if (auto it = fb.upper.lower_bound(b); it != fb.upper.begin())
                add(negate(std::prev(it)->second), negate(lit));
            if (auto it = fb.upper.lower_bound(b); it != fb.upper.end())
                add(lit, it->second); // x < b implies x <= u for u >= b
            lo.emplace(b, lit);
        }
    }

    Lit atom_literal(const LinearConstraint &c) {
        if (is_trivially_true(c))
            return sat::make_lit(true_var_);
        if (is_trivially_false(c))
            return sat::make_lit(true_var_, true);
        switch (c.relation) {
        case Relation::Le:
            return theory_literal(c);
        case Relation::Lt:
            return sat::negate(theory_literal(complement(c).front()));
        case Relation::Eq: {
            auto [it, inserted] = eq_vars_.try_emplace(c, 0);
            if (inserted) {
                it->second = solver_.new_var();
                LinearConstraint below = c;
                below.relation = Relation::Le;
                const auto strict_below = complement(c).front(); // f < 0
                const Lit le = theory_literal(canonicalize(below));
                const Lit ge = theory_literal(complement(strict_below).front()); // -f <= 0
                const Lit e = sat::make_lit(it->second);
                // e <-> (f <= 0 and -f <= 0)
                solver_.add_clause({sat::negate(e), le});
                solver_.add_clause({sat::negate(e), ge});
                solver_.add_clause({e, sat::negate(le), sat::negate(ge)});
            }
            return sat::make_lit(it->second);
        }
        }
        return sat::make_lit(true_var_);
    }

    Lit encode(const Formula &f) {
        if (f.kind() == Formula::Kind::Atom)
            return atom_literal(f.constraint());
        if (f.kind() == Formula::Kind::Not)
            return sat::negate(encode(f.children()[0]));
        if (auto it = encoded_.find(f.identity()); it != encoded_.end())
            return it->second;

        std::vector<Lit> kids;
        kids.reserve(f.children().size());
        for (const auto &child : f.children())
            kids.push_back(encode(child));
        Lit result;
        if (kids.size() == 1) {
            result = kids.front();
        } else {
            const bool is_and = f.kind() == Formula::Kind::And;
            const Lit v = sat::make_lit(solver_.new_var());
            // And: v -> k_i, (all k_i) -> v.  Or: dual.
            std::vector<Lit> big{is_and ? v : sat::negate(v)};
            for (Lit k : kids) {
                if (is_and)
                    solver_.add_clause({sat::negate(v), k});
                else
                    solver_.add_clause({v, sat::negate(k)});
                big.push_back(is_and ? sat::negate(k) : k);
            }
            solver_.add_clause(std::move(big));
            result = v;
        }
        encoded_.emplace(f.identity(), result);
        return result;
    }

    void assert_top(const Formula &f, bool positive) {
        switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Lit l = atom_literal(f.constraint());
            solver_.add_clause({positive ? l : sat::negate(l)});
            return;
        }
        case Formula::Kind::Not:
            assert_top(f.children()[0], !positive);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const bool conjunctive = (f.kind() == Formula::Kind::And) == positive;
            if (conjunctive) {
                for (const auto &child : f.children())
                    assert_top(child, positive);
                return;
            }
            std::vector<Lit> clause;
            for (const auto &child : f.children()) {
                const Lit l = encode(child);
                clause.push_back(positive ? l : sat::negate(l));
            }
            solver_.add_clause(std::move(clause));
            return;
        }
        }
    }

    TheoryBridge bridge_;
    sat::CdclSolver solver_;
    int true_var_;
    std::unordered_map<LinearConstraint, int, ConstraintHash> theory_vars_;
    std::unordered_map<LinearConstraint, int, ConstraintHash> eq_vars_;
    struct FormBounds {
        std::map<Rational, Lit> upper; // x <= b
        std::map<Rational, Lit> lower; // x >= b
    };
    std::map<std::vector<Rational>, FormBounds> bounds_by_form_;
    std::unordered_map<const void *, Lit> encoded_;
};

// ---------------------------------------------------------------------------
// External SMT-LIB2 backend

class ExternalSession final : public SolverSession {
public:
    ExternalSession(std::size_t dimension, std::vector<std::string> names, const ExternalSolverConfig &config)
        : SolverSession(dimension, std::move(names)), config_(config), process_(config.command) {
        std::string header = "(set-option :produce-models true)\n(set-logic QF_LRA)\n";
        for (const auto &n : variable_names())
            header += "(declare-const " + smtlib_symbol(n) + " Real)\n";
        process_.write(header);
    }

    std::string backend_name() const override { return "external:" + config_.command.front(); }

protected:
    void do_add(const Formula &f) override {
        process_.write("(assert " + smtlib_formula(f, variable_names()) + ")\n");
    }

    std::optional<Point> do_check() override {
        const auto deadline = detail::ChildProcess::Clock::now() + config_.timeout;
        process_.write("(check-sat)\n");
        const std::string verdict = process_.read_sexpr(deadline);
        if (verdict == "unsat")
            return std::nullopt;
        if (verdict == "unknown")
            throw BackendError(BackendError::Kind::Unknown, backend_name() + " answered unknown");
        if (verdict != "sat")
            throw BackendError(BackendError::Kind::Protocol, "unexpected response to check-sat: " + verdict);
        process_.write("(get-model)\n");
        const std::string model = process_.read_sexpr(deadline);
        return parse_smtlib_model(model, variable_names());
    }

private:
    ExternalSolverConfig config_;
    detail::ChildProcess process_;
};

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
    std::string atom;
    std::vector<SExpr> list;
    bool is_list = false;
};

class SExprParser {
public:
    explicit SExprParser(const std::string &text) : text_(text) {}

    SExpr parse() {
        skip();
        if (pos_ >= text_.size())
            bad("unexpected end of input");
        SExpr out;
        if (text_[pos_] == '(') {
            ++pos_;
            out.is_list = true;
            for (;;) {
                skip();
                if (pos_ >= text_.size())
                    bad("unbalanced parentheses");
                if (text_[pos_] == ')') {
                    ++pos_;
                    return out;
                }
                out.list.push_back(parse());
            }
        }
        if (text_[pos_] == ')')
            bad("unexpected ')'");
        if (text_[pos_] == '|') {
            const auto end = text_.find('|', pos_ + 1);
            if (end == std::string::npos)
                bad("unterminated quoted symbol");
            out.atom = text_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return out;
        }
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        out.atom = text_.substr(start, pos_ - start);
        return out;
    }

    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }
    [[noreturn]] void bad(const std::string &why) const {
        throw BackendError(BackendError::Kind::Protocol, "malformed model (" + why + ")");
    }

    const std::string &text_;
    std::size_t pos_ = 0;
};

Rational model_value(const SExpr &e) {
    auto bad = [](const std::string &why) -> Rational {
        throw BackendError(BackendError::Kind::Protocol, "unsupported model value: " + why);
    };
    if (!e.is_list) {
        if (e.atom.find_first_not_of("0123456789.") != std::string::npos || e.atom.empty())
            return bad(e.atom);
        try {
            return parse_rational(e.atom);
        } catch (const std::invalid_argument &) {
            return bad(e.atom);
        }
    }
    if (e.list.empty() || e.list[0].is_list)
        return bad("empty or compound head");
    const std::string &op = e.list[0].atom;
    if (op == "-" && e.list.size() == 2)
        return -model_value(e.list[1]);
    if (op == "/" && e.list.size() == 3) {
        Rational den = model_value(e.list[2]);
        if (den == 0)
            return bad("division by zero");
        return model_value(e.list[1]) / den;
    }
    return bad(op);
}

void collect_definitions(const SExpr &e, std::map<std::string, Rational> &out) {
    if (!e.is_list)
        return;
    if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "define-fun") {
        if (e.list.size() != 5 || e.list[1].is_list)
            throw BackendError(BackendError::Kind::Protocol, "malformed define-fun in model");
        if (!e.list[2].is_list || !e.list[2].list.empty())
            return; // not a constant
        out[e.list[1].atom] = model_value(e.list[4]);
        return;
    }
    for (const auto &child : e.list)
        collect_definitions(child, out);
}

bool is_simple_symbol(const std::string &s) {
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos)
            return false;
    static const char *reserved[] = {"and", "or", "not", "true", "false", "let", "forall", "exists", "ite", "_", "!",
                                     "as", "par", "assert", "Real", "Int", "Bool"};
    for (const char *r : reserved)
        if (s == r)
            return false;
    return true;
}

void render(const Formula &f, std::span<const std::string> names, std::string &out) {
    switch (f.kind()) {
    case Formula::Kind::Atom: {
        const auto &c = f.constraint();
        if (is_trivially_true(c)) {
            out += "true";
            return;
        }
        if (is_trivially_false(c)) {
            out += "false";
            return;
        }
        std::vector<std::string> terms;
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
            const Rational &a = c.coeffs[i];
            if (sgn(a) == 0)
                continue;
            const std::string sym = smtlib_symbol(names[i]);
            if (a == 1)
                terms.push_back(sym);
            else if (a == -1)
                terms.push_back("(- " + sym + ")");
            else
                terms.push_back("(* " + smtlib_numeral(a) + " " + sym + ")");
        }
        std::string lhs;
        if (terms.empty()) {
            lhs = "0";
        } else if (terms.size() == 1) {
            lhs = terms.front();
        } else {
            lhs = "(+";
            for (const auto &t : terms)
                lhs += " " + t;
            lhs += ")";
        }
        out += "(";
        out += to_string(c.relation);
        out += " " + lhs + " " + smtlib_numeral(Rational(-c.constant)) + ")";
        return;
    }
    case Formula::Kind::Not:
        out += "(not ";
        render(f.children()[0], names, out);
        out += ")";
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        if (f.children().size() == 1) {
            render(f.children()[0], names, out);
            return;
        }
        out += f.kind() == Formula::Kind::And ? "(and" : "(or";
        for (const auto &child : f.children()) {
            out += " ";
            render(child, names, out);
        }
        out += ")";
        return;
    }
}

} // namespace

std::string smtlib_symbol(const std::string &name) { return is_simple_symbol(name) ? name : "|" + name + "|"; }

std::string smtlib_numeral(const Rational &value) {
    const Rational mag = abs(value);
    std::string body = mag.get_den() == 1 ? mag.get_num().get_str()
                                          : "(/ " + mag.get_num().get_str() + " " + mag.get_den().get_str() + ")";
    return sgn(value) < 0 ? "(- " + body + ")" : body;
}

std::string smtlib_formula(const Formula &f, std::span<const std::string> names) {
    if (names.size() != f.dimension())
        throw std::invalid_argument("name count does not match formula dimension");
    std::string out;
    render(f, names, out);
    return out;
}

std::string export_smtlib2(std::span<const Formula> assertions, std::span<const std::string> names) {
    std::string out = "(set-option :produce-models true)\n(set-logic QF_LRA)\n";
    for (const auto &n : names)
        out += "(declare-const " + smtlib_symbol(n) + " Real)\n";
    for (const auto &a : assertions)
        out += "(assert " + smtlib_formula(a, names) + ")\n";
    out += "(check-sat)\n(get-model)\n";
    return out;
}

std::string export_smtlib2(const SolverSession &session) {
    return export_smtlib2(session.assertions(), session.variable_names());
}

Point parse_smtlib_model(const std::string &text, std::span<const std::string> names) {
    SExprParser parser(text);
    SExpr root = parser.parse();
    if (!parser.at_end())
        throw BackendError(BackendError::Kind::Protocol, "trailing text after model");
    if (root.is_list && !root.list.empty() && !root.list[0].is_list && root.list[0].atom == "error")
        throw BackendError(BackendError::Kind::Protocol, "solver error: " + text);
    std::map<std::string, Rational> values;
    collect_definitions(root, values);
    Point x(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        if (auto it = values.find(names[i]); it != values.end())
            x[i] = it->second;
    return x;
}

std::vector<std::string> split_command(const std::string &command_line) {
    // Whitespace-separated words; single or double quotes group a word.
    std::vector<std::string> argv;
    std::string word;
    bool in_word = false;
    char quote = 0;
    for (char ch : command_line) {
        if (quote) {
            if (ch == quote)
                quote = 0;
            else
                word += ch;
        } else if (ch == '\'' || ch == '"') {
            quote = ch;
            in_word = true;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            if (in_word)
                argv.push_back(std::move(word));
            word.clear();
            in_word = false;
        } else {
            word += ch;
            in_word = true;
        }
    }
    if (quote)
        throw std::invalid_argument("unterminated quote in solver command");
    if (in_word)
        argv.push_back(std::move(word));
    return argv;
}

std::optional<std::vector<std::string>> default_external_command() {
    if (const char *env = std::getenv("TROPSMT_SOLVER"); env && *env)
        return split_command(env);
    const char *path = std::getenv("PATH");
    if (!path)
        return std::nullopt;
    const std::vector<std::pair<std::string, std::vector<std::string>>> known = {
        {"z3", {"z3", "-in"}},
        {"cvc5", {"cvc5", "--lang=smt2", "--incremental"}},
    };
    for (const auto &[exe, argv] : known) {
        std::istringstream dirs(path);
        for (std::string dir; std::getline(dirs, dir, ':');) {
            std::error_code ec;
            if (!dir.empty() && std::filesystem::exists(std::filesystem::path(dir) / exe, ec))
                return argv;
        }
    }
    return std::nullopt;
}

std::unique_ptr<SolverSession> make_internal_session(std::size_t dimension, std::vector<std::string> names) {
    return std::make_unique<InternalSession>(dimension, std::move(names));
}

std::unique_ptr<SolverSession> make_external_session(std::size_t dimension, std::vector<std::string> names,
                                                     const ExternalSolverConfig &config) {
    return std::make_unique<ExternalSession>(dimension, std::move(names), config);
}

SessionFactory internal_session_factory() {
    return [](std::size_t d, const std::vector<std::string> &names) { return make_internal_session(d, names); };
}

SessionFactory external_session_factory(ExternalSolverConfig config) {
    return [config = std::move(config)](std::size_t d, const std::vector<std::string> &names) {
        return make_external_session(d, names, config);
    };
}

} // namespace tropsmt
