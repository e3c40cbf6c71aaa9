// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tropsmt/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace tropsmt {

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw ParseError(path + ": " + what);
}

const Json &require(const Json &obj, const char *key, const std::string &path) {
    if (!obj.is_object())
        schema_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(path, std::string("missing \"") + key + "\"");
    return *it;
}

std::size_t require_dimension(const Json &obj) {
    const Json &d = require(obj, "dimension", "$");
    if (!d.is_number_unsigned())
        schema_error("$.dimension", "expected a nonnegative integer");
    return d.get<std::size_t>();
}

std::vector<std::string> read_names(const Json &obj, std::size_t dimension) {
    auto it = obj.find("variables");
    if (it == obj.end())
        return default_variable_names(dimension);
    if (!it->is_array() || it->size() != dimension)
        schema_error("$.variables", "expected " + std::to_string(dimension) + " names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string())
            schema_error("$.variables[" + std::to_string(i) + "]", "expected a string");
        names.push_back((*it)[i].get<std::string>());
    }
    return names;
}

Json point_to_json(const Point &x) {
    Json out = Json::array();
    for (const auto &v : x)
        out.push_back(rational_to_json(v));
    return out;
}

double seconds(Duration d) { return d.count(); }

bool is_flat(const Json &value) {
    if (!value.is_array())
        return false;
    for (const auto &v : value)
        if (v.is_structured())
            return false;
    return true;
}

void pretty_into(std::string &out, const Json &value, std::size_t depth) {
    const std::string pad(depth + 1, ' ');
    const std::string close(depth, ' ');
    if (value.is_object() && !value.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto &[key, v] : value.items()) {
            out += pad + Json(key).dump() + ": ";
            pretty_into(out, v, depth + 1);
            out += ++i < value.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (value.is_array() && !value.empty() && !is_flat(value)) {
        out += "[\n";
        for (std::size_t i = 0; i < value.size(); ++i) {
            out += pad;
            pretty_into(out, value[i], depth + 1);
            out += i + 1 < value.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else if (value.is_array() && !value.empty()) {
        out += "[";
        for (std::size_t i = 0; i < value.size(); ++i)
            out += (i ? ", " : "") + value[i].dump();
        out += "]";
    } else {
        out += value.dump();
    }
}

} // namespace

Json rational_to_json(const Rational &value) {
    if (value.get_den() == 1 && value.get_num().fits_slong_p())
        return Json(value.get_num().get_si());
    return Json(to_string(value));
}

Rational rational_from_json(const Json &value, const std::string &path) {
    if (value.is_number_integer())
        return Rational(value.get<long>());
    if (value.is_string()) {
        try {
            const std::string text = value.get<std::string>();
            if (text.find('.') != std::string::npos)
                schema_error(path, "decimal strings are not accepted, use \"p/q\"");
            return parse_rational(text);
        } catch (const std::invalid_argument &e) {
            schema_error(path, e.what());
        }
    }
    schema_error(path, "expected an integer or a \"p/q\" string");
}

Json polyhedron_to_json(const Polyhedron &p) {
    Json le = Json::array();
    Json eq = Json::array();
    for (const auto &c : p.constraints()) {
        Json row = Json::array();
        row.push_back(rational_to_json(c.constant));
        for (const auto &a : c.coeffs)
            row.push_back(rational_to_json(a));
        switch (c.relation) {
        case Relation::Le:
            le.push_back(std::move(row));
            break;
        case Relation::Eq:
            eq.push_back(std::move(row));
            break;
        case Relation::Lt:
            throw std::invalid_argument("strict constraints cannot be serialized");
        }
    }
    Json out = Json::object();
    out["le"] = std::move(le);
    out["eq"] = std::move(eq);
    return out;
}

Polyhedron polyhedron_from_json(const Json &value, std::size_t dimension, const std::string &path) {
    if (!value.is_object())
        schema_error(path, "expected an object with \"le\"/\"eq\" rows");
    Polyhedron p(dimension);
    for (const auto &[key, rel] : {std::pair{"le", Relation::Le}, std::pair{"eq", Relation::Eq}}) {
        auto it = value.find(key);
        if (it == value.end())
            continue;
        if (!it->is_array())
            schema_error(path + "." + key, "expected an array of rows");
        for (std::size_t r = 0; r < it->size(); ++r) {
            const std::string row_path = path + "." + key + "[" + std::to_string(r) + "]";
            const Json &row = (*it)[r];
            if (!row.is_array() || row.size() != dimension + 1)
                schema_error(row_path, "expected " + std::to_string(dimension + 1) + " entries");
            LinearConstraint c;
            c.relation = rel;
            c.constant = rational_from_json(row[0], row_path + "[0]");
            for (std::size_t i = 1; i <= dimension; ++i)
                c.coeffs.push_back(rational_from_json(row[i], row_path + "[" + std::to_string(i) + "]"));
            p.add(c);
        }
    }
    for (const auto &[key, unused] : value.items())
        if (key != "le" && key != "eq" && key != "witness" && key != "round")
            schema_error(path, "unknown key \"" + key + "\"");
    return p;
}

Json problem_to_json(const Problem &p) {
    Json out = Json::object();
    out["dimension"] = p.dimension;
    out["variables"] = p.variable_names;
    Json bags = Json::array();
    for (const auto &bag : p.bags) {
        Json members = Json::array();
        for (const auto &poly : bag.polyhedra)
            members.push_back(polyhedron_to_json(poly));
        bags.push_back(std::move(members));
    }
    out["bags"] = std::move(bags);
    return out;
}

Problem problem_from_json(const Json &value) {
    const std::size_t dimension = require_dimension(value);
    Problem p(dimension, read_names(value, dimension), {});
    const Json &bags = require(value, "bags", "$");
    if (!bags.is_array())
        schema_error("$.bags", "expected an array of bags");
    for (std::size_t b = 0; b < bags.size(); ++b) {
        const std::string bag_path = "$.bags[" + std::to_string(b) + "]";
        if (!bags[b].is_array())
            schema_error(bag_path, "expected an array of polyhedra");
        Bag bag;
        for (std::size_t k = 0; k < bags[b].size(); ++k)
            bag.polyhedra.push_back(
                polyhedron_from_json(bags[b][k], dimension, bag_path + "[" + std::to_string(k) + "]"));
        p.bags.push_back(std::move(bag));
    }
    return p;
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream msg;
        msg << "JSON syntax error at line " << line << ", column " << column << ": " << e.what();
        throw ParseError(msg.str());
    }
}

Problem parse_problem(const std::string &text) { return problem_from_json(parse_json(text)); }

std::string serialize_problem(const Problem &p) { return pretty_json(problem_to_json(p)) + "\n"; }

std::string pretty_json(const Json &value) {
    std::string out;
    pretty_into(out, value, 0);
    return out;
}

PolynomialSystem system_from_json(const Json &value) {
    PolynomialSystem sys;
    sys.dimension = require_dimension(value);
    sys.variable_names = read_names(value, sys.dimension);
    const Json &eqs = require(value, "equations", "$");
    if (!eqs.is_array())
        schema_error("$.equations", "expected an array of equations");
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        const std::string eq_path = "$.equations[" + std::to_string(e) + "]";
        if (!eqs[e].is_array())
            schema_error(eq_path, "expected an array of terms");
        Equation eq;
        for (std::size_t t = 0; t < eqs[e].size(); ++t) {
            const std::string term_path = eq_path + "[" + std::to_string(t) + "]";
            const Json &term = eqs[e][t];
            Term out;
            out.coeff = rational_from_json(require(term, "coeff", term_path), term_path + ".coeff");
            const Json &exps = require(term, "exps", term_path);
            if (!exps.is_array() || exps.size() != sys.dimension)
                schema_error(term_path + ".exps", "expected " + std::to_string(sys.dimension) + " exponents");
            for (const auto &x : exps) {
                if (!x.is_number_unsigned())
                    schema_error(term_path + ".exps", "exponents must be nonnegative integers");
                out.exps.push_back(x.get<unsigned>());
            }
            eq.push_back(std::move(out));
        }
        sys.equations.push_back(std::move(eq));
    }
    try {
        sys.validate();
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("$.equations: ") + e.what());
    }
    return sys;
}

PolynomialSystem parse_system(const std::string &text) { return system_from_json(parse_json(text)); }

Json system_to_json(const PolynomialSystem &sys) {
    Json out = Json::object();
    out["dimension"] = sys.dimension;
    out["variables"] = sys.variable_names.empty() ? default_variable_names(sys.dimension) : sys.variable_names;
    Json eqs = Json::array();
    for (const auto &eq : sys.equations) {
        Json terms = Json::array();
        for (const auto &t : eq)
            terms.push_back(Json{{"coeff", rational_to_json(t.coeff)}, {"exps", t.exps}});
        eqs.push_back(std::move(terms));
    }
    out["equations"] = std::move(eqs);
    return out;
}

Json statistics_to_json(const RunStatistics &s) {
    return Json{{"rounds", s.rounds},
                {"time_search", seconds(s.time_search)},
                {"time_minimize", seconds(s.time_minimize)},
                {"time_inclusion", seconds(s.time_inclusion)},
                {"time_total", seconds(s.time_total)},
                {"full_inclusion_checks", s.full_inclusion_checks},
                {"point_prefilter_hits", s.point_prefilter_hits},
                {"polyhedra_emitted", s.polyhedra_emitted},
                {"polyhedra_dropped", s.polyhedra_dropped},
                {"polyhedra_superseded", s.polyhedra_superseded},
                {"peak_live", s.peak_live}};
}

Json statistics_to_json(const BaselineStats &s) {
    return Json{{"max_intermediate", s.max_intermediate},
                {"intersections_performed", s.intersections_performed},
                {"empties_dropped", s.empties_dropped},
                {"subsumed_dropped", s.subsumed_dropped},
                {"time_total", seconds(s.time_total)}};
}

Json statistics_to_json(const PreprocessReport &r) {
    return Json{{"singleton_constraints_collected", r.singleton_constraints_collected},
                {"polyhedra_dropped_empty", r.polyhedra_dropped_empty},
                {"polyhedra_dropped_redundant", r.polyhedra_dropped_redundant},
                {"time_spent", seconds(r.time_spent)}};
}

Json result_to_json(const Problem &p, const EnumerationResult &result, const PreprocessReport *report) {
    Json out = Json::object();
    out["dimension"] = p.dimension;
    out["variables"] = p.variable_names;
    out["complete"] = result.complete;
    out["rounds"] = result.stats.rounds;
    Json polys = Json::array();
    for (const auto &f : result.polyhedra) {
        Json entry = polyhedron_to_json(f.polyhedron);
        entry["witness"] = point_to_json(f.witness);
        entry["round"] = f.round;
        polys.push_back(std::move(entry));
    }
    out["polyhedra"] = std::move(polys);
    out["stats"] = statistics_to_json(result.stats);
    if (report)
        out["preprocess"] = statistics_to_json(*report);
    return out;
}

Json result_to_json(const Problem &p, const BaselineResult &result) {
    Json out = Json::object();
    out["dimension"] = p.dimension;
    out["variables"] = p.variable_names;
    out["complete"] = true;
    out["rounds"] = 0;
    Json polys = Json::array();
    for (const auto &poly : result.polyhedra)
        polys.push_back(polyhedron_to_json(poly));
    out["polyhedra"] = std::move(polys);
    out["stats"] = statistics_to_json(result.stats);
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace tropsmt
