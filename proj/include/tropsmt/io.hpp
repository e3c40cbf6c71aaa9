// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tropsmt/baseline.hpp"
#include "tropsmt/enumerate.hpp"
#include "tropsmt/geometry.hpp"
#include "tropsmt/preprocess.hpp"
#include "tropsmt/tropicalize.hpp"

namespace tropsmt {

using Json = nlohmann::ordered_json;

/// Malformed input file; the message carries line/column or a JSON path.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json rational_to_json(const Rational &value);
/// Accepts JSON integers and strings "p", "p/q"; throws ParseError otherwise.
Rational rational_from_json(const Json &value, const std::string &path);

/// {"le": [[c0, c1, ...], ...], "eq": [...]}; each row is constant then coefficients.
Json polyhedron_to_json(const Polyhedron &p);
Polyhedron polyhedron_from_json(const Json &value, std::size_t dimension, const std::string &path);

Json problem_to_json(const Problem &p);
Problem problem_from_json(const Json &value);
Problem parse_problem(const std::string &text);
std::string serialize_problem(const Problem &p);

PolynomialSystem system_from_json(const Json &value);
PolynomialSystem parse_system(const std::string &text);
Json system_to_json(const PolynomialSystem &sys);

Json statistics_to_json(const RunStatistics &stats);
Json statistics_to_json(const BaselineStats &stats);
Json statistics_to_json(const PreprocessReport &report);

Json result_to_json(const Problem &p, const EnumerationResult &result, const PreprocessReport *report = nullptr);
Json result_to_json(const Problem &p, const BaselineResult &result);

/// Indented output with arrays of scalars kept on one line.
std::string pretty_json(const Json &value);

/// Parses JSON text, converting syntax errors into ParseError with line and column.
Json parse_json(const std::string &text);
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace tropsmt
