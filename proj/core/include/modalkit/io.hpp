#pragma once

// JSON schemas for instances and results. Output uses insertion-ordered
// objects so identical inputs serialize byte-identically.
//
//   Rational            "num/den" ("num" when den = 1)
//   QVector / QMatrix   arrays of rational strings
//   State / Effect      {"p": 2, "dim": 2, "entries": [1, 0]}
//   Measurement         {"p": 2, "dim": 2, "label": "X", "outcomes": ["+", "-"],
//                        "effects": [[1, 0], [0, 1]]}
//   PossibilityTable    {"rows": [{"measurement": "X", "outcome": "+"}, ...],
//                        "cols": [...], "cells": [[false, true, ...], ...]}
//   ProbabilityTable    same, cells are rational strings
//   ColoringProblem     {"vertices": [...], "edges": [[...], ...], "green_count": 1}

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "modalkit/mqt.hpp"
#include "modalkit/nosignal.hpp"
#include "modalkit/scenarios.hpp"
#include "modalkit/verifiers.hpp"

namespace modalkit::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON document; syntax errors become ParseError with line and column.
Json parse_document(std::string_view text);

Json to_json(const Rational& x);
Rational rational_from_json(const Json& j, const std::string& path = "$");

Json to_json(const QVector& v);
Json to_json(const QMatrix& m);

Json to_json(const State& s);
Json to_json(const Effect& e);
/// Errors name the offending field ("$.entries[1]: ...").
State state_from_json(const Json& j, const std::string& path = "$");
Effect effect_from_json(const Json& j, const std::string& path = "$");

Json to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j, const std::string& path = "$");

Json to_json(const PossibilityTable& t);
PossibilityTable possibility_from_json(const Json& j, const std::string& path = "$");

Json to_json(const ProbabilityTable& t);
ProbabilityTable probability_from_json(const Json& j, const std::string& path = "$");

Json to_json(const SymbolicTable& t);

Json to_json(const ColoringProblem& p);
ColoringProblem coloring_problem_from_json(const Json& j, const std::string& path = "$");
Json to_json(const ColoringProblem& p, const ColoringSearch& s);

Json to_json(const PossibilityTable& t, const LocalModel& m);

Json to_json(const CellId& id);

}  // namespace modalkit::io
