#include "modalkit/io.hpp"

#include <algorithm>

namespace modalkit::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      auto v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  fail(path, "expected an integer");
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, const char* key) { return path + "." + key; }

PrimeField field_from(const Json& j, const std::string& path) {
  const auto p = as_int(field(j, path, "p"), dot(path, "p"));
  try {
    return PrimeField(p);
  } catch (const CompositeModulus& e) {
    fail(dot(path, "p"), e.what());
  }
}

FpVector coords_from(const PrimeField& f, const Json& arr, std::size_t dim, const std::string& path) {
  as_array(arr, path);
  if (arr.size() != dim) {
    fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(arr.size()));
  }
  std::vector<std::int64_t> coords;
  for (std::size_t i = 0; i < arr.size(); ++i) coords.push_back(as_int(arr[i], at(path, i)));
  return make_fp_vector(f, coords);
}

Json entries_of(const FpVector& v) {
  Json arr = Json::array();
  for (const auto& x : v.entries()) arr.push_back(x.value());
  return arr;
}

template <class R>
R ray_from_json(const Json& j, const std::string& path) {
  const PrimeField f = field_from(j, path);
  const auto dim = as_int(field(j, path, "dim"), dot(path, "dim"));
  if (dim < 1) fail(dot(path, "dim"), "must be positive");
  auto v = coords_from(f, field(j, path, "entries"), static_cast<std::size_t>(dim), dot(path, "entries"));
  try {
    return R(std::move(v));
  } catch (const ZeroVector& e) {
    fail(dot(path, "entries"), e.what());
  }
}

Json axis_json(const std::vector<MeasurementHeader>& hs) {
  Json arr = Json::array();
  for (const auto& h : hs) {
    for (const auto& o : h.outcomes) arr.push_back(Json{{"measurement", h.label}, {"outcome", o}});
  }
  return arr;
}

std::vector<MeasurementHeader> axis_from_json(const Json& arr, const std::string& path) {
  as_array(arr, path);
  std::vector<MeasurementHeader> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = at(path, i);
    auto m = as_string(field(arr[i], p, "measurement"), dot(p, "measurement"));
    auto o = as_string(field(arr[i], p, "outcome"), dot(p, "outcome"));
    if (out.empty() || out.back().label != m) {
      out.push_back({std::move(m), {}});
    }
    out.back().outcomes.push_back(std::move(o));
  }
  return out;
}

template <class Cell, class F>
JointTable<Cell> table_from_json(const Json& j, const std::string& path, F&& cell_from) {
  auto rows = axis_from_json(field(j, path, "rows"), dot(path, "rows"));
  auto cols = axis_from_json(field(j, path, "cols"), dot(path, "cols"));
  const auto cpath = dot(path, "cells");
  const Json& grid = as_array(field(j, path, "cells"), cpath);
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const Json& row = as_array(grid[r], at(cpath, r));
    for (std::size_t c = 0; c < row.size(); ++c) cells.push_back(cell_from(row[c], at(at(cpath, r), c)));
  }
  try {
    JointTable<Cell> t(std::move(rows), std::move(cols), std::move(cells));
    for (std::size_t r = 0; r < grid.size(); ++r) {
      if (grid[r].size() != t.n_cols()) fail(at(cpath, r), "row length differs from the column count");
    }
    return t;
  } catch (const MalformedTable& e) {
    fail(path, e.what());
  }
}

template <class Cell, class F>
Json table_json(const JointTable<Cell>& t, F&& cell_json) {
  Json grid = Json::array();
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < t.n_cols(); ++c) row.push_back(cell_json(t.at(r, c)));
    grid.push_back(std::move(row));
  }
  return Json{{"rows", axis_json(t.row_headers())},
              {"cols", axis_json(t.col_headers())},
              {"cells", std::move(grid)}};
}

}  // namespace

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": invalid JSON");
  }
}

Json to_json(const Rational& x) { return x.to_string(); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(path, "expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Json to_json(const QVector& v) {
  Json arr = Json::array();
  for (const auto& x : v.entries()) arr.push_back(x.to_string());
  return arr;
}

Json to_json(const QMatrix& m) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(to_json(m.row(i)));
  return arr;
}

Json to_json(const State& s) {
  return Json{{"p", s.field().modulus()}, {"dim", s.dim()}, {"entries", entries_of(s.vector())}};
}

Json to_json(const Effect& e) {
  return Json{{"p", e.field().modulus()}, {"dim", e.dim()}, {"entries", entries_of(e.vector())}};
}

State state_from_json(const Json& j, const std::string& path) { return ray_from_json<State>(j, path); }
Effect effect_from_json(const Json& j, const std::string& path) { return ray_from_json<Effect>(j, path); }

Json to_json(const Measurement& m) {
  Json effects = Json::array();
  for (const auto& e : m.effects()) effects.push_back(entries_of(e.vector()));
  return Json{{"p", m.field().modulus()},
              {"dim", m.dim()},
              {"label", m.label()},
              {"outcomes", m.outcome_labels()},
              {"effects", std::move(effects)}};
}

Measurement measurement_from_json(const Json& j, const std::string& path) {
  const PrimeField f = field_from(j, path);
  const auto dim = as_int(field(j, path, "dim"), dot(path, "dim"));
  if (dim < 1) fail(dot(path, "dim"), "must be positive");
  auto label = as_string(field(j, path, "label"), dot(path, "label"));
  const auto opath = dot(path, "outcomes");
  const Json& outs = as_array(field(j, path, "outcomes"), opath);
  std::vector<std::string> outcomes;
  for (std::size_t i = 0; i < outs.size(); ++i) outcomes.push_back(as_string(outs[i], at(opath, i)));
  const auto epath = dot(path, "effects");
  const Json& effs = as_array(field(j, path, "effects"), epath);
  std::vector<Effect> effects;
  for (std::size_t i = 0; i < effs.size(); ++i) {
    auto v = coords_from(f, effs[i], static_cast<std::size_t>(dim), at(epath, i));
    try {
      effects.emplace_back(std::move(v));
    } catch (const ZeroVector& e) {
      fail(at(epath, i), e.what());
    }
  }
  try {
    return Measurement(std::move(label), std::move(effects), std::move(outcomes));
  } catch (const InvalidMeasurement& e) {
    fail(path, e.what());
  }
}

Json to_json(const PossibilityTable& t) {
  return table_json(t, [](bool b) { return Json(b); });
}

PossibilityTable possibility_from_json(const Json& j, const std::string& path) {
  return table_from_json<bool>(j, path, [](const Json& c, const std::string& p) {
    if (!c.is_boolean()) fail(p, "expected true or false");
    return c.get<bool>();
  });
}

Json to_json(const ProbabilityTable& t) {
  return table_json(t, [](const Rational& x) { return to_json(x); });
}

ProbabilityTable probability_from_json(const Json& j, const std::string& path) {
  return table_from_json<Rational>(
      j, path, [](const Json& c, const std::string& p) { return rational_from_json(c, p); });
}

Json to_json(const SymbolicTable& t) {
  Json j = table_json(t.cells, [&](const SymbolicCell& c) { return Json(c.to_string(t.parameter_names)); });
  j["parameters"] = t.parameter_names;
  return j;
}

Json to_json(const ColoringProblem& p) {
  Json edges = Json::array();
  for (const auto& e : p.edges()) {
    Json edge = Json::array();
    for (auto v : e) edge.push_back(p.vertices()[v]);
    edges.push_back(std::move(edge));
  }
  return Json{{"vertices", p.vertices()}, {"edges", std::move(edges)}, {"green_count", p.green_count()}};
}

ColoringProblem coloring_problem_from_json(const Json& j, const std::string& path) {
  const auto vpath = dot(path, "vertices");
  const Json& vs = as_array(field(j, path, "vertices"), vpath);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(as_string(vs[i], at(vpath, i)));
  const auto epath = dot(path, "edges");
  const Json& es = as_array(field(j, path, "edges"), epath);
  std::vector<std::vector<std::string>> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Json& e = as_array(es[i], at(epath, i));
    std::vector<std::string> edge;
    for (std::size_t k = 0; k < e.size(); ++k) {
      auto label = as_string(e[k], at(at(epath, i), k));
      if (std::find(vertices.begin(), vertices.end(), label) == vertices.end()) {
        fail(at(at(epath, i), k), "unknown vertex '" + label + "'");
      }
      edge.push_back(std::move(label));
    }
    edges.push_back(std::move(edge));
  }
  const auto g = as_int(field(j, path, "green_count"), dot(path, "green_count"));
  if (g < 1) fail(dot(path, "green_count"), "must be positive");
  try {
    return ColoringProblem(std::move(vertices), std::move(edges), static_cast<std::size_t>(g));
  } catch (const InvalidProblem& e) {
    fail(path, e.what());
  }
}

Json to_json(const ColoringProblem& p, const ColoringSearch& s) {
  Json colorings = Json::array();
  for (const auto& c : s.colorings) {
    Json green = Json::array();
    for (auto v : c.green) green.push_back(p.vertices()[v]);
    colorings.push_back(std::move(green));
  }
  Json out{{"candidates", s.candidate_count()},
           {"exhaustive", s.exhaustive},
           {"count", s.colorings.size()},
           {"colorings", std::move(colorings)}};
  auto w = coloring_parity_certificate(p);
  out["parity_certificate"] =
      w ? Json{{"edge_count", w->edge_count},
               {"green_count", w->green_count},
               {"degree_gcd", w->degree_gcd},
               {"explanation", w->explanation()}}
        : Json(nullptr);
  return out;
}

Json to_json(const PossibilityTable& t, const LocalModel& m) {
  Json f1 = Json::object(), f2 = Json::object();
  for (std::size_t a = 0; a < m.f1.size(); ++a) {
    f1[t.row_headers()[a].label] = t.row_headers()[a].outcomes[m.f1[a]];
  }
  for (std::size_t b = 0; b < m.f2.size(); ++b) {
    f2[t.col_headers()[b].label] = t.col_headers()[b].outcomes[m.f2[b]];
  }
  return Json{{"f1", std::move(f1)}, {"f2", std::move(f2)}};
}

Json to_json(const CellId& id) {
  return Json{{"row_measurement", id.row_measurement},
              {"row_outcome", id.row_outcome},
              {"col_measurement", id.col_measurement},
              {"col_outcome", id.col_outcome}};
}

}  // namespace modalkit::io
