#include "modalkit/scenarios.hpp"

#include <algorithm>

namespace modalkit {

Effect effect_a(const PrimeField& field) { return Effect(field, {1, 0}); }
Effect effect_b(const PrimeField& field) { return Effect(field, {0, 1}); }
Effect effect_c(const PrimeField& field) { return Effect(field, {1, 1}); }
State ket0(const PrimeField& field) { return State(field, {1, 0}); }
State ket1(const PrimeField& field) { return State(field, {0, 1}); }

MobitBases mobit_bases(std::int64_t p) {
  const PrimeField field(p);
  const auto a = effect_a(field), b = effect_b(field), c = effect_c(field);
  return MobitBases{
      Measurement("X", {a, b}, {kPlus, kMinus}),
      Measurement("Y", {c, a}, {kPlus, kMinus}),
      Measurement("Z", {b, c}, {kPlus, kMinus}),
  };
}

State singlet(std::int64_t p) {
  const PrimeField field(p);
  auto v = tensor_vec(ket0(field).vector(), ket1(field).vector()) -
           tensor_vec(ket1(field).vector(), ket0(field).vector());
  return State(std::move(v));
}

MobitScenario mobit_scenario(std::int64_t p) {
  return MobitScenario{PrimeField(p), mobit_bases(p), singlet(p)};
}

std::vector<MeasurementHeader> headers_of(std::span<const Measurement> ms) {
  std::vector<MeasurementHeader> out;
  for (const auto& m : ms) out.push_back({m.label(), m.outcome_labels()});
  return out;
}

PossibilityTable possibility_table(const State& s, std::span<const Measurement> rows,
                                   std::span<const Measurement> cols) {
  if (rows.empty() || cols.empty()) throw DimensionMismatch("empty measurement list");
  const std::size_t d1 = rows.front().dim();
  const std::size_t d2 = cols.front().dim();
  auto same_dim = [](std::span<const Measurement> ms, std::size_t d) {
    return std::all_of(ms.begin(), ms.end(), [d](const Measurement& m) { return m.dim() == d; });
  };
  if (!same_dim(rows, d1) || !same_dim(cols, d2) || d1 * d2 != s.dim()) {
    throw DimensionMismatch("state of dim " + std::to_string(s.dim()) +
                            " does not split as the measured subsystems");
  }
  std::vector<bool> cells;
  for (const auto& a : rows) {
    for (const auto& ea : a.effects()) {
      for (const auto& b : cols) {
        for (const auto& eb : b.effects()) cells.push_back(is_possible(joint_effect(ea, eb), s));
      }
    }
  }
  return PossibilityTable(headers_of(rows), headers_of(cols), std::move(cells));
}

PossibilityTable singlet_table(std::int64_t p) {
  auto ms = mobit_bases(p).all();
  return possibility_table(singlet(p), ms, ms);
}

std::string render_possibility(const PossibilityTable& t) {
  return render_grid(t.row_headers(), t.col_headers(),
                     [&](std::size_t r, std::size_t c) { return t.at(r, c) ? "#" : "0"; });
}

std::size_t count_impossible(const PossibilityTable& t) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) n += t.flat(i) ? 0 : 1;
  return n;
}

}  // namespace modalkit
