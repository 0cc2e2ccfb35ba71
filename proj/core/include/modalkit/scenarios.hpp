#pragma once

// The mobit X/Y/Z bases, the singlet state, and bipartite possibility tables.
//
// Chart: |0⟩ = (1,0), |1⟩ = (0,1), ⟨a| = (1,0), ⟨b| = (0,1), ⟨c| = ⟨a| + ⟨b| = (1,1).
//   X: + = a, − = b     Y: + = c, − = a     Z: + = b, − = c
// Outcome labels are "+" and "-".

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "modalkit/mqt.hpp"
#include "modalkit/table.hpp"

namespace modalkit {

inline constexpr const char* kPlus = "+";
inline constexpr const char* kMinus = "-";

struct MobitBases {
  Measurement x;
  Measurement y;
  Measurement z;

  std::vector<Measurement> all() const { return {x, y, z}; }
};

Effect effect_a(const PrimeField& field);
Effect effect_b(const PrimeField& field);
Effect effect_c(const PrimeField& field);
State ket0(const PrimeField& field);
State ket1(const PrimeField& field);

/// Throws CompositeModulus.
MobitBases mobit_bases(std::int64_t p);

/// |S⟩ = |0,1⟩ − |1,0⟩ = (0, 1, p−1, 0). Throws CompositeModulus.
State singlet(std::int64_t p);

/// The scenario bundle: field, the three bases, and the singlet.
struct MobitScenario {
  PrimeField field;
  MobitBases bases;
  State singlet_state;
};
MobitScenario mobit_scenario(std::int64_t p);

/// true = possible.
using PossibilityTable = JointTable<bool>;

std::vector<MeasurementHeader> headers_of(std::span<const Measurement> ms);

/// cell[(A,a),(B,b)] = is_possible(⟨e_{A,a}| ⊗ ⟨e_{B,b}|, s). The composite
/// dimension must equal the product of the row and column measurement
/// dimensions. Throws DimensionMismatch.
PossibilityTable possibility_table(const State& s, std::span<const Measurement> rows,
                                   std::span<const Measurement> cols);

/// The singlet table over {X,Y,Z} × {X,Y,Z}.
PossibilityTable singlet_table(std::int64_t p);

/// Text grid with "0" for impossible and "#" for possible cells.
std::string render_possibility(const PossibilityTable& t);

/// Number of impossible cells.
std::size_t count_impossible(const PossibilityTable& t);

}  // namespace modalkit
