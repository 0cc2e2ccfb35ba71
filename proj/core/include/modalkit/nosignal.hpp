#pragma once

// Probability assignments with the structure of a possibility table.
//
// For a bipartite possibility table we look for P(a,b|A,B) with
//   I   0 ≤ P ≤ 1 and Σ_{a,b} P(a,b|A,B) = 1 for every pair (A,B);
//   II  no signaling: Σ_a P(a,b|A,B) independent of A, Σ_b P(a,b|A,B) independent of B;
//   III P = 0 on impossible cells;
//   IV  P > 0 on possible cells.
// The equalities of I–III are solved exactly; I's bounds and IV are then
// decided by exact linear programming over the solution family.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modalkit/linalg.hpp"
#include "modalkit/scenarios.hpp"
#include "modalkit/simplex.hpp"
#include "modalkit/table.hpp"

namespace modalkit {

using QVector = Vector<RationalField>;
using QMatrix = Matrix<RationalField>;
using QSpace = AffineSolutionSpace<RationalField>;
using ProbabilityTable = JointTable<Rational>;

/// Variables are the table cells in flat row-major order.
struct NoSignalingSystem {
  PossibilityTable source;
  std::vector<CellId> cells;
  QMatrix equalities;
  QVector rhs;
  std::size_t normalization_count = 0;
  std::size_t marginal_count = 0;
  std::size_t zero_count = 0;
  std::vector<std::size_t> zero_cells;      // flat indices of impossible cells
  std::vector<std::size_t> positive_cells;  // flat indices of possible cells

  std::size_t variable_count() const { return cells.size(); }
  std::size_t equation_count() const { return equalities.rows(); }
  std::size_t rank() const;
};

/// Normalization per measurement pair, marginal consistency of every
/// measurement against the first (reference) measurement of the other side,
/// and one zero equation per impossible cell. Throws MalformedTable.
NoSignalingSystem build_system(const PossibilityTable& table);

/// Exact solution family. Throws Infeasible when the equalities are inconsistent.
QSpace solve(const NoSignalingSystem& system);

/// An affine expression constant + Σ coefficients[k]·parameter_k.
struct SymbolicCell {
  Rational constant;
  std::vector<Rational> coefficients;

  Rational evaluate(std::span<const Rational> params) const;
  bool is_constant() const;
  /// "1/2+q", "-q-r", "0" style; names must cover every coefficient.
  std::string to_string(std::span<const std::string> names) const;
  friend bool operator==(const SymbolicCell&, const SymbolicCell&) = default;
};

/// Coordinate i of the space as an affine form in the space's own parameters.
SymbolicCell cell_form(const QSpace& space, std::size_t i);

/// Defines parameter `name` := P(cell) − offset.
struct Anchor {
  CellId cell;
  Rational offset;
  std::string name;
};

/// q := P(+,+|X,Y) − 1/2, r := P(+,+|Y,Z) − 1/2, s := P(+,+|Z,X) − 1/2.
std::vector<Anchor> mobit_anchors();

struct SymbolicTable {
  std::vector<std::string> parameter_names;
  JointTable<SymbolicCell> cells;
};

/// Re-expresses every cell in the anchor parameters. Requires one anchor per
/// free parameter with an invertible anchor map; throws DegenerateAnchors
/// otherwise (or when an anchor names a missing cell).
SymbolicTable symbolic_cells(const NoSignalingSystem& system, const QSpace& space,
                             std::span<const Anchor> anchors);

std::string render_symbolic(const SymbolicTable& table);

struct LpResult {
  LpStatus status = LpStatus::Optimal;  // Optimal or Unbounded
  Rational value;                       // optimum (Optimal only)
  std::vector<Rational> point;          // parameters of an optimal / feasible vertex
  std::vector<Rational> multipliers;    // one per coordinate, ≥ 0 (Optimal only)
  std::vector<Rational> ray;            // improving direction (Unbounded only)
  std::size_t pivots = 0;
};

/// Maximizes the objective over {parameters : every coordinate ≥ 0}.
/// Throws InfeasibleRegion when that set is empty.
LpResult lp_maximize(const QSpace& space, const SymbolicCell& objective);

/// Independent re-check of an LP result: the point is feasible and attains the
/// value, and the multipliers form a dual certificate (y ≥ 0, Σ yᵢ·∇cellᵢ = −∇objective,
/// objective constant + Σ yᵢ·cellᵢ(0) = value), so no improving direction exists.
/// For Unbounded results, checks the ray instead.
bool verify_lp_certificate(const QSpace& space, const SymbolicCell& objective,
                           const LpResult& result);

/// Positive cells whose exact maximum over the feasible region is 0, in table
/// order. Independent LPs run concurrently. Propagates InfeasibleRegion.
std::vector<CellId> forced_zero_cells(const NoSignalingSystem& system, const QSpace& space);

struct RequirementIvVerdict {
  bool satisfiable = false;
  std::vector<CellId> witnesses;  // forced-zero possible cells when violated
  /// A table meeting I–IV (satisfiable only).
  std::optional<ProbabilityTable> example;
};

RequirementIvVerdict requirement_iv_verdict(const NoSignalingSystem& system, const QSpace& space);

/// The table obtained by setting the forced cells to zero. Throws NotUnique
/// if parameters remain free, Infeasible if the zeros are inconsistent.
ProbabilityTable relaxed_unique_table(const NoSignalingSystem& system, const QSpace& space,
                                      std::span<const CellId> forced);

/// Requirements I–III, checked directly on a table.
struct RequirementReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
RequirementReport check_requirements(const ProbabilityTable& table,
                                     const PossibilityTable* possibility = nullptr);

std::string render_probability(const ProbabilityTable& table);

/// Σ over the four blocks of ±E(A,B), E = Σ σ(a)σ(b)P(a,b) with σ(first
/// outcome) = +1 and σ(second) = −1. negative = (i, j) puts the minus sign on
/// (rows[i], cols[j]). Throws IncompleteBlock for missing or non-binary measurements.
Rational chsh(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
              const std::array<std::string, 2>& cols, std::array<std::size_t, 2> negative);

/// Largest |CHSH| over the four sign patterns.
Rational max_chsh(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
                  const std::array<std::string, 2>& cols);

/// True iff some sign pattern reaches |CHSH| = 4.
bool pr_box_check(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
                  const std::array<std::string, 2>& cols);

/// The restriction of a table to the named measurements.
ProbabilityTable restrict_table(const ProbabilityTable& table, std::span<const std::string> rows,
                                std::span<const std::string> cols);

}  // namespace modalkit
