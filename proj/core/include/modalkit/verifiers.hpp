#pragma once

// Exhaustive hidden-variable verifiers.
//
// Non-contextual colorings: every effect (vertex) is colored green or red
// independently of the measurement (edge) it appears in, and every edge must
// contain exactly green_count green vertices. With green_count = 1 this is the
// modal constraint on a measurement basis; the spin-1 triad constraint
// ("two red, one green") has the same form.
//
// Local models: a pair of deterministic response functions, one per
// subsystem, mapping each measurement to an outcome such that every joint
// outcome they predict is possible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modalkit/exactmath.hpp"
#include "modalkit/scenarios.hpp"

namespace modalkit {

class ColoringProblem {
 public:
  /// Edges name vertices by label. Throws InvalidProblem when an edge is empty,
  /// names an undeclared vertex or repeats one, vertex labels repeat, or
  /// green_count is zero or exceeds the smallest edge.
  ColoringProblem(std::vector<std::string> vertices, std::vector<std::vector<std::string>> edges,
                  std::size_t green_count);

  const std::vector<std::string>& vertices() const { return vertices_; }
  /// Edges as vertex indices.
  const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }
  std::size_t green_count() const { return green_count_; }
  /// Number of edges containing each vertex.
  std::vector<std::size_t> degrees() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::vector<std::size_t>> edges_;
  std::size_t green_count_;
};

/// The triangle {a,b,c} with edges X = {a,b}, Y = {c,a}, Z = {b,c}, one green per edge.
ColoringProblem mobit_triangle();

struct Coloring {
  /// Sorted vertex indices colored green.
  std::vector<std::size_t> green;
  friend auto operator<=>(const Coloring&, const Coloring&) = default;
};

/// True iff every edge has exactly green_count green vertices.
bool is_valid_coloring(const ColoringProblem& problem, const Coloring& coloring);

struct SearchLimits {
  /// Up to this many vertices the search enumerates every subset.
  std::size_t exhaustive_cap = 24;
  /// Up to this many vertices the search backtracks with edge propagation.
  std::size_t backtrack_cap = 512;
  /// Worker threads for exhaustive enumeration; 0 = hardware concurrency.
  unsigned workers = 0;
};

struct ColoringSearch {
  std::vector<Coloring> colorings;  // lexicographic order of green index lists
  std::size_t vertex_count = 0;     // candidates = 2^vertex_count
  bool exhaustive = false;          // true if every subset was tested
  /// "8" for small instances, "2^n" once 2^n no longer fits comfortably.
  std::string candidate_count() const;
};

/// All valid colorings. Throws InstanceTooLarge above backtrack_cap.
ColoringSearch find_colorings(const ColoringProblem& problem, const SearchLimits& limits = {});

/// Double-counting obstruction: summing greens over edges gives
/// green_count·|E| = Σ_{v green} deg(v), so if every degree is divisible by g
/// then g must divide green_count·|E|.
struct ParityWitness {
  std::size_t edge_count;
  std::size_t green_count;
  std::size_t degree_gcd;
  std::string explanation() const;
};

/// Returns a witness when green_count·|E| is not divisible by the gcd of the
/// vertex degrees, otherwise nullopt.
std::optional<ParityWitness> coloring_parity_certificate(const ColoringProblem& problem);

/// One outcome index per measurement and side.
struct LocalModel {
  std::vector<std::size_t> f1;  // per row measurement
  std::vector<std::size_t> f2;  // per column measurement
  friend auto operator<=>(const LocalModel&, const LocalModel&) = default;
};

struct LocalModelSearch {
  std::vector<LocalModel> models;
  BigInt candidates;
};

/// True iff every joint outcome predicted by the model is possible.
bool is_consistent(const PossibilityTable& table, const LocalModel& model);

/// All local deterministic models, in lexicographic order of (f1, f2).
/// Throws InstanceTooLarge when the candidate count exceeds max_candidates.
LocalModelSearch find_local_models(const PossibilityTable& table,
                                   std::uint64_t max_candidates = std::uint64_t{1} << 32);

/// "X=+ Y=- Z=+ | X=- Y=+ Z=+" style description.
std::string describe(const PossibilityTable& table, const LocalModel& model);

}  // namespace modalkit
