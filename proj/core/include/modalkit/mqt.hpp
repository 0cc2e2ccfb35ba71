#pragma once

// Modal quantum theory over GF(p): states are nonzero vectors, effects are
// nonzero covectors, and an effect is possible for a state iff the pairing is
// nonzero. Measurements are bases of the dual space.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modalkit/exactmath.hpp"
#include "modalkit/linalg.hpp"

namespace modalkit {

using FpVector = Vector<PrimeField>;
using FpMatrix = Matrix<PrimeField>;

/// λ·v with first nonzero coordinate 1. Throws ZeroVector.
FpVector canonicalize(const FpVector& v);

/// Builds a vector over GF(p) from integer coordinates (reduced mod p).
FpVector make_fp_vector(const PrimeField& field, const std::vector<std::int64_t>& coords);

namespace detail {
template <class Tag>
class Ray {
 public:
  /// Throws ZeroVector when v = 0.
  explicit Ray(FpVector v) : vector_(std::move(v)) {
    if (vector_.is_zero()) throw ZeroVector("zero vector is not a valid " + Tag::name());
  }
  Ray(const PrimeField& field, const std::vector<std::int64_t>& coords)
      : Ray(make_fp_vector(field, coords)) {}

  const FpVector& vector() const { return vector_; }
  const PrimeField& field() const { return vector_.field(); }
  std::size_t dim() const { return vector_.dim(); }

  bool is_canonical() const { return vector_ == modalkit::canonicalize(vector_); }
  Ray canonical() const { return Ray(modalkit::canonicalize(vector_)); }
  Ray scaled(const FieldElement& s) const { return Ray(vector_.scaled(s)); }

  /// Projective equality.
  friend bool operator==(const Ray& a, const Ray& b) {
    return a.dim() == b.dim() && a.field() == b.field() &&
           modalkit::canonicalize(a.vector_) == modalkit::canonicalize(b.vector_);
  }

 private:
  FpVector vector_;
};

struct StateTag {
  static std::string name() { return "state"; }
};
struct EffectTag {
  static std::string name() { return "effect"; }
};
}  // namespace detail

/// Nonzero vector |ψ⟩. Stored as given; equality is projective.
using State = detail::Ray<detail::StateTag>;
/// Nonzero covector ⟨e|. Stored as given; equality is projective.
using Effect = detail::Ray<detail::EffectTag>;

/// ⟨e|ψ⟩ = Σ e[i]·ψ[i]. Throws DimensionMismatch or FieldMismatch.
FieldElement pair(const Effect& e, const State& s);

/// True iff ⟨e|ψ⟩ ≠ 0.
bool is_possible(const Effect& e, const State& s);

/// A labelled basis of the dual space with one outcome label per effect.
class Measurement {
 public:
  /// Throws InvalidMeasurement if the effects are not a basis, the labels are
  /// not distinct, or the label count differs from the effect count.
  Measurement(std::string label, std::vector<Effect> effects, std::vector<std::string> outcomes);

  const std::string& label() const { return label_; }
  const std::vector<Effect>& effects() const { return effects_; }
  const std::vector<std::string>& outcome_labels() const { return outcomes_; }
  std::size_t size() const { return effects_.size(); }
  std::size_t dim() const { return effects_.front().dim(); }
  const PrimeField& field() const { return effects_.front().field(); }

  /// The effect for an outcome label, or nullopt.
  std::optional<Effect> effect_for(const std::string& outcome) const;

 private:
  std::string label_;
  std::vector<Effect> effects_;
  std::vector<std::string> outcomes_;
};

/// Labels of effects whose pairing with s is nonzero, in measurement order.
std::vector<std::string> possible_outcomes(const Measurement& m, const State& s);

/// |ψ₁⟩ ⊗ |ψ₂⟩ in the row-major chart.
State compose(const State& s1, const State& s2);
/// ⟨e₁| ⊗ ⟨e₂| in the row-major chart.
Effect joint_effect(const Effect& e1, const Effect& e2);

/// An invertible linear operator on the state space.
class Evolution {
 public:
  /// Throws NotSquare or SingularEvolution.
  explicit Evolution(FpMatrix matrix);
  const FpMatrix& matrix() const { return matrix_; }

 private:
  FpMatrix matrix_;
};

/// T|ψ⟩. Throws DimensionMismatch.
State evolve(const Evolution& t, const State& s);

/// Enumeration bound on p^d. Default 4096.
struct EnumerationLimits {
  static constexpr std::int64_t kDefaultCap = 4096;
  /// Maximum p^d.
  std::int64_t cap = kDefaultCap;
  /// Maximum number of measurements returned by enumerate_measurements.
  std::size_t max_measurements = 200'000;
};

/// All (p^d−1)/(p−1) canonical effects. Order: the coordinate tuple read as a
/// base-p numeral with the first coordinate least significant, ascending, so
/// for (2,2) the order is (1,0), (0,1), (1,1).
/// Throws EnumerationTooLarge when p^d exceeds the cap.
std::vector<Effect> enumerate_effects(std::int64_t p, std::int64_t d,
                                      const EnumerationLimits& limits = {});

/// All unordered d-subsets of canonical effects forming a basis, as
/// measurements labelled "M<k>" with outcomes "e<i>" (i = effect index).
/// Subsets are listed in lexicographic order of effect indices.
/// Throws EnumerationTooLarge when p^d exceeds the cap or the result would
/// exceed max_measurements.
std::vector<Measurement> enumerate_measurements(std::int64_t p, std::int64_t d,
                                                const EnumerationLimits& limits = {});

/// Number of unordered projective bases: |GL(d,p)| / ((p−1)^d · d!).
BigInt count_measurements(std::int64_t p, std::int64_t d);

}  // namespace modalkit
