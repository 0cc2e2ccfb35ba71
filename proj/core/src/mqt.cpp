#include "modalkit/mqt.hpp"

#include <set>

namespace modalkit {

FpVector canonicalize(const FpVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!v[i].is_zero()) return v.scaled(v[i].inverse());
  }
  throw ZeroVector("cannot canonicalize the zero vector");
}

FpVector make_fp_vector(const PrimeField& field, const std::vector<std::int64_t>& coords) {
  std::vector<FieldElement> entries;
  entries.reserve(coords.size());
  for (auto c : coords) entries.push_back(field.make(c));
  return FpVector(field, std::move(entries));
}

FieldElement pair(const Effect& e, const State& s) {
  if (!(e.field() == s.field())) {
    throw FieldMismatch("effect over GF(" + std::to_string(e.field().modulus()) +
                        ") paired with state over GF(" + std::to_string(s.field().modulus()) +
                        ")");
  }
  if (e.dim() != s.dim()) {
    throw DimensionMismatch("effect dim " + std::to_string(e.dim()) + " vs state dim " +
                            std::to_string(s.dim()));
  }
  FieldElement acc = e.field().zero();
  for (std::size_t i = 0; i < e.dim(); ++i) acc += e.vector()[i] * s.vector()[i];
  return acc;
}

bool is_possible(const Effect& e, const State& s) { return !pair(e, s).is_zero(); }

Measurement::Measurement(std::string label, std::vector<Effect> effects,
                         std::vector<std::string> outcomes)
    : label_(std::move(label)), effects_(std::move(effects)), outcomes_(std::move(outcomes)) {
  if (effects_.empty()) throw InvalidMeasurement("measurement '" + label_ + "' has no effects");
  if (outcomes_.size() != effects_.size()) {
    throw InvalidMeasurement("measurement '" + label_ + "' has " +
                             std::to_string(effects_.size()) + " effects but " +
                             std::to_string(outcomes_.size()) + " outcome labels");
  }
  std::set<std::string> seen(outcomes_.begin(), outcomes_.end());
  if (seen.size() != outcomes_.size()) {
    throw InvalidMeasurement("measurement '" + label_ + "' has duplicate outcome labels");
  }
  std::vector<FpVector> vs;
  for (const auto& e : effects_) {
    if (!(e.field() == effects_.front().field())) {
      throw FieldMismatch("measurement '" + label_ + "' mixes fields");
    }
    vs.push_back(e.vector());
  }
  bool basis = false;
  try {
    basis = is_basis<PrimeField>(vs);
  } catch (const DimensionMismatch&) {
    basis = false;
  }
  if (!basis) throw InvalidMeasurement("effects of '" + label_ + "' are not a basis");
}

std::optional<Effect> Measurement::effect_for(const std::string& outcome) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i] == outcome) return effects_[i];
  }
  return std::nullopt;
}

std::vector<std::string> possible_outcomes(const Measurement& m, const State& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (is_possible(m.effects()[i], s)) out.push_back(m.outcome_labels()[i]);
  }
  return out;
}

State compose(const State& s1, const State& s2) { return State(tensor_vec(s1.vector(), s2.vector())); }

Effect joint_effect(const Effect& e1, const Effect& e2) {
  return Effect(tensor_vec(e1.vector(), e2.vector()));
}

Evolution::Evolution(FpMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw SingularEvolution("evolution matrix must be square");
  if (det(matrix_).is_zero()) throw SingularEvolution("evolution matrix is singular");
}

State evolve(const Evolution& t, const State& s) { return State(t.matrix() * s.vector()); }

namespace {

std::int64_t checked_power(std::int64_t p, std::int64_t d, std::int64_t cap) {
  if (p < 2 || !is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  if (d < 1) throw EnumerationTooLarge("dimension must be at least 1");
  std::int64_t n = 1;
  for (std::int64_t i = 0; i < d; ++i) {
    if (n > cap / p) {
      throw EnumerationTooLarge(std::to_string(p) + "^" + std::to_string(d) +
                                " exceeds the enumeration cap " + std::to_string(cap));
    }
    n *= p;
  }
  return n;
}

// Incremental independence test over GF(p) on raw residues.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::int64_t p) : p_(p) {}

  // Reduces v against the stored rows; returns true (and stores it) if independent.
  bool try_add(std::vector<std::int64_t> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::int64_t c = v[pivots_[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = ((v[j] - c * rows_[k][j]) % p_ + p_) % p_;
      }
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      std::int64_t inv = fp_make(p_, v[j]).inverse().value();
      for (auto& x : v) x = (x * inv) % p_;
      rows_.push_back(std::move(v));
      pivots_.push_back(j);
      return true;
    }
    return false;
  }
  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

 private:
  std::int64_t p_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::vector<Effect> enumerate_effects(std::int64_t p, std::int64_t d,
                                      const EnumerationLimits& limits) {
  const std::int64_t total = checked_power(p, d, limits.cap);
  const PrimeField field(p);
  std::vector<Effect> out;
  out.reserve(static_cast<std::size_t>((total - 1) / (p - 1)));
  std::vector<std::int64_t> digits(static_cast<std::size_t>(d));
  for (std::int64_t n = 1; n < total; ++n) {
    std::int64_t rest = n;
    for (auto& x : digits) {
      x = rest % p;
      rest /= p;
    }
    std::size_t first = 0;
    while (digits[first] == 0) ++first;
    if (digits[first] != 1) continue;
    out.emplace_back(field, digits);
  }
  return out;
}

BigInt count_measurements(std::int64_t p, std::int64_t d) {
  BigInt pd = 1;
  for (std::int64_t i = 0; i < d; ++i) pd *= p;
  BigInt gl = 1;
  BigInt pk = 1;
  for (std::int64_t k = 0; k < d; ++k) {
    gl *= pd - pk;
    pk *= p;
  }
  BigInt denom = 1;
  for (std::int64_t k = 1; k <= d; ++k) denom *= BigInt(p - 1) * k;
  return gl / denom;
}

std::vector<Measurement> enumerate_measurements(std::int64_t p, std::int64_t d,
                                                const EnumerationLimits& limits) {
  auto effects = enumerate_effects(p, d, limits);
  const BigInt expected = count_measurements(p, d);
  if (expected > limits.max_measurements) {
    throw EnumerationTooLarge("(" + std::to_string(p) + "," + std::to_string(d) + ") has " +
                              expected.str() + " measurements, above the limit " +
                              std::to_string(limits.max_measurements));
  }
  std::vector<std::vector<std::int64_t>> raw;
  raw.reserve(effects.size());
  for (const auto& e : effects) {
    std::vector<std::int64_t> v;
    for (const auto& x : e.vector().entries()) v.push_back(x.value());
    raw.push_back(std::move(v));
  }

  const auto dim = static_cast<std::size_t>(d);
  std::vector<Measurement> out;
  std::vector<std::size_t> chosen;
  EchelonBasis basis(p);
  auto emit = [&] {
    std::vector<Effect> es;
    std::vector<std::string> labels;
    for (auto i : chosen) {
      es.push_back(effects[i]);
      labels.push_back("e" + std::to_string(i));
    }
    out.emplace_back("M" + std::to_string(out.size()), std::move(es), std::move(labels));
  };
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == dim) {
      emit();
      return;
    }
    // Not enough effects left to complete the subset.
    for (std::size_t i = start; i + (dim - chosen.size()) <= effects.size(); ++i) {
      if (!basis.try_add(raw[i])) continue;
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
      basis.pop();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace modalkit
