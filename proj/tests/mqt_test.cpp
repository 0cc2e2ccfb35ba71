#include <random>

#include <gtest/gtest.h>

#include "modalkit/mqt.hpp"
#include "modalkit/scenarios.hpp"
#include "oracles.hpp"

using namespace modalkit;

namespace {

FpVector v(std::int64_t p, std::vector<std::int64_t> xs) { return make_fp_vector(PrimeField(p), xs); }

Measurement measurement(std::int64_t p, std::vector<std::vector<std::int64_t>> effects) {
  std::vector<Effect> es;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < effects.size(); ++i) {
    es.emplace_back(PrimeField(p), effects[i]);
    labels.push_back("o" + std::to_string(i));
  }
  return Measurement("M", es, labels);
}

// Number of d-subsets of the canonical effects with nonzero cofactor determinant.
std::size_t brute_measurement_count(std::int64_t p, std::int64_t d) {
  const auto effects = enumerate_effects(p, d);
  const PrimeField f(p);
  std::size_t n = 0;
  for (const auto& idx : oracle::subsets(effects.size(), static_cast<std::size_t>(d))) {
    oracle::Grid<FieldElement> g;
    for (auto i : idx) {
      const auto& vec = effects[i].vector();
      g.emplace_back(vec.entries().begin(), vec.entries().end());
    }
    if (!oracle::cofactor_det(g, f.zero()).is_zero()) ++n;
  }
  return n;
}

}  // namespace

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(v(3, {0, 1})), v(3, {0, 1}));
  EXPECT_EQ(canonicalize(v(3, {2, 1})), v(3, {1, 2}));
  EXPECT_THROW(canonicalize(v(3, {0, 0})), ZeroVector);
}

TEST(Canonicalize, ScalarInvariantOverGf5) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<std::int64_t> d(0, 4);
  const PrimeField f(5);
  for (int i = 0; i < 30; ++i) {
    auto x = v(5, {d(rng), d(rng), d(rng)});
    if (x.is_zero()) continue;
    const auto c = canonicalize(x);
    EXPECT_EQ(canonicalize(c), c);
    for (std::int64_t l = 1; l < 5; ++l) EXPECT_EQ(canonicalize(x.scaled(f.make(l))), c);
  }
}

TEST(Rays, RejectZeroVectors) {
  EXPECT_THROW(State(PrimeField(2), {0, 0}), ZeroVector);
  EXPECT_THROW(Effect(PrimeField(5), {0, 0, 0}), ZeroVector);
}

TEST(Rays, ProjectiveEquality) {
  const State s(PrimeField(5), {2, 4});
  EXPECT_EQ(s, State(PrimeField(5), {1, 2}));
  EXPECT_FALSE(s.is_canonical());
  EXPECT_TRUE(s.canonical().is_canonical());
  EXPECT_NE(s, State(PrimeField(5), {1, 3}));
  EXPECT_NE(State(PrimeField(5), {1, 0}), State(PrimeField(7), {1, 0}));
}

TEST(Pair, Examples) {
  const PrimeField f(2);
  EXPECT_EQ(pair(effect_a(f), ket0(f)).value(), 1);
  EXPECT_EQ(pair(effect_a(f), ket1(f)).value(), 0);
  EXPECT_EQ(pair(effect_c(f), ket1(f)).value(), 1);
}

TEST(Pair, Errors) {
  EXPECT_THROW(pair(Effect(PrimeField(2), {1, 0}), State(PrimeField(2), {1, 0, 0})),
               DimensionMismatch);
  EXPECT_THROW(pair(Effect(PrimeField(2), {1, 0}), State(PrimeField(3), {1, 0})), FieldMismatch);
}

TEST(IsPossible, Examples) {
  const PrimeField f(2);
  EXPECT_TRUE(is_possible(effect_a(f), ket0(f)));
  EXPECT_FALSE(is_possible(effect_a(f), ket1(f)));
}

TEST(IsPossible, InvariantUnderRescalingOverGf5) {
  const PrimeField f(5);
  const Effect e(f, {1, 3});
  for (const auto& coords : std::vector<std::vector<std::int64_t>>{{2, 1}, {3, 4}, {0, 1}}) {
    const State s(f, coords);
    for (std::int64_t l = 1; l < 5; ++l) {
      for (std::int64_t m = 1; m < 5; ++m) {
        EXPECT_EQ(is_possible(e.scaled(f.make(l)), s.scaled(f.make(m))), is_possible(e, s));
      }
    }
  }
}

TEST(PossibleOutcomes, Examples) {
  const auto bases = mobit_bases(2);
  const PrimeField f(2);
  EXPECT_EQ(possible_outcomes(bases.x, ket0(f)), (std::vector<std::string>{"+"}));
  const State plus(f, {1, 1});
  EXPECT_EQ(possible_outcomes(bases.x, plus), (std::vector<std::string>{"+", "-"}));
}

TEST(Measurement, Validation) {
  const PrimeField f(2);
  EXPECT_THROW(measurement(2, {{1, 0}, {1, 0}}), InvalidMeasurement);
  EXPECT_THROW(measurement(2, {{1, 0}}), InvalidMeasurement);
  EXPECT_THROW(Measurement("M", {effect_a(f), effect_b(f)}, {"x", "x"}), InvalidMeasurement);
  EXPECT_THROW(Measurement("M", {effect_a(f), effect_b(f)}, {"x"}), InvalidMeasurement);
  EXPECT_THROW(Measurement("M", {}, {}), InvalidMeasurement);
  EXPECT_THROW(Measurement("M", {effect_a(f), Effect(PrimeField(3), {0, 1})}, {"x", "y"}),
               FieldMismatch);
  const Measurement ok("M", {effect_a(f), effect_b(f)}, {"x", "y"});
  EXPECT_EQ(ok.effect_for("y"), effect_b(f));
  EXPECT_FALSE(ok.effect_for("z"));
}

TEST(Compose, Examples) {
  const PrimeField f(2);
  EXPECT_EQ(compose(ket0(f), ket1(f)).vector(), v(2, {0, 1, 0, 0}));
  EXPECT_THROW(compose(ket0(f), ket0(PrimeField(3))), FieldMismatch);
  EXPECT_THROW(joint_effect(effect_a(f), effect_a(PrimeField(3))), FieldMismatch);
}

TEST(Compose, SameEffectOnSingletIsImpossible) {
  const PrimeField f(2);
  EXPECT_TRUE(pair(joint_effect(effect_a(f), effect_a(f)), singlet(2)).is_zero());
}

TEST(Compose, PairingFactorizesOverGf3) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::int64_t> d(0, 2);
  const PrimeField f(3);
  auto nonzero = [&] {
    std::vector<std::int64_t> c{d(rng), d(rng)};
    if (c[0] == 0 && c[1] == 0) c[0] = 1;
    return c;
  };
  for (int i = 0; i < 30; ++i) {
    const Effect e1(f, nonzero()), e2(f, nonzero());
    const State s1(f, nonzero()), s2(f, nonzero());
    EXPECT_EQ(pair(joint_effect(e1, e2), compose(s1, s2)), pair(e1, s1) * pair(e2, s2));
  }
}

TEST(Evolve, Examples) {
  const PrimeField f(2);
  const State s(f, {1, 1});
  EXPECT_EQ(evolve(Evolution(FpMatrix::identity(f, 2)), s).vector(), s.vector());
  const Evolution swap(FpMatrix(f, {{f.zero(), f.one()}, {f.one(), f.zero()}}));
  EXPECT_EQ(evolve(swap, ket0(f)).vector(), ket1(f).vector());
  const FpMatrix shear(f, {{f.one(), f.one()}, {f.zero(), f.one()}});
  EXPECT_EQ(shear * shear, FpMatrix::identity(f, 2));
  const Evolution t(shear);
  for (const auto& st : {ket0(f), ket1(f), s}) EXPECT_EQ(evolve(t, evolve(t, st)).vector(), st.vector());
}

TEST(Evolve, SingularRejected) {
  const PrimeField f(3);
  EXPECT_THROW(Evolution(FpMatrix(f, {{f.make(1), f.make(2)}, {f.make(2), f.make(1)}})),
               SingularEvolution);
  EXPECT_THROW(Evolution(FpMatrix(f, {{f.make(1), f.make(2)}})), SingularEvolution);
  EXPECT_THROW(evolve(Evolution(FpMatrix::identity(f, 3)), State(f, {1, 0})), DimensionMismatch);
}

TEST(EnumerateEffects, Examples) {
  const auto e = enumerate_effects(2, 2);
  ASSERT_EQ(e.size(), 3U);
  EXPECT_EQ(e[0].vector(), v(2, {1, 0}));
  EXPECT_EQ(e[1].vector(), v(2, {0, 1}));
  EXPECT_EQ(e[2].vector(), v(2, {1, 1}));
  EXPECT_EQ(enumerate_effects(3, 2).size(), 4U);
  EXPECT_EQ(enumerate_effects(2, 3).size(), 7U);
}

TEST(EnumerateEffects, CanonicalAndDistinct) {
  const auto e = enumerate_effects(5, 3);
  ASSERT_EQ(e.size(), 31U);
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_TRUE(e[i].is_canonical());
    for (std::size_t j = i + 1; j < e.size(); ++j) EXPECT_NE(e[i], e[j]);
  }
}

TEST(EnumerateEffects, Errors) {
  EXPECT_THROW(enumerate_effects(2, 13), EnumerationTooLarge);
  EXPECT_THROW(enumerate_effects(4, 2), CompositeModulus);
  EXPECT_THROW(enumerate_effects(2, 0), EnumerationTooLarge);
  EnumerationLimits small;
  small.cap = 8;
  EXPECT_NO_THROW(enumerate_effects(2, 3, small));
  EXPECT_THROW(enumerate_effects(3, 2, small), EnumerationTooLarge);
}

TEST(EnumerateMeasurements, Examples) {
  const auto m22 = enumerate_measurements(2, 2);
  EXPECT_EQ(m22.size(), 3U);
  for (const auto& m : m22) {
    EXPECT_EQ(m.size(), 2U);
    EXPECT_EQ(m.label().front(), 'M');
  }
  EXPECT_EQ(enumerate_measurements(3, 2).size(), 6U);
  EXPECT_EQ(enumerate_measurements(2, 3).size(), brute_measurement_count(2, 3));
  EXPECT_EQ(enumerate_measurements(2, 3).size(), 28U);
}

TEST(EnumerateMeasurements, MatchesDetFilterAndClosedForm) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 3}, {2, 4}}) {
    SCOPED_TRACE(std::to_string(p) + "," + std::to_string(d));
    const auto ms = enumerate_measurements(p, d);
    EXPECT_EQ(ms.size(), brute_measurement_count(p, d));
    EXPECT_EQ(BigInt(ms.size()), count_measurements(p, d));
  }
}

TEST(EnumerateMeasurements, TooMany) {
  EnumerationLimits limits;
  limits.max_measurements = 10;
  EXPECT_THROW(enumerate_measurements(2, 3, limits), EnumerationTooLarge);
  EXPECT_EQ(count_measurements(2, 3), BigInt(28));
}

// ---- properties ----

TEST(MqtProperties, PossibilityIsProjective) {
  for (unsigned seed = 0; seed < 120; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(seed);
    const std::int64_t primes[] = {2, 3, 5, 7, 11};
    const std::int64_t p = primes[seed % 5];
    const PrimeField f(p);
    const std::size_t dim = 2 + seed % 3;
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    std::uniform_int_distribution<std::int64_t> nz(1, p - 1);
    auto random_coords = [&] {
      std::vector<std::int64_t> c(dim);
      for (auto& x : c) x = d(rng);
      c[seed % dim] = nz(rng);
      return c;
    };
    const Effect e(f, random_coords());
    const State s(f, random_coords());
    const auto lambda = f.make(nz(rng));
    const auto mu = f.make(nz(rng));
    ASSERT_EQ(is_possible(e.scaled(lambda), s.scaled(mu)), is_possible(e, s));
    ASSERT_EQ(pair(e.scaled(lambda), s.scaled(mu)), lambda * mu * pair(e, s));
    ASSERT_EQ(is_possible(e.canonical(), s.canonical()), is_possible(e, s));
  }
}

TEST(MqtProperties, EveryMeasurementHasAPossibleOutcome) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(500 + seed);
    const std::int64_t p = seed % 2 == 0 ? 3 : 5;
    const auto ms = enumerate_measurements(p, 2);
    const PrimeField f(p);
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    std::vector<std::int64_t> c{d(rng), d(rng)};
    if (c[0] == 0 && c[1] == 0) c[1] = 1;
    const State s(f, c);
    const auto& m = ms[seed % ms.size()];
    ASSERT_FALSE(possible_outcomes(m, s).empty());
  }
}

TEST(MqtProperties, PairingFactorizes) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(1500 + seed);
    const std::int64_t p = seed % 3 == 0 ? 2 : (seed % 3 == 1 ? 3 : 7);
    const PrimeField f(p);
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    auto coords = [&](std::size_t n) {
      std::vector<std::int64_t> c(n);
      for (auto& x : c) x = d(rng);
      c[0] = 1;
      return c;
    };
    const std::size_t d1 = 2 + seed % 2;
    const std::size_t d2 = 2 + (seed / 2) % 2;
    const Effect e1(f, coords(d1)), e2(f, coords(d2));
    const State s1(f, coords(d1)), s2(f, coords(d2));
    ASSERT_EQ(pair(joint_effect(e1, e2), compose(s1, s2)), pair(e1, s1) * pair(e2, s2));
  }
}

TEST(MqtProperties, EffectCountFormulaUpToCap) {
  for (std::int64_t p = 2; p <= 4096; ++p) {
    if (!is_prime(p)) continue;
    std::int64_t pd = p;
    for (std::int64_t d = 1; pd <= 4096; ++d, pd *= p) {
      ASSERT_EQ(static_cast<std::int64_t>(enumerate_effects(p, d).size()), (pd - 1) / (p - 1))
          << p << "^" << d;
    }
  }
}
