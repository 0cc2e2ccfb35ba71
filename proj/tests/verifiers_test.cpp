#include <random>

#include <gtest/gtest.h>

#include "modalkit/verifiers.hpp"
#include "oracles.hpp"

using namespace modalkit;

namespace {

std::vector<std::vector<std::size_t>> greens(const ColoringSearch& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : s.colorings) out.push_back(c.green);
  return out;
}

ColoringProblem cycle(std::size_t n, std::size_t green = 1) {
  std::vector<std::string> vs;
  std::vector<std::vector<std::string>> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) es.push_back({vs[i], vs[(i + 1) % n]});
  return ColoringProblem(vs, es, green);
}

ColoringProblem random_problem(std::mt19937_64& rng, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vertices);
  const std::size_t n = nv(rng);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> ne(1, 2 * n);
  std::uniform_int_distribution<std::size_t> size(2, std::min<std::size_t>(n, 4));
  std::vector<std::vector<std::string>> es;
  std::size_t min_size = n;
  const std::size_t edge_count = ne(rng);
  for (std::size_t k = 0; k < edge_count; ++k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t s = size(rng);
    min_size = std::min(min_size, s);
    std::vector<std::string> e;
    for (std::size_t i = 0; i < s; ++i) e.push_back(vs[idx[i]]);
    es.push_back(e);
  }
  std::uniform_int_distribution<std::size_t> g(1, min_size);
  return ColoringProblem(vs, es, g(rng));
}

PossibilityTable all_possible() {
  const auto h = headers_of(mobit_bases(2).all());
  return PossibilityTable(h, h, true);
}

}  // namespace

TEST(ColoringProblem, Validation) {
  EXPECT_THROW(ColoringProblem({"a"}, {{}}, 1), InvalidProblem);
  EXPECT_THROW(ColoringProblem({"a", "b"}, {{"a", "c"}}, 1), InvalidProblem);
  EXPECT_THROW(ColoringProblem({"a", "b"}, {{"a", "b"}}, 3), InvalidProblem);
  EXPECT_THROW(ColoringProblem({"a", "b"}, {{"a", "b"}}, 0), InvalidProblem);
  EXPECT_THROW(ColoringProblem({"a", "a"}, {{"a"}}, 1), InvalidProblem);
  EXPECT_THROW(ColoringProblem({"a", "b"}, {{"a", "a"}}, 1), InvalidProblem);
}

TEST(FindColorings, MobitTriangleHasNone) {
  const auto p = mobit_triangle();
  EXPECT_EQ(p.vertices(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(p.edges().size(), 3U);
  const auto s = find_colorings(p);
  EXPECT_TRUE(s.colorings.empty());
  EXPECT_TRUE(s.exhaustive);
  EXPECT_EQ(s.candidate_count(), "8");
}

TEST(FindColorings, SingleEdge) {
  const auto s = find_colorings(ColoringProblem({"a", "b"}, {{"a", "b"}}, 1));
  EXPECT_EQ(greens(s), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
}

TEST(FindColorings, FourCycleAlternates) {
  const auto p = cycle(4);
  const auto s = find_colorings(p);
  EXPECT_EQ(greens(s), (std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(greens(s), oracle::brute_colorings(p));
}

TEST(FindColorings, BacktrackingAboveExhaustiveCap) {
  const auto p = cycle(40);
  const auto s = find_colorings(p);
  EXPECT_FALSE(s.exhaustive);
  EXPECT_EQ(s.candidate_count(), "1099511627776");
  ASSERT_EQ(s.colorings.size(), 2U);
  for (const auto& c : s.colorings) EXPECT_TRUE(is_valid_coloring(p, c));
  EXPECT_TRUE(find_colorings(cycle(41)).colorings.empty());
}

TEST(FindColorings, LimitsAreHonoured) {
  SearchLimits limits;
  limits.exhaustive_cap = 2;
  limits.backtrack_cap = 3;
  EXPECT_THROW(find_colorings(cycle(4), limits), InstanceTooLarge);
  limits.backtrack_cap = 4;
  EXPECT_EQ(find_colorings(cycle(4), limits).colorings.size(), 2U);
}

TEST(FindColorings, ThreadedExhaustiveMatchesBacktracking) {
  const auto p = cycle(18);
  SearchLimits exhaustive;
  exhaustive.workers = 4;
  SearchLimits backtrack;
  backtrack.exhaustive_cap = 0;
  const auto a = find_colorings(p, exhaustive);
  const auto b = find_colorings(p, backtrack);
  EXPECT_TRUE(a.exhaustive);
  EXPECT_FALSE(b.exhaustive);
  EXPECT_EQ(greens(a), greens(b));
  EXPECT_EQ(greens(a), oracle::brute_colorings(p));
}

TEST(ParityCertificate, Examples) {
  const auto w = coloring_parity_certificate(mobit_triangle());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->edge_count, 3U);
  EXPECT_EQ(w->green_count, 1U);
  EXPECT_EQ(w->degree_gcd, 2U);
  EXPECT_FALSE(w->explanation().empty());
  EXPECT_FALSE(coloring_parity_certificate(cycle(4)));
  EXPECT_FALSE(coloring_parity_certificate(ColoringProblem({"a", "b"}, {{"a", "b"}}, 1)));
}

TEST(ParityCertificate, AgreesWithSearch) {
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto p = cycle(n);
    const auto w = coloring_parity_certificate(p);
    const auto s = find_colorings(p);
    EXPECT_EQ(w.has_value(), n % 2 == 1) << n;
    if (w) {
      EXPECT_TRUE(s.colorings.empty()) << n;
    }
  }
}

TEST(LocalModels, SingletHasNone) {
  const auto t = singlet_table(2);
  const auto s = find_local_models(t);
  EXPECT_TRUE(s.models.empty());
  EXPECT_EQ(s.candidates, BigInt(64));
  EXPECT_TRUE(oracle::brute_local_models(t).empty());
}

TEST(LocalModels, ProductStateAdmitsPredeterminedOutcomes) {
  const PrimeField f(2);
  const auto ms = mobit_bases(2).all();
  const auto t = possibility_table(compose(ket0(f), ket0(f)), ms, ms);
  const auto s = find_local_models(t);
  ASSERT_FALSE(s.models.empty());
  // X must be + and Z must be - (<b|0> = 0); Y is free since <c|0> = <a|0> = 1
  const LocalModel all_plus{{0, 0, 0}, {0, 0, 0}};
  const LocalModel plus_plus_minus{{0, 0, 1}, {0, 0, 1}};
  EXPECT_EQ(s.models.size(), 4U);
  EXPECT_NE(std::find(s.models.begin(), s.models.end(), plus_plus_minus), s.models.end());
  EXPECT_FALSE(is_consistent(t, all_plus));
  EXPECT_EQ(s.models, oracle::brute_local_models(t));
  EXPECT_EQ(describe(t, plus_plus_minus), "X1=+ Y1=+ Z1=- | X2=+ Y2=+ Z2=-");
}

TEST(LocalModels, AllPossibleGivesEverything) {
  const auto s = find_local_models(all_possible());
  EXPECT_EQ(s.models.size(), 64U);
  EXPECT_TRUE(std::is_sorted(s.models.begin(), s.models.end()));
}

TEST(LocalModels, CandidateLimit) {
  EXPECT_THROW(find_local_models(all_possible(), 63), InstanceTooLarge);
}

TEST(LocalModels, Consistency) {
  const auto t = singlet_table(2);
  EXPECT_FALSE(is_consistent(t, LocalModel{{0, 0, 0}, {1, 1, 1}}));
  EXPECT_FALSE(is_consistent(t, LocalModel{{0, 0}, {1, 1, 1}}));
  EXPECT_FALSE(is_consistent(t, LocalModel{{0, 0, 2}, {1, 1, 1}}));
}

// ---- properties ----

TEST(VerifierProperties, ColoringsRevalidateAndMatchBruteForce) {
  for (unsigned seed = 0; seed < 150; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(seed);
    const auto p = random_problem(rng, 14);
    SearchLimits limits;
    if (seed % 2 == 1) limits.exhaustive_cap = 0;  // force backtracking
    const auto s = find_colorings(p, limits);
    for (const auto& c : s.colorings) ASSERT_TRUE(is_valid_coloring(p, c));
    ASSERT_EQ(greens(s), oracle::brute_colorings(p));
    if (coloring_parity_certificate(p)) {
      ASSERT_TRUE(s.colorings.empty());
    }
  }
}

TEST(VerifierProperties, LocalModelsRevalidateAndMatchBruteForce) {
  for (unsigned seed = 0; seed < 150; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(seed);
    const auto h = headers_of(mobit_bases(2).all());
    std::bernoulli_distribution possible(0.7);
    std::vector<bool> cells(36);
    for (std::size_t i = 0; i < 36; ++i) cells[i] = possible(rng);
    const PossibilityTable t(h, h, cells);
    const auto s = find_local_models(t);
    for (const auto& m : s.models) ASSERT_TRUE(is_consistent(t, m));
    ASSERT_EQ(s.models, oracle::brute_local_models(t));
  }
}

TEST(VerifierProperties, ProductStatesAdmitLocalModels) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    SCOPED_TRACE(seed);
    std::mt19937_64 rng(seed);
    const std::int64_t p = seed % 2 == 0 ? 2 : 3;
    const PrimeField f(p);
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    auto state = [&] {
      std::vector<std::int64_t> c{d(rng), d(rng)};
      if (c[0] == 0 && c[1] == 0) c[1] = 1;
      return State(f, c);
    };
    const auto ms = mobit_bases(p).all();
    const auto t = possibility_table(compose(state(), state()), ms, ms);
    ASSERT_FALSE(find_local_models(t).models.empty());
  }
}
