#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "modalkit/io.hpp"
#include "modalkit/nosignal.hpp"

using namespace modalkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  return slurp(fs::path(MODALKIT_GOLDEN_DIR) / name);
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("modalkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* const kProductState = R"({"p": 2, "dim": 4, "entries": [0, 1, 0, 0]})";

}  // namespace

TEST(CliTable, TextMatchesGolden) {
  const auto r = run({"table", "--p", "2", "--format", "text"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, golden("possibility_singlet.txt") + "12 impossible cells of 36\n");
}

TEST(CliTable, SameGridForOtherPrimes) {
  for (const char* p : {"3", "5", "7"}) {
    const auto r = run({"table", "--p", p});
    EXPECT_EQ(r.code, cli::kOk) << p;
    EXPECT_TRUE(contains(r.out, golden("possibility_singlet.txt"))) << p;
  }
}

TEST(CliTable, JsonRoundTrips) {
  const auto r = run({"table", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto j = io::parse_document(r.out);
  EXPECT_EQ(j["impossible"], 12);
  EXPECT_EQ(io::possibility_from_json(j["table"]), singlet_table(2));
  EXPECT_EQ(io::state_from_json(j["state"]), singlet(2));
}

TEST(CliTable, Csv) {
  const auto r = run({"table", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kOk);
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(first, "measurement,outcome,X2+,X2-,Y2+,Y2-,Z2+,Z2-");
  EXPECT_EQ(second, "X1,+,0,#,#,0,#,#");
}

TEST(CliTable, UserState) {
  TempDir dir;
  const auto f = dir.write("state.json", kProductState);
  const auto r = run({"table", "--state", f.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "impossible cells of 36"));
  const auto bad = dir.write("bad.json", R"({"p": 2, "dim": 2, "entries": [0, 1]})");
  EXPECT_EQ(run({"table", "--state", bad.string()}).code, cli::kUsage);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"table", "--p", "4"}).code, cli::kUsage);
  EXPECT_EQ(run({"table", "--p", "x"}).code, cli::kUsage);
  EXPECT_EQ(run({"table", "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(run({"table", "--frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"coloring", "--file", "/nonexistent/instance.json"}).code, cli::kUsage);
  const auto r = run({"table", "--p", "9"});
  EXPECT_TRUE(contains(r.err, "not prime")) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliUsage, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(contains(r.out, "nosignal"));
}

TEST(CliColoring, MobitTriangle) {
  const auto r = run({"coloring"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(contains(r.out, "no valid coloring among 8 candidates")) << r.out;
  EXPECT_TRUE(contains(r.out, "parity certificate: every vertex")) << r.out;
  const auto j = io::parse_document(run({"coloring", "--format", "json"}).out);
  EXPECT_EQ(j["result"]["count"], 0);
  EXPECT_EQ(j["result"]["parity_certificate"]["edge_count"], 3);
  const auto back = io::coloring_problem_from_json(j["problem"]);
  EXPECT_EQ(back.edges(), mobit_triangle().edges());
}

TEST(CliColoring, UserInstances) {
  TempDir dir;
  const auto square = dir.write(
      "square.json",
      R"({"vertices": ["a", "b", "c", "d"], "edges": [["a","b"],["b","c"],["c","d"],["d","a"]], "green_count": 1})");
  const auto r = run({"coloring", "--file", square.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "2 valid colorings among 16 candidates")) << r.out;
  EXPECT_TRUE(contains(r.out, "green = {a, c}"));
  EXPECT_TRUE(contains(r.out, "parity certificate: none"));
  const auto csv = run({"coloring", "--file", square.string(), "--format", "csv"});
  EXPECT_EQ(csv.out, "coloring,green\n0,a c\n1,b d\n");

  const auto unknown = dir.write(
      "unknown.json", R"({"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"],["c","d"]], "green_count": 1})");
  const auto u = run({"coloring", "--file", unknown.string()});
  EXPECT_EQ(u.code, cli::kUsage);
  EXPECT_TRUE(contains(u.err, "$.edges[2][1]: unknown vertex 'd'")) << u.err;

  const auto syntax = dir.write("syntax.json", "{\n  \"vertices\": [\"a\"\n  \"edges\": []\n}");
  const auto s = run({"coloring", "--file", syntax.string()});
  EXPECT_EQ(s.code, cli::kUsage);
  EXPECT_TRUE(contains(s.err, "line 3")) << s.err;
}

TEST(CliLocalModels, Singlet) {
  for (const char* p : {"2", "3", "5"}) {
    const auto r = run({"localmodels", "--p", p});
    EXPECT_EQ(r.code, cli::kOk) << p;
    EXPECT_TRUE(contains(r.out, "0 of 64 local deterministic models consistent")) << r.out;
  }
  const auto j = io::parse_document(run({"localmodels", "--format", "json"}).out);
  EXPECT_EQ(j["consistent"], 0);
  EXPECT_EQ(j["candidates"], "64");
  EXPECT_EQ(j["verdict"], "not_predetermined");
}

TEST(CliLocalModels, ProductState) {
  TempDir dir;
  const auto f = dir.write("state.json", kProductState);
  const auto r = run({"localmodels", "--state", f.string()});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_FALSE(contains(r.out, "0 of 64")) << r.out;
  EXPECT_TRUE(contains(r.out, "local predetermined outcomes exist"));
}

TEST(CliNoSignal, SingletSummary) {
  const auto r = run({"nosignal", "--p", "2"});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_TRUE(contains(r.out, "dimension 3; Requirement IV: VIOLATED (6 cells); PR box: YES, CHSH = 4\n"));
  EXPECT_TRUE(contains(r.out, golden("relaxed_singlet.txt")));
  EXPECT_FALSE(contains(r.out, "1/2+q"));
  const auto sym = run({"nosignal", "--symbolic"});
  EXPECT_TRUE(contains(sym.out, golden("symbolic_singlet.txt")));
  EXPECT_TRUE(contains(sym.out, "CHSH on {X1,Y1}x{X2,Z2} = 4 (PR box)"));
}

TEST(CliNoSignal, JsonVerdict) {
  const auto r = run({"nosignal", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto j = io::parse_document(r.out);
  EXPECT_EQ(j["verdict"], "violated");
  EXPECT_EQ(j["dimension"], 3);
  ASSERT_EQ(j["witnesses"].size(), 6U);
  EXPECT_EQ(j["witnesses"][0]["row_measurement"], "X");
  EXPECT_EQ(j["witnesses"][0]["col_measurement"], "Z");
  EXPECT_EQ(j["equations"]["rank"], 33);
  EXPECT_EQ(j["pr_box"]["chsh"], "4");

  const auto sys = build_system(singlet_table(2));
  const auto space = solve(sys);
  const auto expected = relaxed_unique_table(sys, space, forced_zero_cells(sys, space));
  EXPECT_EQ(io::probability_from_json(j["relaxed_table"]), expected);
  EXPECT_EQ(j["symbolic"]["cells"][1][2], "-q-r");
}

TEST(CliNoSignal, ProductStateSatisfiesRequirementIv) {
  TempDir dir;
  const auto f = dir.write("state.json", kProductState);
  const auto r = run({"nosignal", "--state", f.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "Requirement IV: SATISFIED")) << r.out;
  EXPECT_TRUE(contains(r.out, "PR box: NO"));
}

TEST(CliNoSignal, Csv) {
  const auto r = run({"nosignal", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(contains(r.out, "X,-,Y,+,1,-q-r,1,0\n")) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 37);
}

TEST(CliEnumerate, Counts) {
  const auto r = run({"enumerate", "--p", "2", "--dim", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(contains(r.out, "GF(2)^2: 3 effects"));
  EXPECT_TRUE(contains(r.out, "  e2 (1,1)\n"));
  EXPECT_TRUE(contains(r.out, "3 measurements"));
  const auto j = io::parse_document(run({"enumerate", "--p", "3", "--dim", "2", "--format", "json"}).out);
  EXPECT_EQ(j["effect_count"], 4);
  EXPECT_EQ(j["measurement_count"], "6");
  EXPECT_EQ(j["measurements"].size(), 6U);
  EXPECT_EQ(io::effect_from_json(j["effects"][3]).vector(), make_fp_vector(PrimeField(3), {1, 2}));
  EXPECT_EQ(io::measurement_from_json(j["measurements"][0]).size(), 2U);
}

TEST(CliEnumerate, CapFromEnvironment) {
  EXPECT_EQ(run({"enumerate", "--p", "2", "--dim", "13"}).code, cli::kUsage);
  ::setenv("MODALKIT_ENUM_CAP", "8192", 1);
  const auto r = run({"enumerate", "--p", "2", "--dim", "13"});
  ::setenv("MODALKIT_ENUM_CAP", "lots", 1);
  const auto bad = run({"enumerate", "--p", "2", "--dim", "2"});
  ::unsetenv("MODALKIT_ENUM_CAP");
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "GF(2)^13: 8191 effects"));
  EXPECT_TRUE(contains(r.out, "(too many to list)"));
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_TRUE(contains(bad.err, "MODALKIT_ENUM_CAP"));
}

TEST(CliOutput, WritesToFile) {
  TempDir dir;
  const auto target = dir.path() / "table.txt";
  const auto r = run({"table", "--out", target.string()});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(target), run({"table"}).out);
  EXPECT_EQ(run({"table", "--out", (dir.path() / "missing" / "x.txt").string()}).code, cli::kUsage);
}

TEST(CliDeterminism, RepeatedRunsAreIdentical) {
  const std::vector<std::vector<std::string>> invocations{
      {"table"}, {"coloring", "--format", "json"}, {"localmodels", "--format", "csv"},
      {"nosignal", "--symbolic"}, {"nosignal", "--format", "json"}, {"enumerate", "--p", "5", "--dim", "2"}};
  for (const auto& args : invocations) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args.front();
  }
}

TEST(CliUsage, FormatIsCaseInsensitive) {
  EXPECT_EQ(run({"table", "--format", "JSON"}).out, run({"table", "--format", "json"}).out);
}
