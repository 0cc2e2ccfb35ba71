#include "modalkit/verifiers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace modalkit {

ColoringProblem::ColoringProblem(std::vector<std::string> vertices,
                                 std::vector<std::vector<std::string>> edges,
                                 std::size_t green_count)
    : vertices_(std::move(vertices)), green_count_(green_count) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i], i).second) {
      throw InvalidProblem("vertex '" + vertices_[i] + "' declared twice");
    }
  }
  if (green_count_ == 0) throw InvalidProblem("green_count must be positive");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].empty()) throw InvalidProblem("edge " + std::to_string(e) + " is empty");
    std::vector<std::size_t> members;
    for (const auto& label : edges[e]) {
      auto it = index.find(label);
      if (it == index.end()) {
        throw InvalidProblem("edge " + std::to_string(e) + " names undeclared vertex '" + label +
                             "'");
      }
      members.push_back(it->second);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw InvalidProblem("edge " + std::to_string(e) + " repeats a vertex");
    }
    if (green_count_ > members.size()) {
      throw InvalidProblem("green_count " + std::to_string(green_count_) + " exceeds edge " +
                           std::to_string(e) + " of size " + std::to_string(members.size()));
    }
    edges_.push_back(std::move(members));
  }
}

std::vector<std::size_t> ColoringProblem::degrees() const {
  std::vector<std::size_t> deg(vertices_.size(), 0);
  for (const auto& e : edges_) {
    for (auto v : e) ++deg[v];
  }
  return deg;
}

ColoringProblem mobit_triangle() {
  return ColoringProblem({"a", "b", "c"}, {{"a", "b"}, {"c", "a"}, {"b", "c"}}, 1);
}

bool is_valid_coloring(const ColoringProblem& problem, const Coloring& coloring) {
  std::vector<bool> green(problem.vertices().size(), false);
  for (auto v : coloring.green) {
    if (v >= green.size()) return false;
    green[v] = true;
  }
  for (const auto& e : problem.edges()) {
    std::size_t n = 0;
    for (auto v : e) n += green[v] ? 1 : 0;
    if (n != problem.green_count()) return false;
  }
  return true;
}

std::string ColoringSearch::candidate_count() const {
  if (vertex_count < 63) return std::to_string(std::uint64_t{1} << vertex_count);
  return "2^" + std::to_string(vertex_count);
}

namespace {

std::vector<Coloring> exhaustive_colorings(const ColoringProblem& problem, unsigned workers) {
  const std::size_t n = problem.vertices().size();
  std::vector<std::uint32_t> masks;
  for (const auto& e : problem.edges()) {
    std::uint32_t m = 0;
    for (auto v : e) m |= std::uint32_t{1} << v;
    masks.push_back(m);
  }
  const auto k = static_cast<int>(problem.green_count());
  const std::uint64_t total = std::uint64_t{1} << n;

  auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint32_t>& hits) {
    for (std::uint64_t s = lo; s < hi; ++s) {
      const auto set = static_cast<std::uint32_t>(s);
      bool ok = true;
      for (auto m : masks) {
        if (std::popcount(set & m) != k) {
          ok = false;
          break;
        }
      }
      if (ok) hits.push_back(set);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (n < 16) workers = 1;
  std::vector<std::vector<std::uint32_t>> parts(workers);
  if (workers == 1) {
    scan(0, total, parts[0]);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min(total, w * chunk);
      const std::uint64_t hi = std::min(total, lo + chunk);
      threads.emplace_back([&, lo, hi, w] { scan(lo, hi, parts[w]); });
    }
    for (auto& t : threads) t.join();
  }

  std::vector<Coloring> out;
  for (const auto& part : parts) {
    for (auto set : part) {
      Coloring c;
      for (std::size_t v = 0; v < n; ++v) {
        if (set & (std::uint32_t{1} << v)) c.green.push_back(v);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

class Backtracker {
 public:
  explicit Backtracker(const ColoringProblem& problem)
      : problem_(problem),
        color_(problem.vertices().size(), kUnset),
        greens_(problem.edges().size(), 0),
        open_(problem.edges().size(), 0),
        incident_(problem.vertices().size()) {
    for (std::size_t e = 0; e < problem.edges().size(); ++e) {
      open_[e] = problem.edges()[e].size();
      for (auto v : problem.edges()[e]) incident_[v].push_back(e);
    }
  }

  std::vector<Coloring> run() {
    search();
    return std::move(found_);
  }

 private:
  static constexpr int kUnset = -1;

  bool assign(std::size_t v, int color) {
    color_[v] = color;
    bool ok = true;
    for (auto e : incident_[v]) {
      --open_[e];
      greens_[e] += color;
      const std::size_t k = problem_.green_count();
      if (greens_[e] > k || greens_[e] + open_[e] < k) ok = false;
    }
    return ok;
  }

  void unassign(std::size_t v) {
    for (auto e : incident_[v]) {
      ++open_[e];
      greens_[e] -= static_cast<std::size_t>(color_[v]);
    }
    color_[v] = kUnset;
  }

  std::optional<std::size_t> next_vertex() const {
    std::optional<std::size_t> best_edge;
    for (std::size_t e = 0; e < open_.size(); ++e) {
      if (open_[e] == 0) continue;
      if (!best_edge || open_[e] < open_[*best_edge]) best_edge = e;
    }
    if (best_edge) {
      for (auto v : problem_.edges()[*best_edge]) {
        if (color_[v] == kUnset) return v;
      }
    }
    for (std::size_t v = 0; v < color_.size(); ++v) {
      if (color_[v] == kUnset) return v;
    }
    return std::nullopt;
  }

  void search() {
    auto v = next_vertex();
    if (!v) {
      Coloring c;
      for (std::size_t i = 0; i < color_.size(); ++i) {
        if (color_[i] == 1) c.green.push_back(i);
      }
      found_.push_back(std::move(c));
      return;
    }
    for (int color : {1, 0}) {
      if (assign(*v, color)) search();
      unassign(*v);
    }
  }

  const ColoringProblem& problem_;
  std::vector<int> color_;
  std::vector<std::size_t> greens_;
  std::vector<std::size_t> open_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<Coloring> found_;
};

}  // namespace

ColoringSearch find_colorings(const ColoringProblem& problem, const SearchLimits& limits) {
  const std::size_t n = problem.vertices().size();
  if (n > limits.backtrack_cap) {
    throw InstanceTooLarge(std::to_string(n) + " vertices exceeds the search cap " +
                           std::to_string(limits.backtrack_cap));
  }
  ColoringSearch result;
  result.vertex_count = n;
  if (n <= limits.exhaustive_cap && n <= 31) {
    result.colorings = exhaustive_colorings(problem, limits.workers);
    result.exhaustive = true;
  } else {
    result.colorings = Backtracker(problem).run();
  }
  std::sort(result.colorings.begin(), result.colorings.end());
  return result;
}

std::string ParityWitness::explanation() const {
  std::ostringstream os;
  os << "every vertex lies on a multiple of " << degree_gcd
     << " edges, so the green incidences sum to a multiple of " << degree_gcd
     << ", but they must equal green_count * |E| = " << green_count << " * " << edge_count
     << " = " << green_count * edge_count;
  return os.str();
}

std::optional<ParityWitness> coloring_parity_certificate(const ColoringProblem& problem) {
  const auto deg = problem.degrees();
  std::size_t g = 0;
  for (auto d : deg) g = std::gcd(g, d);
  // Isolated vertices contribute nothing; g = 0 only when there are no edges.
  if (g <= 1) return std::nullopt;
  const std::size_t total = problem.green_count() * problem.edges().size();
  if (total % g == 0) return std::nullopt;
  return ParityWitness{problem.edges().size(), problem.green_count(), g};
}

// ---------------------------------------------------------------------------

bool is_consistent(const PossibilityTable& table, const LocalModel& model) {
  const auto& rows = table.row_headers();
  const auto& cols = table.col_headers();
  if (model.f1.size() != rows.size() || model.f2.size() != cols.size()) return false;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (model.f1[a] >= rows[a].outcomes.size()) return false;
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (model.f2[b] >= cols[b].outcomes.size()) return false;
      if (!table.at(table.row_offset(a) + model.f1[a], table.col_offset(b) + model.f2[b])) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Advances a mixed-radix counter (last digit fastest); false on wraparound.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

LocalModelSearch find_local_models(const PossibilityTable& table, std::uint64_t max_candidates) {
  const auto& rows = table.row_headers();
  const auto& cols = table.col_headers();
  std::vector<std::size_t> row_radix, col_radix;
  BigInt row_count = 1, col_count = 1;
  for (const auto& h : rows) {
    row_radix.push_back(h.outcomes.size());
    row_count *= h.outcomes.size();
  }
  for (const auto& h : cols) {
    col_radix.push_back(h.outcomes.size());
    col_count *= h.outcomes.size();
  }
  LocalModelSearch result;
  result.candidates = row_count * col_count;
  if (result.candidates > max_candidates) {
    throw InstanceTooLarge(result.candidates.str() + " candidate models exceed the limit " +
                           std::to_string(max_candidates));
  }

  // For a fixed f1, column outcome b of B is admissible iff it is possible
  // against every row choice; f2 ranges over the product of admissible sets.
  std::vector<std::size_t> f1(rows.size(), 0);
  do {
    std::vector<std::vector<std::size_t>> allowed(cols.size());
    bool any_empty = false;
    for (std::size_t b = 0; b < cols.size() && !any_empty; ++b) {
      for (std::size_t o = 0; o < col_radix[b]; ++o) {
        bool ok = true;
        for (std::size_t a = 0; a < rows.size() && ok; ++a) {
          ok = table.at(table.row_offset(a) + f1[a], table.col_offset(b) + o);
        }
        if (ok) allowed[b].push_back(o);
      }
      any_empty = allowed[b].empty();
    }
    if (any_empty) continue;
    std::vector<std::size_t> pick(cols.size(), 0);
    std::vector<std::size_t> sizes;
    for (const auto& a : allowed) sizes.push_back(a.size());
    do {
      LocalModel m{f1, {}};
      for (std::size_t b = 0; b < cols.size(); ++b) m.f2.push_back(allowed[b][pick[b]]);
      result.models.push_back(std::move(m));
    } while (advance(pick, sizes));
  } while (advance(f1, row_radix));
  return result;
}

std::string describe(const PossibilityTable& table, const LocalModel& model) {
  std::ostringstream os;
  const auto& rows = table.row_headers();
  const auto& cols = table.col_headers();
  for (std::size_t a = 0; a < rows.size(); ++a) {
    os << (a ? " " : "") << rows[a].label << "1=" << rows[a].outcomes[model.f1[a]];
  }
  os << " |";
  for (std::size_t b = 0; b < cols.size(); ++b) {
    os << " " << cols[b].label << "2=" << cols[b].outcomes[model.f2[b]];
  }
  return os.str();
}

}  // namespace modalkit
