#include "modalkit/nosignal.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace modalkit {

namespace {

const RationalField kQ{};

QMatrix to_matrix(const std::vector<std::vector<Rational>>& rows) { return QMatrix(kQ, rows); }

}  // namespace

std::size_t NoSignalingSystem::rank() const { return modalkit::rank(equalities); }

NoSignalingSystem build_system(const PossibilityTable& table) {
  const auto& rows = table.row_headers();
  const auto& cols = table.col_headers();
  const std::size_t n = table.size();
  const std::size_t nc = table.n_cols();
  auto idx = [&](std::size_t r, std::size_t c) { return r * nc + c; };

  std::vector<std::vector<Rational>> eqs;
  std::vector<Rational> rhs;
  auto add = [&](std::vector<Rational> row, Rational b) {
    eqs.push_back(std::move(row));
    rhs.push_back(std::move(b));
  };

  std::size_t normalization_count = 0, marginal_count = 0, zero_count = 0;
  std::vector<std::size_t> zero_cells, positive_cells;

  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      std::vector<Rational> row(n);
      for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
        for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
          row[idx(table.row_offset(a) + i, table.col_offset(b) + j)] = Rational(1);
        }
      }
      add(std::move(row), Rational(1));
      ++normalization_count;
    }
  }

  // System-1 marginals: P(a|A) computed with partner B equals that with the reference B₀.
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
      const std::size_t r = table.row_offset(a) + i;
      for (std::size_t b = 1; b < cols.size(); ++b) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
          row[idx(r, table.col_offset(b) + j)] += Rational(1);
        }
        for (std::size_t j = 0; j < cols[0].outcomes.size(); ++j) {
          row[idx(r, table.col_offset(0) + j)] -= Rational(1);
        }
        add(std::move(row), Rational(0));
        ++marginal_count;
      }
    }
  }
  // System-2 marginals against the reference A₀.
  for (std::size_t b = 0; b < cols.size(); ++b) {
    for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
      const std::size_t c = table.col_offset(b) + j;
      for (std::size_t a = 1; a < rows.size(); ++a) {
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
          row[idx(table.row_offset(a) + i, c)] += Rational(1);
        }
        for (std::size_t i = 0; i < rows[0].outcomes.size(); ++i) {
          row[idx(table.row_offset(0) + i, c)] -= Rational(1);
        }
        add(std::move(row), Rational(0));
        ++marginal_count;
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (table.flat(k)) {
      positive_cells.push_back(k);
      continue;
    }
    zero_cells.push_back(k);
    std::vector<Rational> row(n);
    row[k] = Rational(1);
    add(std::move(row), Rational(0));
    ++zero_count;
  }

  std::vector<CellId> cells;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < nc; ++c) cells.push_back(table.cell_id(r, c));
  }
  return NoSignalingSystem{table,
                           std::move(cells),
                           to_matrix(eqs),
                           QVector(kQ, std::move(rhs)),
                           normalization_count,
                           marginal_count,
                           zero_count,
                           std::move(zero_cells),
                           std::move(positive_cells)};
}

QSpace solve(const NoSignalingSystem& system) {
  auto space = solve_affine(system.equalities, system.rhs);
  if (!space) throw Infeasible("requirements I-III are inconsistent for this table");
  return std::move(*space);
}

// ---------------------------------------------------------------------------

Rational SymbolicCell::evaluate(std::span<const Rational> params) const {
  if (params.size() != coefficients.size()) throw DimensionMismatch("wrong parameter count");
  Rational v = constant;
  for (std::size_t k = 0; k < params.size(); ++k) v += coefficients[k] * params[k];
  return v;
}

bool SymbolicCell::is_constant() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

std::string SymbolicCell::to_string(std::span<const std::string> names) const {
  if (names.size() < coefficients.size()) throw DimensionMismatch("too few parameter names");
  std::string out;
  if (!constant.is_zero() || is_constant()) out = constant.to_string();
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Rational& c = coefficients[k];
    if (c.is_zero()) continue;
    out += c.sign() < 0 ? "-" : (out.empty() ? "" : "+");
    const Rational mag = c.abs();
    if (mag != Rational(1)) {
      out += mag.denominator() == 1 ? mag.to_string() : "(" + mag.to_string() + ")";
    }
    out += names[k];
  }
  return out;
}

SymbolicCell cell_form(const QSpace& space, std::size_t i) {
  if (i >= space.ambient_dim()) throw DimensionMismatch("cell index out of range");
  SymbolicCell cell{space.particular[i], {}};
  for (const auto& v : space.homogeneous_basis) cell.coefficients.push_back(v[i]);
  return cell;
}

std::vector<Anchor> mobit_anchors() {
  const Rational half(1, 2);
  return {
      Anchor{CellId{"X", kPlus, "Y", kPlus}, half, "q"},
      Anchor{CellId{"Y", kPlus, "Z", kPlus}, half, "r"},
      Anchor{CellId{"Z", kPlus, "X", kPlus}, half, "s"},
  };
}

SymbolicTable symbolic_cells(const NoSignalingSystem& system, const QSpace& space,
                             std::span<const Anchor> anchors) {
  const std::size_t k = space.dimension();
  if (anchors.size() != k) {
    throw DegenerateAnchors(std::to_string(anchors.size()) + " anchors for a " +
                            std::to_string(k) + "-parameter family");
  }
  std::vector<SymbolicCell> anchor_forms;
  for (const auto& a : anchors) {
    auto i = system.source.index_of(a.cell);
    if (!i) throw DegenerateAnchors("anchor cell " + a.cell.to_string() + " is not in the table");
    anchor_forms.push_back(cell_form(space, *i));
  }

  SymbolicTable out{{}, JointTable<SymbolicCell>(system.source.row_headers(),
                                                 system.source.col_headers(), SymbolicCell{})};
  for (const auto& a : anchors) out.parameter_names.push_back(a.name);

  if (k == 0) {
    for (std::size_t i = 0; i < space.ambient_dim(); ++i) {
      out.cells.set(i / out.cells.n_cols(), i % out.cells.n_cols(), cell_form(space, i));
    }
    return out;
  }

  // Anchor map u = d + M·t; invert M by reducing [M | I].
  QMatrix aug(kQ, k, 2 * k);
  std::vector<Rational> d;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) aug(j, l) = anchor_forms[j].coefficients[l];
    aug(j, k + j) = Rational(1);
    d.push_back(anchor_forms[j].constant - anchors[j].offset);
  }
  auto red = rref(aug);
  if (red.rank < k || red.pivot_columns[k - 1] >= k) {
    throw DegenerateAnchors("anchor cells do not determine the parameters");
  }
  // inv(l, j) = red.reduced(l, k + j)
  for (std::size_t i = 0; i < space.ambient_dim(); ++i) {
    const SymbolicCell raw = cell_form(space, i);
    SymbolicCell cell{raw.constant, std::vector<Rational>(k)};
    for (std::size_t j = 0; j < k; ++j) {
      Rational coeff;
      for (std::size_t l = 0; l < k; ++l) coeff += raw.coefficients[l] * red.reduced(l, k + j);
      cell.constant -= coeff * d[j];
      cell.coefficients[j] = std::move(coeff);
    }
    out.cells.set(i / out.cells.n_cols(), i % out.cells.n_cols(), std::move(cell));
  }
  return out;
}

std::string render_symbolic(const SymbolicTable& table) {
  return render_grid(table.cells.row_headers(), table.cells.col_headers(),
                     [&](std::size_t r, std::size_t c) {
                       return table.cells.at(r, c).to_string(table.parameter_names);
                     });
}

// ---------------------------------------------------------------------------

LpResult lp_maximize(const QSpace& space, const SymbolicCell& objective) {
  const std::size_t k = space.dimension();
  const std::size_t m = space.ambient_dim();
  if (objective.coefficients.size() != k) {
    throw DimensionMismatch("objective has " + std::to_string(objective.coefficients.size()) +
                            " coefficients for a " + std::to_string(k) + "-parameter space");
  }
  LpResult result;
  if (k == 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (space.particular[i].sign() < 0) throw InfeasibleRegion("the unique solution has a negative cell");
    }
    result.value = objective.constant;
    result.multipliers.assign(m, Rational(0));
    return result;
  }

  // Parameters t = u − w with u, w ≥ 0; cellᵢ(t) = cᵢ + gᵢ·t ≥ 0 ⇔ −gᵢ·u + gᵢ·w ≤ cᵢ.
  StandardLp lp;
  lp.a.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& g = space.homogeneous_basis[j][i];
      row[j] = -g;
      row[k + j] = g;
    }
    lp.a.push_back(std::move(row));
    lp.b.push_back(space.particular[i]);
  }
  lp.c.resize(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    lp.c[j] = objective.coefficients[j];
    lp.c[k + j] = -objective.coefficients[j];
  }

  auto sol = simplex_maximize(lp);
  if (sol.status == LpStatus::Infeasible) {
    throw InfeasibleRegion("no parameter values make every cell non-negative");
  }
  result.status = sol.status;
  result.pivots = sol.pivots;
  result.point.resize(k);
  for (std::size_t j = 0; j < k; ++j) result.point[j] = sol.x[j] - sol.x[k + j];
  if (sol.status == LpStatus::Unbounded) {
    result.ray.resize(k);
    for (std::size_t j = 0; j < k; ++j) result.ray[j] = sol.ray[j] - sol.ray[k + j];
    return result;
  }
  result.value = objective.constant + sol.value;
  result.multipliers = std::move(sol.duals);
  return result;
}

bool verify_lp_certificate(const QSpace& space, const SymbolicCell& objective,
                           const LpResult& result) {
  const std::size_t k = space.dimension();
  const std::size_t m = space.ambient_dim();
  if (result.point.size() != k || objective.coefficients.size() != k) return false;
  const auto x = space.at(result.point);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i].sign() < 0) return false;
  }

  if (result.status == LpStatus::Unbounded) {
    if (result.ray.size() != k) return false;
    Rational gain;
    for (std::size_t j = 0; j < k; ++j) gain += objective.coefficients[j] * result.ray[j];
    if (gain.sign() <= 0) return false;
    for (std::size_t i = 0; i < m; ++i) {
      Rational slope;
      for (std::size_t j = 0; j < k; ++j) slope += space.homogeneous_basis[j][i] * result.ray[j];
      if (slope.sign() < 0) return false;
    }
    return true;
  }

  if (objective.evaluate(result.point) != result.value) return false;
  if (result.multipliers.size() != m) return false;
  Rational bound = objective.constant;
  std::vector<Rational> combo(k);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& y = result.multipliers[i];
    if (y.sign() < 0) return false;
    if (y.is_zero()) continue;
    bound += y * space.particular[i];
    for (std::size_t j = 0; j < k; ++j) combo[j] += y * space.homogeneous_basis[j][i];
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (combo[j] != -objective.coefficients[j]) return false;
  }
  return bound == result.value;
}

namespace {

// One maximization per positive cell; results in the order of positive_cells.
std::vector<LpResult> maximize_positive_cells(const NoSignalingSystem& system,
                                              const QSpace& space) {
  const auto& cells = system.positive_cells;
  std::vector<std::optional<LpResult>> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        results[i] = lp_maximize(space, cell_form(space, cells[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < n_workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<LpResult> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace

std::vector<CellId> forced_zero_cells(const NoSignalingSystem& system, const QSpace& space) {
  const auto results = maximize_positive_cells(system, space);
  std::vector<CellId> forced;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].status == LpStatus::Optimal && results[i].value.is_zero()) {
      forced.push_back(system.cells[system.positive_cells[i]]);
    }
  }
  return forced;
}

RequirementIvVerdict requirement_iv_verdict(const NoSignalingSystem& system, const QSpace& space) {
  RequirementIvVerdict verdict;
  const auto results = maximize_positive_cells(system, space);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].status == LpStatus::Optimal && results[i].value.is_zero()) {
      verdict.witnesses.push_back(system.cells[system.positive_cells[i]]);
    }
  }
  verdict.satisfiable = verdict.witnesses.empty();
  if (!verdict.satisfiable) return verdict;

  // The centroid of per-cell maximizers is feasible and strictly positive on
  // every possible cell.
  const std::size_t k = space.dimension();
  std::vector<Rational> centroid(k);
  if (results.empty()) {
    centroid = lp_maximize(space, SymbolicCell{Rational(0), std::vector<Rational>(k)}).point;
  } else {
    for (const auto& r : results) {
      for (std::size_t j = 0; j < k; ++j) centroid[j] += r.point[j];
    }
    const Rational scale(1, static_cast<std::int64_t>(results.size()));
    for (auto& c : centroid) c *= scale;
  }
  const auto x = space.at(centroid);
  verdict.example = ProbabilityTable(system.source.row_headers(), system.source.col_headers(),
                                     std::vector<Rational>(x.entries().begin(), x.entries().end()));
  return verdict;
}

ProbabilityTable relaxed_unique_table(const NoSignalingSystem& system, const QSpace& space,
                                      std::span<const CellId> forced) {
  const std::size_t k = space.dimension();
  std::vector<Rational> params;
  if (k > 0) {
    if (forced.empty()) throw NotUnique(std::to_string(k) + " parameters remain free");
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& id : forced) {
      auto i = system.source.index_of(id);
      if (!i) throw MalformedTable("forced cell " + id.to_string() + " is not in the table");
      const auto form = cell_form(space, *i);
      rows.push_back(form.coefficients);
      rhs.push_back(-form.constant);
    }
    auto sol = solve_affine(to_matrix(rows), QVector(kQ, std::move(rhs)));
    if (!sol) throw Infeasible("the forced zeros are inconsistent");
    if (sol->dimension() > 0) {
      throw NotUnique(std::to_string(sol->dimension()) + " parameters remain free");
    }
    params.assign(sol->particular.entries().begin(), sol->particular.entries().end());
  }
  const auto x = space.at(params);
  return ProbabilityTable(system.source.row_headers(), system.source.col_headers(),
                          std::vector<Rational>(x.entries().begin(), x.entries().end()));
}

RequirementReport check_requirements(const ProbabilityTable& table,
                                     const PossibilityTable* possibility) {
  RequirementReport report;
  const auto& rows = table.row_headers();
  const auto& cols = table.col_headers();
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      const Rational v = table.at(r, c);
      if (v.sign() < 0 || v > Rational(1)) {
        report.violations.push_back("I: cell " + table.cell_id(r, c).to_string() + " = " +
                                    v.to_string() + " is outside [0,1]");
      }
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      Rational sum;
      for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
        for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
          sum += table.at(table.row_offset(a) + i, table.col_offset(b) + j);
        }
      }
      if (sum != Rational(1)) {
        report.violations.push_back("I: block (" + rows[a].label + ", " + cols[b].label +
                                    ") sums to " + sum.to_string());
      }
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
      std::optional<Rational> first;
      for (std::size_t b = 0; b < cols.size(); ++b) {
        Rational marginal;
        for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
          marginal += table.at(table.row_offset(a) + i, table.col_offset(b) + j);
        }
        if (!first) {
          first = marginal;
        } else if (marginal != *first) {
          report.violations.push_back("II: P(" + rows[a].outcomes[i] + "|" + rows[a].label +
                                      "1) depends on the partner measurement " + cols[b].label);
        }
      }
    }
  }
  for (std::size_t b = 0; b < cols.size(); ++b) {
    for (std::size_t j = 0; j < cols[b].outcomes.size(); ++j) {
      std::optional<Rational> first;
      for (std::size_t a = 0; a < rows.size(); ++a) {
        Rational marginal;
        for (std::size_t i = 0; i < rows[a].outcomes.size(); ++i) {
          marginal += table.at(table.row_offset(a) + i, table.col_offset(b) + j);
        }
        if (!first) {
          first = marginal;
        } else if (marginal != *first) {
          report.violations.push_back("II: P(" + cols[b].outcomes[j] + "|" + cols[b].label +
                                      "2) depends on the partner measurement " + rows[a].label);
        }
      }
    }
  }
  if (possibility != nullptr) {
    if (possibility->row_headers() != rows || possibility->col_headers() != cols) {
      report.violations.push_back("III: possibility table has different labels");
      return report;
    }
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (!possibility->flat(k) && !table.flat(k).is_zero()) {
        report.violations.push_back("III: impossible cell " +
                                    table.cell_id(k / table.n_cols(), k % table.n_cols()).to_string() +
                                    " has probability " + table.flat(k).to_string());
      }
    }
  }
  return report;
}

std::string render_probability(const ProbabilityTable& table) {
  return render_grid(table.row_headers(), table.col_headers(),
                     [&](std::size_t r, std::size_t c) { return table.at(r, c).to_string(); });
}

// ---------------------------------------------------------------------------

namespace {

Rational correlator(const ProbabilityTable& table, const std::string& row, const std::string& col) {
  auto a = table.row_measurement(row);
  auto b = table.col_measurement(col);
  if (!a || !b) throw IncompleteBlock("no block (" + row + ", " + col + ")");
  if (table.row_headers()[*a].outcomes.size() != 2 || table.col_headers()[*b].outcomes.size() != 2) {
    throw IncompleteBlock("block (" + row + ", " + col + ") is not two-outcome");
  }
  Rational e;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Rational p = table.at(table.row_offset(*a) + i, table.col_offset(*b) + j);
      if (i == j) {
        e += p;
      } else {
        e -= p;
      }
    }
  }
  return e;
}

}  // namespace

Rational chsh(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
              const std::array<std::string, 2>& cols, std::array<std::size_t, 2> negative) {
  if (negative[0] > 1 || negative[1] > 1) throw IncompleteBlock("sign position out of range");
  Rational total;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Rational e = correlator(table, rows[i], cols[j]);
      if (i == negative[0] && j == negative[1]) {
        total -= e;
      } else {
        total += e;
      }
    }
  }
  return total;
}

Rational max_chsh(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
                  const std::array<std::string, 2>& cols) {
  Rational best;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) best = std::max(best, chsh(table, rows, cols, {i, j}).abs());
  }
  return best;
}

bool pr_box_check(const ProbabilityTable& table, const std::array<std::string, 2>& rows,
                  const std::array<std::string, 2>& cols) {
  return max_chsh(table, rows, cols) == Rational(4);
}

ProbabilityTable restrict_table(const ProbabilityTable& table, std::span<const std::string> rows,
                                std::span<const std::string> cols) {
  std::vector<std::size_t> ri, ci;
  std::vector<MeasurementHeader> rh, ch;
  for (const auto& l : rows) {
    auto a = table.row_measurement(l);
    if (!a) throw IncompleteBlock("no row measurement '" + l + "'");
    ri.push_back(*a);
    rh.push_back(table.row_headers()[*a]);
  }
  for (const auto& l : cols) {
    auto b = table.col_measurement(l);
    if (!b) throw IncompleteBlock("no column measurement '" + l + "'");
    ci.push_back(*b);
    ch.push_back(table.col_headers()[*b]);
  }
  std::vector<Rational> cells;
  for (auto a : ri) {
    for (std::size_t i = 0; i < table.row_headers()[a].outcomes.size(); ++i) {
      for (auto b : ci) {
        for (std::size_t j = 0; j < table.col_headers()[b].outcomes.size(); ++j) {
          cells.push_back(table.at(table.row_offset(a) + i, table.col_offset(b) + j));
        }
      }
    }
  }
  return ProbabilityTable(std::move(rh), std::move(ch), std::move(cells));
}

}  // namespace modalkit
