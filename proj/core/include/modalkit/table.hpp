#pragma once

// Bipartite joint-outcome tables: rows are (measurement, outcome) entries of
// system 1, columns those of system 2. Used for both possibility (bool) and
// probability (Rational) data.

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modalkit/error.hpp"

namespace modalkit {

struct MeasurementHeader {
  std::string label;
  std::vector<std::string> outcomes;
  friend bool operator==(const MeasurementHeader&, const MeasurementHeader&) = default;
};

/// One row or column of a joint table.
struct AxisEntry {
  std::size_t measurement;  // index into the headers
  std::size_t outcome;      // index into that header's outcomes
};

/// Names a single joint outcome (A, a, B, b) by label.
struct CellId {
  std::string row_measurement;
  std::string row_outcome;
  std::string col_measurement;
  std::string col_outcome;

  friend auto operator<=>(const CellId&, const CellId&) = default;
  /// "(X+, Y2-)" style.
  std::string to_string() const {
    return "(" + row_measurement + row_outcome + ", " + col_measurement + "2" + col_outcome + ")";
  }
};

/// Validates a header list; throws MalformedTable.
inline void validate_headers(const std::vector<MeasurementHeader>& headers, const char* side) {
  if (headers.empty()) throw MalformedTable(std::string(side) + " side has no measurements");
  std::set<std::string> labels;
  for (const auto& h : headers) {
    if (!labels.insert(h.label).second) {
      throw MalformedTable(std::string(side) + " side repeats measurement '" + h.label + "'");
    }
    if (h.outcomes.empty()) throw MalformedTable("measurement '" + h.label + "' has no outcomes");
    std::set<std::string> outs(h.outcomes.begin(), h.outcomes.end());
    if (outs.size() != h.outcomes.size()) {
      throw MalformedTable("measurement '" + h.label + "' repeats an outcome label");
    }
  }
}

template <class Cell>
class JointTable {
 public:
  /// Throws MalformedTable when headers are invalid or the cell count is wrong.
  JointTable(std::vector<MeasurementHeader> rows, std::vector<MeasurementHeader> cols,
             std::vector<Cell> cells)
      : rows_(std::move(rows)), cols_(std::move(cols)), cells_(std::move(cells)) {
    validate_headers(rows_, "row");
    validate_headers(cols_, "column");
    row_entries_ = flatten(rows_, row_offsets_);
    col_entries_ = flatten(cols_, col_offsets_);
    if (cells_.size() != row_entries_.size() * col_entries_.size()) {
      throw MalformedTable("expected " + std::to_string(row_entries_.size()) + "x" +
                           std::to_string(col_entries_.size()) + " cells, got " +
                           std::to_string(cells_.size()));
    }
  }

  /// Table filled with a constant value.
  JointTable(std::vector<MeasurementHeader> rows, std::vector<MeasurementHeader> cols,
             const Cell& fill)
      : JointTable(rows, cols, std::vector<Cell>(count(rows) * count(cols), fill)) {}

  const std::vector<MeasurementHeader>& row_headers() const { return rows_; }
  const std::vector<MeasurementHeader>& col_headers() const { return cols_; }
  const std::vector<AxisEntry>& row_entries() const { return row_entries_; }
  const std::vector<AxisEntry>& col_entries() const { return col_entries_; }
  std::size_t n_rows() const { return row_entries_.size(); }
  std::size_t n_cols() const { return col_entries_.size(); }
  std::size_t size() const { return cells_.size(); }

  Cell at(std::size_t r, std::size_t c) const { return cells_[r * n_cols() + c]; }
  void set(std::size_t r, std::size_t c, Cell v) { cells_[r * n_cols() + c] = std::move(v); }
  Cell flat(std::size_t i) const { return cells_[i]; }

  /// First flattened row of measurement index m.
  std::size_t row_offset(std::size_t m) const { return row_offsets_[m]; }
  std::size_t col_offset(std::size_t m) const { return col_offsets_[m]; }

  std::optional<std::size_t> row_measurement(const std::string& label) const {
    return find(rows_, label);
  }
  std::optional<std::size_t> col_measurement(const std::string& label) const {
    return find(cols_, label);
  }

  CellId cell_id(std::size_t r, std::size_t c) const {
    const auto& re = row_entries_[r];
    const auto& ce = col_entries_[c];
    return CellId{rows_[re.measurement].label, rows_[re.measurement].outcomes[re.outcome],
                  cols_[ce.measurement].label, cols_[ce.measurement].outcomes[ce.outcome]};
  }

  /// Flat index of a cell named by labels, or nullopt.
  std::optional<std::size_t> index_of(const CellId& id) const {
    auto rm = row_measurement(id.row_measurement);
    auto cm = col_measurement(id.col_measurement);
    if (!rm || !cm) return std::nullopt;
    auto ro = find_outcome(rows_[*rm], id.row_outcome);
    auto co = find_outcome(cols_[*cm], id.col_outcome);
    if (!ro || !co) return std::nullopt;
    return (row_offsets_[*rm] + *ro) * n_cols() + col_offsets_[*cm] + *co;
  }

  /// Same labels, transformed cells.
  template <class Out>
  JointTable<Out> map(const std::function<Out(const Cell&)>& f) const {
    std::vector<Out> out;
    out.reserve(cells_.size());
    for (const auto& x : cells_) out.push_back(f(x));
    return JointTable<Out>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const JointTable& a, const JointTable& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

 private:
  static std::size_t count(const std::vector<MeasurementHeader>& hs) {
    std::size_t n = 0;
    for (const auto& h : hs) n += h.outcomes.size();
    return n;
  }
  static std::vector<AxisEntry> flatten(const std::vector<MeasurementHeader>& hs,
                                        std::vector<std::size_t>& offsets) {
    std::vector<AxisEntry> out;
    for (std::size_t m = 0; m < hs.size(); ++m) {
      offsets.push_back(out.size());
      for (std::size_t o = 0; o < hs[m].outcomes.size(); ++o) out.push_back({m, o});
    }
    return out;
  }
  static std::optional<std::size_t> find(const std::vector<MeasurementHeader>& hs,
                                         const std::string& label) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (hs[i].label == label) return i;
    }
    return std::nullopt;
  }
  static std::optional<std::size_t> find_outcome(const MeasurementHeader& h,
                                                 const std::string& outcome) {
    for (std::size_t i = 0; i < h.outcomes.size(); ++i) {
      if (h.outcomes[i] == outcome) return i;
    }
    return std::nullopt;
  }

  std::vector<MeasurementHeader> rows_;
  std::vector<MeasurementHeader> cols_;
  std::vector<Cell> cells_;
  std::vector<AxisEntry> row_entries_;
  std::vector<AxisEntry> col_entries_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_offsets_;
};

/// Fixed-width text grid with one block per measurement pair. System-1
/// measurement labels get a "1" suffix, system-2 labels a "2" suffix.
std::string render_grid(const std::vector<MeasurementHeader>& rows,
                        const std::vector<MeasurementHeader>& cols,
                        const std::function<std::string(std::size_t, std::size_t)>& cell_text);

}  // namespace modalkit
