#include "modalkit/table.hpp"

#include <algorithm>
#include <sstream>

namespace modalkit {

namespace {

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string center(const std::string& s, std::size_t w) {
  if (s.size() >= w) return s;
  const std::size_t left = (w - s.size()) / 2;
  return std::string(left, ' ') + s + std::string(w - s.size() - left, ' ');
}

}  // namespace

std::string render_grid(const std::vector<MeasurementHeader>& rows,
                        const std::vector<MeasurementHeader>& cols,
                        const std::function<std::string(std::size_t, std::size_t)>& cell_text) {
  std::size_t n_rows = 0;
  for (const auto& h : rows) n_rows += h.outcomes.size();
  std::vector<std::size_t> widths;
  for (const auto& h : cols) {
    for (const auto& o : h.outcomes) widths.push_back(o.size());
  }
  std::vector<std::vector<std::string>> text(n_rows, std::vector<std::string>(widths.size()));
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < widths.size(); ++c) {
      text[r][c] = cell_text(r, c);
      widths[c] = std::max(widths[c], text[r][c].size());
    }
  }

  std::size_t label_w = 0, outcome_w = 0;
  for (const auto& h : rows) {
    label_w = std::max(label_w, h.label.size() + 1);
    for (const auto& o : h.outcomes) outcome_w = std::max(outcome_w, o.size());
  }
  const std::size_t stub_w = label_w + 1 + outcome_w + 1;

  // Block widths per column measurement.
  std::vector<std::size_t> block_w;
  {
    std::size_t c = 0;
    for (const auto& h : cols) {
      std::size_t w = 0;
      for (std::size_t k = 0; k < h.outcomes.size(); ++k, ++c) w += widths[c] + 2;
      block_w.push_back(std::max(w, h.label.size() + 3));
    }
  }

  std::ostringstream os;
  auto rule = [&] {
    os << std::string(stub_w, '-') << '+';
    for (auto w : block_w) os << std::string(w, '-') << '+';
    os << '\n';
  };

  os << std::string(stub_w, ' ') << '|';
  for (std::size_t m = 0; m < cols.size(); ++m) os << center(cols[m].label + "2", block_w[m]) << '|';
  os << '\n';

  os << std::string(stub_w, ' ') << '|';
  {
    std::size_t c = 0;
    for (std::size_t m = 0; m < cols.size(); ++m) {
      std::string block;
      for (const auto& o : cols[m].outcomes) block += " " + pad_right(o, widths[c++]) + " ";
      os << pad_right(block, block_w[m]) << '|';
    }
  }
  os << '\n';
  rule();

  std::size_t r = 0;
  for (const auto& h : rows) {
    for (std::size_t o = 0; o < h.outcomes.size(); ++o, ++r) {
      os << pad_right(o == 0 ? h.label + "1" : "", label_w) << ' ' << pad_right(h.outcomes[o], outcome_w)
         << ' ' << '|';
      std::size_t c = 0;
      for (std::size_t m = 0; m < cols.size(); ++m) {
        std::string block;
        for (std::size_t k = 0; k < cols[m].outcomes.size(); ++k, ++c) {
          block += " " + pad_right(text[r][c], widths[c]) + " ";
        }
        os << pad_right(block, block_w[m]) << '|';
      }
      os << '\n';
    }
    rule();
  }
  return os.str();
}

}  // namespace modalkit
