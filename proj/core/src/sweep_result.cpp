#include "wnc/sweep_result.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wnc {
namespace {

std::string render(const Cell& c) {
  if (!c.has_value()) return "INF";
  return fmt::format("{:.10g}", c.value());
}

}  // namespace

double Cell::value() const {
  if (state_ != CellState::value) {
    throw std::logic_error("cell holds no value");
  }
  return value_;
}

std::size_t SweepResult::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw std::out_of_range("no column named '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

const Cell& SweepResult::at(std::size_t row, std::string_view column) const {
  return rows.at(row).cells.at(column_index(column));
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << result.x_label;
  for (const auto& c : result.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : result.rows) {
    out << fmt::format("{:.10g}", row.x);
    for (const auto& cell : row.cells) out << ',' << render(cell);
    out << '\n';
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(result, os);
  return os.str();
}

void write_summary(const SweepResult& result, std::ostream& out) {
  std::vector<std::size_t> width;
  width.push_back(std::max<std::size_t>(result.x_label.size(), 10));
  for (const auto& c : result.columns) width.push_back(std::max<std::size_t>(c.size(), 12));

  out << fmt::format("{:>{}}", result.x_label, width[0]);
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out << "  " << fmt::format("{:>{}}", result.columns[i], width[i + 1]);
  }
  out << '\n';
  for (const auto& row : result.rows) {
    out << fmt::format("{:>{}.4g}", row.x, width[0]);
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      const auto& cell = row.cells[i];
      const std::string text = cell.has_value() ? fmt::format("{:.5g}", cell.value()) : std::string("INF");
      out << "  " << fmt::format("{:>{}}", text, width[i + 1]);
    }
    out << '\n';
  }
}

}  // namespace wnc
