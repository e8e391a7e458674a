#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wnc {

enum class CellState { value, infeasible, diverged };

/// One y-value of a sweep. Infeasible and diverged cells carry no number.
class Cell {
 public:
  static Cell of(double v) noexcept { return Cell(v, CellState::value); }
  static Cell infeasible() noexcept { return Cell(0.0, CellState::infeasible); }
  static Cell diverged() noexcept { return Cell(0.0, CellState::diverged); }

  CellState state() const noexcept { return state_; }
  bool has_value() const noexcept { return state_ == CellState::value; }
  double value() const;

 private:
  Cell(double v, CellState s) noexcept : value_(v), state_(s) {}
  double value_;
  CellState state_;
};

struct SweepRow {
  double x = 0.0;
  std::vector<Cell> cells;
};

struct SweepResult {
  std::string x_label;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  /// seed, replicas, horizon, provenance, ...
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Throws std::out_of_range for an unknown column.
  std::size_t column_index(std::string_view name) const;
  const Cell& at(std::size_t row, std::string_view column) const;
};

/// CSV text: header `x_label,col1,...`, one row per grid point, numbers as
/// %.10g, non-value cells as the literal token INF.
void write_csv(const SweepResult& result, std::ostream& out);
std::string to_csv(const SweepResult& result);

/// Fixed-width table for terminals.
void write_summary(const SweepResult& result, std::ostream& out);

}  // namespace wnc
