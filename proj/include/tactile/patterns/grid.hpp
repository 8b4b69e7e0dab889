#pragma once

#include <array>
#include <cstdint>

namespace tactile::patterns {

// 6x6 electrode array with the four corner sites unpopulated. Row 0 is the
// distal (forward) edge, column 0 the left edge.
inline constexpr int kRows = 6;
inline constexpr int kCols = 6;
inline constexpr int kCellCount = kRows * kCols;
inline constexpr int kElectrodeCount = 32;
inline constexpr double kElectrodeSpacingMm = 2.0;
inline constexpr double kElectrodeDiameterMm = 1.4;

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

constexpr bool is_excluded(int row, int col) {
  return (row == 0 || row == kRows - 1) && (col == 0 || col == kCols - 1);
}

constexpr bool on_grid(int row, int col) {
  return row >= 0 && row < kRows && col >= 0 && col < kCols;
}

constexpr int cell_bit(int row, int col) { return row * kCols + col; }

namespace detail {
constexpr std::array<int, kCellCount> make_ids() {
  std::array<int, kCellCount> ids{};
  int next = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) ids[cell_bit(r, c)] = is_excluded(r, c) ? -1 : next++;
  }
  return ids;
}
constexpr std::array<Cell, kElectrodeCount> make_cells() {
  std::array<Cell, kElectrodeCount> cells{};
  int next = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (!is_excluded(r, c)) cells[next++] = {r, c};
    }
  }
  return cells;
}
}  // namespace detail

inline constexpr std::array<int, kCellCount> kElectrodeIds = detail::make_ids();
inline constexpr std::array<Cell, kElectrodeCount> kElectrodeCells = detail::make_cells();

// Row-major electrode id, -1 for the excluded corners.
constexpr int electrode_id(int row, int col) { return kElectrodeIds[cell_bit(row, col)]; }
constexpr Cell electrode_cell(int id) { return kElectrodeCells[id]; }

inline constexpr std::uint64_t kActiveMask = [] {
  std::uint64_t m = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (!is_excluded(r, c)) m |= std::uint64_t{1} << cell_bit(r, c);
    }
  }
  return m;
}();

// Calibration regions: 3x3 blocks of 2x2 cells, numbered row-major; 4 is
// the centre block.
inline constexpr int kRegionCount = 9;
inline constexpr int kCenterRegion = 4;
constexpr int region_of_cell(int row, int col) { return (row / 2) * 3 + col / 2; }
constexpr int region_of_electrode(int id) {
  return region_of_cell(electrode_cell(id).row, electrode_cell(id).col);
}

}  // namespace tactile::patterns
