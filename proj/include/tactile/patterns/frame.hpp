#pragma once

#include <bitset>
#include <cstdint>
#include <string>
#include <variant>

#include "tactile/context/orientation.hpp"
#include "tactile/geometry/types.hpp"
#include "tactile/patterns/grid.hpp"

namespace tactile::patterns {

struct GridOffset {
  int dcol = 0;
  int drow = 0;
  bool operator==(const GridOffset&) const = default;
};

namespace provenance {
struct Off {
  bool operator==(const Off&) const = default;
};
struct FaceRing {
  std::int64_t n = 0;
  bool operator==(const FaceRing&) const = default;
};
struct EdgeLine {
  geometry::EdgeBin bin = geometry::EdgeBin::H;
  std::int64_t n = 0;
  bool operator==(const EdgeLine&) const = default;
};
struct CornerPoint {
  std::int64_t n = 0;
  bool operator==(const CornerPoint&) const = default;
};
struct ContactShifted {
  context::OrientationLevel level = context::OrientationLevel::ShallowRight;
  bool operator==(const ContactShifted&) const = default;
};
struct TextureShifted {
  GridOffset offset;
  bool operator==(const TextureShifted&) const = default;
};
}  // namespace provenance

using Provenance = std::variant<provenance::Off, provenance::FaceRing, provenance::EdgeLine,
                                provenance::CornerPoint, provenance::ContactShifted,
                                provenance::TextureShifted>;

std::string provenance_name(const Provenance& p);

// Binary activation over the array. The frame keeps the full 6x6 lattice it
// was built on so wrapped translations compose exactly; the activation view
// always masks out the excluded corners.
class PatternFrame {
 public:
  PatternFrame() = default;
  PatternFrame(std::uint64_t lattice, Provenance provenance)
      : lattice_(lattice & kLatticeMask), provenance_(provenance) {}

  static PatternFrame off() { return {}; }

  std::uint64_t lattice() const { return lattice_; }
  const Provenance& provenance() const { return provenance_; }

  bool cell(int row, int col) const {
    return on_grid(row, col) && !is_excluded(row, col) && ((lattice_ >> cell_bit(row, col)) & 1u);
  }
  bool electrode(int id) const { return cell(electrode_cell(id).row, electrode_cell(id).col); }
  std::bitset<kElectrodeCount> activation() const;
  int active_count() const { return static_cast<int>(activation().count()); }
  bool any() const { return (lattice_ & kActiveMask) != 0; }

  // 36 characters, row-major, '#' active and '.' inactive or excluded.
  std::string grid_string() const;

  bool operator==(const PatternFrame&) const = default;

  static constexpr std::uint64_t kLatticeMask = (std::uint64_t{1} << kCellCount) - 1;

 private:
  std::uint64_t lattice_ = 0;
  Provenance provenance_;
};

// Inverse of grid_string(); throws Error{ParseError}.
PatternFrame frame_from_grid_string(const std::string& grid);

}  // namespace tactile::patterns
