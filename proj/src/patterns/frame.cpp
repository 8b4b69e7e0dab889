#include "tactile/patterns/frame.hpp"

#include "tactile/error.hpp"

namespace tactile::patterns {

std::string provenance_name(const Provenance& p) {
  struct Visitor {
    std::string operator()(const provenance::Off&) const { return "Off"; }
    std::string operator()(const provenance::FaceRing& r) const {
      return "FaceRing(" + std::to_string(r.n) + ")";
    }
    std::string operator()(const provenance::EdgeLine& e) const {
      return "EdgeLine(" + std::string(geometry::edge_bin_name(e.bin)) + "," + std::to_string(e.n) + ")";
    }
    std::string operator()(const provenance::CornerPoint& c) const {
      return "CornerPoint(" + std::to_string(c.n) + ")";
    }
    std::string operator()(const provenance::ContactShifted& c) const {
      return "ContactShifted(" + std::string(context::orientation_name(c.level)) + ")";
    }
    std::string operator()(const provenance::TextureShifted& t) const {
      return "TextureShifted(" + std::to_string(t.offset.dcol) + "," + std::to_string(t.offset.drow) + ")";
    }
  };
  return std::visit(Visitor{}, p);
}

std::bitset<kElectrodeCount> PatternFrame::activation() const {
  std::bitset<kElectrodeCount> bits;
  for (int id = 0; id < kElectrodeCount; ++id) bits[id] = electrode(id);
  return bits;
}

std::string PatternFrame::grid_string() const {
  std::string s(kCellCount, '.');
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (cell(r, c)) s[cell_bit(r, c)] = '#';
    }
  }
  return s;
}

PatternFrame frame_from_grid_string(const std::string& grid) {
  if (grid.size() != static_cast<std::size_t>(kCellCount)) {
    throw Error(ErrorCode::ParseError, "grid string must have 36 characters");
  }
  std::uint64_t lattice = 0;
  for (int i = 0; i < kCellCount; ++i) {
    if (grid[i] == '#') {
      if (is_excluded(i / kCols, i % kCols)) {
        throw Error(ErrorCode::ParseError, "excluded corner marked active");
      }
      lattice |= std::uint64_t{1} << i;
    } else if (grid[i] != '.') {
      throw Error(ErrorCode::ParseError, "grid string may only contain '#' and '.'");
    }
  }
  return PatternFrame(lattice, provenance::Off{});
}

}  // namespace tactile::patterns
