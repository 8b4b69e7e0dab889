#pragma once

#include <array>
#include <string>
#include <vector>

#include "tactile/patterns/grid.hpp"

namespace tactile::stimulus {

inline constexpr int kMaxAmplitudeUa = 10000;
inline constexpr int kAmplitudeStepUa = 10;

struct CalibrationProfile {
  std::array<int, patterns::kRegionCount> region_ua{};
  double global_scale = 1.0;

  static CalibrationProfile uniform(int ua, double scale = 1.0);

  int region_amplitude(int region) const { return region_ua.at(region); }
  int electrode_base_amplitude(int electrode) const {
    return region_ua[patterns::region_of_electrode(electrode)];
  }
  // region amplitude x global scale, rounded down to the 10 uA step.
  int electrode_amplitude(int electrode) const;

  // Throws Error{StepNotMultipleOf10uA} or Error{OutOfRange}.
  void validate() const;

  bool operator==(const CalibrationProfile&) const = default;
};

// One line of a calibration script:
//   set <region|center> <uA>     absolute amplitude
//   adjust <region|center> <+-uA> relative step (raise to discomfort, back off)
//   match <region> <+-uA>         amplitude relative to the centre region
//   scale <factor>                global scale in [0, 1]
struct CalibrationStep {
  enum class Op { Set, Adjust, Match, Scale } op = Op::Set;
  int region = patterns::kCenterRegion;
  int value_ua = 0;
  double scale = 1.0;
  int line = 0;  // 1-based script line, 0 when built in code
};

// Throws Error{ParseError}, Error{RegionOutOfRange},
// Error{StepNotMultipleOf10uA}.
std::vector<CalibrationStep> parse_calibration_script(const std::string& text);

// Applies the centre region's steps first, then the other regions (unset
// ones inherit the centre), then the global scale. Throws
// Error{RegionOutOfRange}, Error{StepNotMultipleOf10uA} or
// Error{OutOfRange} for amplitudes leaving [0, 10 mA].
CalibrationProfile run_calibration_session(const std::vector<CalibrationStep>& steps);

// Default when no calibration is configured: 1 mA everywhere.
CalibrationProfile default_profile();

std::string format_profile(const CalibrationProfile& p);

}  // namespace tactile::stimulus
