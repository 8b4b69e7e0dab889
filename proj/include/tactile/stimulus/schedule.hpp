#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "tactile/patterns/frame.hpp"
#include "tactile/stimulus/calibration.hpp"

namespace tactile::stimulus {

inline constexpr int kCyclePeriodUs = 8000;  // 125 Hz
inline constexpr int kPulseWidthUs = 200;
inline constexpr int kDischargeUs = 45;
inline constexpr int kSlotUs = kPulseWidthUs + kDischargeUs;

// Compact packs active electrodes into consecutive slots; FixedSlot keeps
// every electrode at id * 245 us whether or not it fires.
enum class ScanMode : std::uint8_t { Compact, FixedSlot };

struct StimEvent {
  int electrode = 0;
  int start_us = 0;
  int width_us = kPulseWidthUs;
  int amplitude_ua = 0;
  bool operator==(const StimEvent&) const = default;
};

// Monophasic anodic, controlled current.
struct StimulationSchedule {
  int cycle_period_us = kCyclePeriodUs;
  std::vector<StimEvent> events;  // ordered by electrode id
  bool operator==(const StimulationSchedule&) const = default;

  int occupied_us() const;  // end of the last discharge interval
};

// Throws Error{CalibrationMissing} when no profile is given, and the
// profile's validate() errors.
StimulationSchedule compile_schedule(const patterns::PatternFrame& frame,
                                     const std::optional<CalibrationProfile>& calibration,
                                     ScanMode mode = ScanMode::Compact);

// Start times implied by the scan mode for an id-ordered event list.
void assign_slots(std::vector<StimEvent>& events, ScanMode mode);

// CSV rows `cycle,electrode,start_us,width_us,amp_uA`.
void write_schedule_csv_header(std::ostream& out);
void write_schedule_csv(std::ostream& out, std::int64_t cycle, const StimulationSchedule& s);

}  // namespace tactile::stimulus
