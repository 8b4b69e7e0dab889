#include "tactile/stimulus/schedule.hpp"

#include "tactile/error.hpp"

namespace tactile::stimulus {

int StimulationSchedule::occupied_us() const {
  return events.empty() ? 0 : events.back().start_us + events.back().width_us + kDischargeUs;
}

void assign_slots(std::vector<StimEvent>& events, ScanMode mode) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    const int slot = mode == ScanMode::Compact ? static_cast<int>(i) : events[i].electrode;
    events[i].start_us = slot * kSlotUs;
  }
}

StimulationSchedule compile_schedule(const patterns::PatternFrame& frame,
                                     const std::optional<CalibrationProfile>& calibration,
                                     ScanMode mode) {
  if (!calibration) throw Error(ErrorCode::CalibrationMissing, "no calibration profile loaded");
  calibration->validate();
  StimulationSchedule s;
  const auto active = frame.activation();
  for (int id = 0; id < patterns::kElectrodeCount; ++id) {
    if (active[id]) s.events.push_back({id, 0, kPulseWidthUs, calibration->electrode_amplitude(id)});
  }
  assign_slots(s.events, mode);
  return s;
}

void write_schedule_csv_header(std::ostream& out) { out << "cycle,electrode,start_us,width_us,amp_uA\n"; }

void write_schedule_csv(std::ostream& out, std::int64_t cycle, const StimulationSchedule& s) {
  for (const auto& e : s.events) {
    out << cycle << ',' << e.electrode << ',' << e.start_us << ',' << e.width_us << ',' << e.amplitude_ua
        << '\n';
  }
}

}  // namespace tactile::stimulus
