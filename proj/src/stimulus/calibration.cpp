#include "tactile/stimulus/calibration.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "tactile/error.hpp"

namespace tactile::stimulus {

CalibrationProfile CalibrationProfile::uniform(int ua, double scale) {
  CalibrationProfile p;
  p.region_ua.fill(ua);
  p.global_scale = scale;
  return p;
}

int CalibrationProfile::electrode_amplitude(int electrode) const {
  const double scaled = electrode_base_amplitude(electrode) * global_scale;
  // Tolerate representation error so 0.7 * 1000 stays 700.
  return static_cast<int>(std::floor(scaled / kAmplitudeStepUa + 1e-9)) * kAmplitudeStepUa;
}

namespace {

void check_amplitude(int ua, const std::string& where) {
  if (ua % kAmplitudeStepUa != 0) {
    throw Error(ErrorCode::StepNotMultipleOf10uA, where + ": " + std::to_string(ua) + " uA is not a multiple of 10");
  }
  if (ua < 0 || ua > kMaxAmplitudeUa) {
    throw Error(ErrorCode::OutOfRange, where + ": " + std::to_string(ua) + " uA outside [0, 10000]");
  }
}

void check_scale(double s, const std::string& where) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::OutOfRange, where + ": scale outside [0, 1]");
}

void check_region(int r, const std::string& where) {
  if (r < 0 || r >= patterns::kRegionCount) {
    throw Error(ErrorCode::RegionOutOfRange, where + ": region " + std::to_string(r) + " outside [0, 8]");
  }
}

std::string where_of(const CalibrationStep& s) {
  return s.line > 0 ? "calibration line " + std::to_string(s.line) : "calibration";
}

}  // namespace

void CalibrationProfile::validate() const {
  for (int r = 0; r < patterns::kRegionCount; ++r) {
    check_amplitude(region_ua[r], "region " + std::to_string(r));
  }
  check_scale(global_scale, "profile");
}

std::vector<CalibrationStep> parse_calibration_script(const std::string& text) {
  std::vector<CalibrationStep> steps;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string op, target, value, extra;
    if (!(ls >> op)) continue;
    const std::string where = "calibration line " + std::to_string(line_no);
    CalibrationStep step;
    step.line = line_no;
    if (op == "scale") {
      if (!(ls >> value) || (ls >> extra)) throw Error(ErrorCode::ParseError, where + ": expected 'scale <factor>'");
      step.op = CalibrationStep::Op::Scale;
      const auto* end = value.data() + value.size();
      auto [p, ec] = std::from_chars(value.data(), end, step.scale);
      if (ec != std::errc{} || p != end) throw Error(ErrorCode::ParseError, where + ": bad scale '" + value + "'");
      check_scale(step.scale, where);
      steps.push_back(step);
      continue;
    }
    if (op == "set") {
      step.op = CalibrationStep::Op::Set;
    } else if (op == "adjust") {
      step.op = CalibrationStep::Op::Adjust;
    } else if (op == "match") {
      step.op = CalibrationStep::Op::Match;
    } else {
      throw Error(ErrorCode::ParseError, where + ": unknown operation '" + op + "'");
    }
    if (!(ls >> target >> value) || (ls >> extra)) {
      throw Error(ErrorCode::ParseError, where + ": expected '" + op + " <region> <uA>'");
    }
    if (target == "center" || target == "centre") {
      step.region = patterns::kCenterRegion;
    } else {
      const auto* end = target.data() + target.size();
      auto [p, ec] = std::from_chars(target.data(), end, step.region);
      if (ec != std::errc{} || p != end) throw Error(ErrorCode::ParseError, where + ": bad region '" + target + "'");
    }
    check_region(step.region, where);
    const char* first = value.data();
    if (!value.empty() && value[0] == '+') ++first;
    const auto* end = value.data() + value.size();
    auto [p, ec] = std::from_chars(first, end, step.value_ua);
    if (ec != std::errc{} || p != end) throw Error(ErrorCode::ParseError, where + ": bad amplitude '" + value + "'");
    if (step.value_ua % kAmplitudeStepUa != 0) {
      throw Error(ErrorCode::StepNotMultipleOf10uA, where + ": " + value + " uA is not a multiple of 10");
    }
    steps.push_back(step);
  }
  return steps;
}

CalibrationProfile run_calibration_session(const std::vector<CalibrationStep>& steps) {
  using Op = CalibrationStep::Op;
  for (const auto& s : steps) {
    const auto where = where_of(s);
    if (s.op == Op::Scale) {
      check_scale(s.scale, where);
      continue;
    }
    check_region(s.region, where);
    if (s.value_ua % kAmplitudeStepUa != 0) {
      throw Error(ErrorCode::StepNotMultipleOf10uA, where + ": step of " + std::to_string(s.value_ua) + " uA");
    }
  }

  auto apply = [](int current, const CalibrationStep& s) {
    const int next = s.op == Op::Set ? s.value_ua : current + s.value_ua;
    check_amplitude(next, where_of(s));
    return next;
  };

  int centre = 0;
  for (const auto& s : steps) {
    if (s.op == Op::Scale || s.region != patterns::kCenterRegion) continue;
    if (s.op == Op::Match) centre = apply(centre, {Op::Set, s.region, centre + s.value_ua, 1.0, s.line});
    else centre = apply(centre, s);
  }

  CalibrationProfile p = CalibrationProfile::uniform(centre);
  for (const auto& s : steps) {
    if (s.op == Op::Scale || s.region == patterns::kCenterRegion) continue;
    int& a = p.region_ua[s.region];
    if (s.op == Op::Match) a = apply(0, {Op::Set, s.region, centre + s.value_ua, 1.0, s.line});
    else a = apply(a, s);
  }
  for (const auto& s : steps) {
    if (s.op == Op::Scale) p.global_scale = s.scale;
  }
  return p;
}

CalibrationProfile default_profile() { return CalibrationProfile::uniform(1000); }

std::string format_profile(const CalibrationProfile& p) {
  std::ostringstream out;
  for (int r = 0; r < patterns::kRegionCount; ++r) {
    out << "region " << r << ' ' << p.region_ua[r] << " uA";
    if (r == patterns::kCenterRegion) out << " (center)";
    out << '\n';
  }
  out << "scale " << p.global_scale << '\n';
  return out.str();
}

}  // namespace tactile::stimulus
