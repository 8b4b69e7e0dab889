#include "tactile/stimulus/device.hpp"

#include <cctype>
#include <charconv>

#include "tactile/error.hpp"

namespace tactile::stimulus {

std::uint8_t crc8(std::span<const std::uint8_t> bytes) {
  std::uint8_t crc = 0;
  for (auto b : bytes) {
    crc ^= b;
    for (int i = 0; i < 8; ++i) crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07) : static_cast<std::uint8_t>(crc << 1);
  }
  return crc;
}

DeviceFrame encode_device_frame(const StimulationSchedule& schedule, std::uint8_t seq) {
  DeviceFrame f{};
  f[0] = kSyncByte;
  f[1] = seq;
  for (const auto& e : schedule.events) {
    if (e.amplitude_ua > kMaxAmplitudeUa) {
      throw Error(ErrorCode::AmplitudeOverflow,
                  "electrode " + std::to_string(e.electrode) + ": " + std::to_string(e.amplitude_ua) + " uA > 10 mA");
    }
    if (e.electrode < 0 || e.electrode >= patterns::kElectrodeCount || e.amplitude_ua < 0) {
      throw Error(ErrorCode::OutOfRange, "invalid event for electrode " + std::to_string(e.electrode));
    }
    int code = e.amplitude_ua / kAmplitudeLsbUa;
    if (code == 0 && e.amplitude_ua > 0) code = 1;
    f[2 + e.electrode] = static_cast<std::uint8_t>(code);
  }
  f[kDeviceFrameSize - 1] = crc8(std::span(f).first(kDeviceFrameSize - 1));
  return f;
}

DecodedFrame decode_device_frame(std::span<const std::uint8_t> bytes, ScanMode mode) {
  if (bytes.size() != kDeviceFrameSize) {
    throw Error(ErrorCode::BadLength, "device frame is " + std::to_string(bytes.size()) + " bytes, expected 35");
  }
  if (bytes[0] != kSyncByte) throw Error(ErrorCode::BadSync, "missing sync byte 0xA5");
  const auto expect = crc8(bytes.first(kDeviceFrameSize - 1));
  if (bytes[kDeviceFrameSize - 1] != expect) throw Error(ErrorCode::BadCrc, "CRC mismatch");
  DecodedFrame d;
  d.seq = bytes[1];
  for (int id = 0; id < patterns::kElectrodeCount; ++id) {
    const int code = bytes[2 + id];
    if (code > kMaxAmplitudeUa / kAmplitudeLsbUa) {
      throw Error(ErrorCode::AmplitudeOverflow, "amplitude byte " + std::to_string(code) + " > 250");
    }
    if (code > 0) d.schedule.events.push_back({id, 0, kPulseWidthUs, code * kAmplitudeLsbUa});
  }
  assign_slots(d.schedule.events, mode);
  return d;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string s;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i) s += ' ';
    s += kDigits[bytes[i] >> 4];
    s += kDigits[bytes[i] & 0xF];
  }
  return s;
}

std::vector<std::uint8_t> parse_hex(const std::string& text) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (i + 1 >= text.size()) throw Error(ErrorCode::ParseError, "odd number of hex digits");
    unsigned v = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + i + 2, v, 16);
    if (ec != std::errc{} || p != text.data() + i + 2) {
      throw Error(ErrorCode::ParseError, "bad hex byte '" + text.substr(i, 2) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(v));
    i += 2;
  }
  return out;
}

}  // namespace tactile::stimulus
