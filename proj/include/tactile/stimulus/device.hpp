#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tactile/stimulus/schedule.hpp"

namespace tactile::stimulus {

// Wire record: sync, sequence, 32 amplitude bytes (40 uA per LSB), CRC-8.
inline constexpr std::size_t kDeviceFrameSize = 35;
inline constexpr std::uint8_t kSyncByte = 0xA5;
inline constexpr int kAmplitudeLsbUa = 40;

using DeviceFrame = std::array<std::uint8_t, kDeviceFrameSize>;

// CRC-8, polynomial 0x07, init 0x00, no reflection, no final xor.
std::uint8_t crc8(std::span<const std::uint8_t> bytes);

// amplitude / 40 rounded down, but a firing electrode never encodes as 0.
// Throws Error{AmplitudeOverflow} above 10 mA.
DeviceFrame encode_device_frame(const StimulationSchedule& schedule, std::uint8_t seq);

struct DecodedFrame {
  std::uint8_t seq = 0;
  StimulationSchedule schedule;
};

// Checks length, then sync, then CRC (Error{BadLength}, Error{BadSync},
// Error{BadCrc}). Amplitudes come back as byte * 40 uA and start times
// follow `mode`.
DecodedFrame decode_device_frame(std::span<const std::uint8_t> bytes, ScanMode mode = ScanMode::Compact);

// "A5 00 1F ..." and back; parse accepts any whitespace. Throws
// Error{ParseError}.
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_hex(const std::string& text);

}  // namespace tactile::stimulus
