// Copyright 2026 The p2v-safety Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef P2V__PSM_CODEC_HPP_
#define P2V__PSM_CODEC_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p2v::psm
{

// Fixed-layout Personal Safety Message profile. Units follow the J2735
// conventions: 1e-7 degree positions, 0.02 m/s speed, 0.0125 degree heading.
//
// Frame layout (20 octets, big-endian):
//   [0]      tag 0x20
//   [1]      profile version 0x01
//   [2]      msg_count
//   [3..4]   second_mark
//   [5..8]   latitude (two's complement)
//   [9..12]  longitude (two's complement)
//   [13..14] speed
//   [15..16] heading
//   [17]     basic_type:3 | device_use_state:3 | cross_request:1 | reserved:1
//   [18]     cluster_size:4 | attachment:4
//   [19]     XOR of octets 0..18

inline constexpr std::size_t kFrameSize = 20;
inline constexpr std::uint8_t kMessageTag = 0x20;
inline constexpr std::uint8_t kProfileVersion = 0x01;

inline constexpr std::int32_t kMaxLatitude = 900000000;
inline constexpr std::int32_t kMaxLongitude = 1800000000;
inline constexpr std::int32_t kSpeedUnavailable = 8191;
inline constexpr std::int32_t kHeadingUnavailable = 28799;
inline constexpr double kDegreesPerLatLonUnit = 1e-7;
inline constexpr double kMpsPerSpeedUnit = 0.02;
inline constexpr double kDegreesPerHeadingUnit = 0.0125;

enum class BasicType : std::uint8_t {
  kUnavailable = 0,
  kPedestrian,
  kPedalcyclist,
  kPublicSafetyWorker,
  kAnimal,
};

enum class DeviceUseState : std::uint8_t {
  kUnavailable = 0,
  kIdle,
  kListeningToAudio,
  kTyping,
  kCalling,
  kPlaying,
  kReading,
};

enum class Attachment : std::uint8_t {
  kUnavailable = 0,
  kStroller,
  kBicycleTrailer,
  kCart,
  kWheelchair,
  kOtherWalkAssist,
  kPet,
};

inline constexpr std::uint8_t kBasicTypeCount = 5;
inline constexpr std::uint8_t kDeviceUseStateCount = 7;
inline constexpr std::uint8_t kAttachmentCount = 7;

// Numeric fields are held in wide signed integers so that out-of-range
// values stay representable and reportable by validate().
struct PsmMessage
{
  std::int32_t msg_count{0};
  std::int32_t second_mark{0};
  std::int32_t latitude{0};
  std::int32_t longitude{0};
  std::int32_t speed{0};
  std::int32_t heading{0};
  BasicType basic_type{BasicType::kUnavailable};
  DeviceUseState device_use_state{DeviceUseState::kUnavailable};
  bool cross_request{false};
  std::int32_t cluster_size{0};
  Attachment attachment{Attachment::kUnavailable};

  bool operator==(const PsmMessage &) const = default;
};

using WireFrame = std::array<std::uint8_t, kFrameSize>;

struct Violation
{
  std::string field;
  std::string bound;

  bool operator==(const Violation &) const = default;
};

class CodecError : public std::runtime_error
{
public:
  enum class Kind {
    kInvalidField,
    kBadLength,
    kBadTag,
    kBadVersion,
    kBadChecksum,
    kFieldOutOfRange,
    kBadHex,
  };

  CodecError(Kind kind, std::string field = {})
  : std::runtime_error(describe(kind, field)), kind_(kind), field_(std::move(field))
  {
  }

  Kind kind() const noexcept { return kind_; }
  const std::string & field() const noexcept { return field_; }

  // Stable error name, e.g. "BadLength" or "FieldOutOfRange(latitude)".
  static std::string describe(Kind kind, const std::string & field)
  {
    std::string name;
    switch (kind) {
      case Kind::kInvalidField: name = "InvalidField"; break;
      case Kind::kBadLength: name = "BadLength"; break;
      case Kind::kBadTag: name = "BadTag"; break;
      case Kind::kBadVersion: name = "BadVersion"; break;
      case Kind::kBadChecksum: name = "BadChecksum"; break;
      case Kind::kFieldOutOfRange: name = "FieldOutOfRange"; break;
      case Kind::kBadHex: name = "BadHex"; break;
    }
    if (!field.empty()) {
      name += "(" + field + ")";
    }
    return name;
  }

private:
  Kind kind_;
  std::string field_;
};

/// Lists every invariant violation in field declaration order.
inline std::vector<Violation> validate(const PsmMessage & msg)
{
  std::vector<Violation> out;
  auto check = [&out](bool ok, const char * field, const char * bound) {
    if (!ok) {
      out.push_back({field, bound});
    }
  };
  check(msg.msg_count >= 0 && msg.msg_count < 128, "msg_count", "0..127");
  check(msg.second_mark >= 0 && msg.second_mark < 60000, "second_mark", "0..59999");
  check(
    msg.latitude >= -kMaxLatitude && msg.latitude <= kMaxLatitude, "latitude",
    "-900000000..900000000");
  check(
    msg.longitude >= -kMaxLongitude && msg.longitude <= kMaxLongitude, "longitude",
    "-1800000000..1800000000");
  check(msg.speed >= 0 && msg.speed <= kSpeedUnavailable, "speed", "0..8191");
  check(msg.heading >= 0 && msg.heading <= kHeadingUnavailable, "heading", "0..28799");
  check(static_cast<std::uint8_t>(msg.basic_type) < kBasicTypeCount, "basic_type", "0..4");
  check(
    static_cast<std::uint8_t>(msg.device_use_state) < kDeviceUseStateCount, "device_use_state",
    "0..6");
  check(msg.cluster_size >= 0 && msg.cluster_size < 16, "cluster_size", "0..15");
  check(static_cast<std::uint8_t>(msg.attachment) < kAttachmentCount, "attachment", "0..6");
  return out;
}

namespace detail
{

inline void put_be(std::uint8_t * dst, std::uint32_t value, int octets)
{
  for (int i = 0; i < octets; ++i) {
    dst[i] = static_cast<std::uint8_t>(value >> (8 * (octets - 1 - i)));
  }
}

inline std::uint32_t get_be(const std::uint8_t * src, int octets)
{
  std::uint32_t value = 0;
  for (int i = 0; i < octets; ++i) {
    value = (value << 8) | src[i];
  }
  return value;
}

inline std::uint8_t xor_checksum(std::span<const std::uint8_t> bytes)
{
  std::uint8_t sum = 0;
  for (auto b : bytes) {
    sum ^= b;
  }
  return sum;
}

}  // namespace detail

/// Serialises a message into the 20-octet frame. Never clamps: any invariant
/// violation throws CodecError(kInvalidField) naming the first bad field.
inline WireFrame encode_psm(const PsmMessage & msg)
{
  if (auto violations = validate(msg); !violations.empty()) {
    throw CodecError(CodecError::Kind::kInvalidField, violations.front().field);
  }
  WireFrame frame{};
  frame[0] = kMessageTag;
  frame[1] = kProfileVersion;
  frame[2] = static_cast<std::uint8_t>(msg.msg_count);
  detail::put_be(&frame[3], static_cast<std::uint32_t>(msg.second_mark), 2);
  detail::put_be(&frame[5], static_cast<std::uint32_t>(msg.latitude), 4);
  detail::put_be(&frame[9], static_cast<std::uint32_t>(msg.longitude), 4);
  detail::put_be(&frame[13], static_cast<std::uint32_t>(msg.speed), 2);
  detail::put_be(&frame[15], static_cast<std::uint32_t>(msg.heading), 2);
  frame[17] = static_cast<std::uint8_t>(
    (static_cast<std::uint8_t>(msg.basic_type) << 5) |
    (static_cast<std::uint8_t>(msg.device_use_state) << 2) | (msg.cross_request ? 0x02 : 0x00));
  frame[18] = static_cast<std::uint8_t>(
    (msg.cluster_size << 4) | static_cast<std::uint8_t>(msg.attachment));
  frame[19] = detail::xor_checksum(std::span<const std::uint8_t>(frame.data(), kFrameSize - 1));
  return frame;
}

/// Parses arbitrary bytes. Throws CodecError with kind BadLength, BadTag,
/// BadVersion, BadChecksum or FieldOutOfRange(name), checked in that order.
inline PsmMessage decode_psm(std::span<const std::uint8_t> bytes)
{
  using Kind = CodecError::Kind;
  if (bytes.size() != kFrameSize) {
    throw CodecError(Kind::kBadLength);
  }
  if (bytes[0] != kMessageTag) {
    throw CodecError(Kind::kBadTag);
  }
  if (bytes[1] != kProfileVersion) {
    throw CodecError(Kind::kBadVersion);
  }
  if (detail::xor_checksum(bytes.first(kFrameSize - 1)) != bytes[kFrameSize - 1]) {
    throw CodecError(Kind::kBadChecksum);
  }
  if ((bytes[17] & 0x01) != 0) {
    throw CodecError(Kind::kFieldOutOfRange, "reserved");
  }

  PsmMessage msg;
  msg.msg_count = bytes[2];
  msg.second_mark = static_cast<std::int32_t>(detail::get_be(&bytes[3], 2));
  msg.latitude = static_cast<std::int32_t>(detail::get_be(&bytes[5], 4));
  msg.longitude = static_cast<std::int32_t>(detail::get_be(&bytes[9], 4));
  msg.speed = static_cast<std::int32_t>(detail::get_be(&bytes[13], 2));
  msg.heading = static_cast<std::int32_t>(detail::get_be(&bytes[15], 2));
  msg.basic_type = static_cast<BasicType>(bytes[17] >> 5);
  msg.device_use_state = static_cast<DeviceUseState>((bytes[17] >> 2) & 0x07);
  msg.cross_request = (bytes[17] & 0x02) != 0;
  msg.cluster_size = bytes[18] >> 4;
  msg.attachment = static_cast<Attachment>(bytes[18] & 0x0F);

  if (auto violations = validate(msg); !violations.empty()) {
    throw CodecError(Kind::kFieldOutOfRange, violations.front().field);
  }
  return msg;
}

// Lowercase, no separators.
inline std::string to_hex(std::span<const std::uint8_t> bytes)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

inline std::vector<std::uint8_t> from_hex(std::string_view text)
{
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (text.size() % 2 != 0) {
    throw CodecError(CodecError::Kind::kBadLength);
  }
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) {
      throw CodecError(CodecError::Kind::kBadHex);
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

// Enum spellings used by the CLI and decode printouts.

inline std::string_view to_token(BasicType v)
{
  switch (v) {
    case BasicType::kUnavailable: return "unavailable";
    case BasicType::kPedestrian: return "pedestrian";
    case BasicType::kPedalcyclist: return "pedalcyclist";
    case BasicType::kPublicSafetyWorker: return "public_safety_worker";
    case BasicType::kAnimal: return "animal";
  }
  return "invalid";
}

inline std::string_view to_token(DeviceUseState v)
{
  switch (v) {
    case DeviceUseState::kUnavailable: return "unavailable";
    case DeviceUseState::kIdle: return "idle";
    case DeviceUseState::kListeningToAudio: return "listening_to_audio";
    case DeviceUseState::kTyping: return "typing";
    case DeviceUseState::kCalling: return "calling";
    case DeviceUseState::kPlaying: return "playing";
    case DeviceUseState::kReading: return "reading";
  }
  return "invalid";
}

inline std::string_view to_token(Attachment v)
{
  switch (v) {
    case Attachment::kUnavailable: return "unavailable";
    case Attachment::kStroller: return "stroller";
    case Attachment::kBicycleTrailer: return "bicycle_trailer";
    case Attachment::kCart: return "cart";
    case Attachment::kWheelchair: return "wheelchair";
    case Attachment::kOtherWalkAssist: return "other_walk_assist";
    case Attachment::kPet: return "pet";
  }
  return "invalid";
}

// Looks up an enum by token or by its integer value; false if neither matches.
template <typename Enum>
bool parse_token(std::string_view text, std::uint8_t count, Enum & out)
{
  for (std::uint8_t i = 0; i < count; ++i) {
    const auto candidate = static_cast<Enum>(i);
    if (to_token(candidate) == text || std::to_string(i) == text) {
      out = candidate;
      return true;
    }
  }
  return false;
}

}  // namespace p2v::psm

#endif  // P2V__PSM_CODEC_HPP_
