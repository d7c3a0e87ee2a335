#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rt/camera.hpp"
#include "rt/scene.hpp"

namespace rt
{

// Viewer -> server commands, carried as JSON text frames.
struct CameraCommand
{
    Camera camera;
    bool operator==(const CameraCommand &) const = default;
};

struct ParamsCommand
{
    int samples = 1;
    int bounces = 1;
    bool operator==(const ParamsCommand &) const = default;
};

struct ResizeCommand
{
    int width = 0;
    int height = 0;
    bool operator==(const ResizeCommand &) const = default;
};

struct PauseCommand
{
    bool on = false;
    bool operator==(const PauseCommand &) const = default;
};

using ControlMessage = std::variant<CameraCommand, ParamsCommand, ResizeCommand, PauseCommand>;

inline constexpr long kMaxFramePixels = 3840L * 2160L;
inline constexpr int kMaxControlSamples = 10000;

struct ControlError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Parses and validates {"type": "camera"|"params"|"resize"|"pause", ...}.
// Throws ControlError with a human-readable reason.
ControlMessage handleControl(std::string_view raw);

std::string controlToJson(const ControlMessage &msg);

// {"type":"error","reason":...}
std::string errorReply(std::string_view reason);

// Binary frame layout, all header integers big-endian:
//   u32 magic "RAYF" | u32 frameId | u16 width | u16 height | u8 format |
//   3 reserved bytes | width * height * 4 bytes RGBA row-major
inline constexpr std::uint32_t kFrameMagic = 0x52415946u;
inline constexpr std::size_t kFrameHeaderSize = 16;
inline constexpr std::uint8_t kFormatRgba8 = 1;

struct FrameHeader
{
    std::uint32_t magic = kFrameMagic;
    std::uint32_t frameId = 0;
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::uint8_t format = kFormatRgba8;
};

std::vector<std::uint8_t> encodeFrameMessage(std::uint32_t frameId, const Framebuffer &fb);

// Returns the header if magic, format and payload length all check out.
std::optional<FrameHeader> decodeFrameHeader(std::span<const std::uint8_t> message);

} // namespace rt
