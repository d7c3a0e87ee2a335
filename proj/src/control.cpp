#include "rt/control.hpp"

#include <cmath>

#include <json.hpp>

namespace rt
{

using nlohmann::json;

namespace
{

float finiteNumber(const json &j, const char *key)
{
    if (!j.contains(key) || !j.at(key).is_number()) throw ControlError(std::string("'") + key + "' must be a number");
    const double v = j.at(key).get<double>();
    if (!std::isfinite(v)) throw ControlError(std::string("'") + key + "' must be finite");
    return static_cast<float>(v);
}

int integer(const json &j, const char *key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ControlError(std::string("'") + key + "' must be an integer");
    const auto v = j.at(key).get<long long>();
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw ControlError(std::string("'") + key + "' out of range");
    return static_cast<int>(v);
}

CameraCommand parseCamera(const json &j)
{
    if (!j.contains("pos") || !j.at("pos").is_array() || j.at("pos").size() != 3)
        throw ControlError("'pos' must be an array of 3 numbers");
    const json &p = j.at("pos");
    Vec3 pos;
    float *dst[] = {&pos.x, &pos.y, &pos.z};
    for (std::size_t i = 0; i < 3; ++i)
    {
        if (!p.at(i).is_number()) throw ControlError("'pos' must be an array of 3 numbers");
        const double v = p.at(i).get<double>();
        if (!std::isfinite(v)) throw ControlError("'pos' must be finite");
        *dst[i] = static_cast<float>(v);
    }
    const float fov = finiteNumber(j, "fov");
    if (!isValidFov(fov)) throw ControlError("'fov' must lie in (0, 180)");
    return CameraCommand{Camera{pos, finiteNumber(j, "yaw"), finiteNumber(j, "pitch"), fov}};
}

} // namespace

ControlMessage handleControl(std::string_view raw)
{
    json j;
    try
    {
        j = json::parse(raw);
    }
    catch (const json::parse_error &e)
    {
        throw ControlError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ControlError("control message must be a JSON object");
    if (!j.contains("type") || !j.at("type").is_string()) throw ControlError("missing string field 'type'");

    const std::string type = j.at("type").get<std::string>();
    if (type == "camera") return parseCamera(j);
    if (type == "params")
    {
        const int samples = integer(j, "samples");
        const int bounces = integer(j, "bounces");
        if (samples < 1 || samples > kMaxControlSamples)
            throw ControlError("'samples' must lie in [1, " + std::to_string(kMaxControlSamples) + "]");
        if (bounces < 0 || bounces > kMaxBounceLimit)
            throw ControlError("'bounces' must lie in [0, " + std::to_string(kMaxBounceLimit) + "]");
        return ParamsCommand{samples, bounces};
    }
    if (type == "resize")
    {
        const int width = integer(j, "width");
        const int height = integer(j, "height");
        if (width < 1 || height < 1) throw ControlError("'width' and 'height' must be positive");
        if (static_cast<long>(width) * height > kMaxFramePixels) throw ControlError("frame larger than 3840x2160 pixels");
        if (width > 0xFFFF || height > 0xFFFF) throw ControlError("frame dimension exceeds 65535");
        return ResizeCommand{width, height};
    }
    if (type == "pause")
    {
        if (!j.contains("on") || !j.at("on").is_boolean()) throw ControlError("'on' must be a boolean");
        return PauseCommand{j.at("on").get<bool>()};
    }
    throw ControlError("unknown message type '" + type + "'");
}

std::string controlToJson(const ControlMessage &msg)
{
    struct Visitor
    {
        json operator()(const CameraCommand &c) const
        {
            const Camera &cam = c.camera;
            return {{"type", "camera"},
                    {"pos", {cam.position.x, cam.position.y, cam.position.z}},
                    {"yaw", cam.yaw},
                    {"pitch", cam.pitch},
                    {"fov", cam.fov}};
        }
        json operator()(const ParamsCommand &p) const
        {
            return {{"type", "params"}, {"samples", p.samples}, {"bounces", p.bounces}};
        }
        json operator()(const ResizeCommand &r) const
        {
            return {{"type", "resize"}, {"width", r.width}, {"height", r.height}};
        }
        json operator()(const PauseCommand &p) const { return {{"type", "pause"}, {"on", p.on}}; }
    };
    return std::visit(Visitor{}, msg).dump();
}

std::string errorReply(std::string_view reason)
{
    return json{{"type", "error"}, {"reason", reason}}.dump(-1, ' ', false, json::error_handler_t::replace);
}

namespace
{

void putU32(std::uint8_t *p, std::uint32_t v)
{
    p[0] = static_cast<std::uint8_t>(v >> 24);
    p[1] = static_cast<std::uint8_t>(v >> 16);
    p[2] = static_cast<std::uint8_t>(v >> 8);
    p[3] = static_cast<std::uint8_t>(v);
}

void putU16(std::uint8_t *p, std::uint16_t v)
{
    p[0] = static_cast<std::uint8_t>(v >> 8);
    p[1] = static_cast<std::uint8_t>(v);
}

std::uint32_t getU32(const std::uint8_t *p)
{
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

std::uint16_t getU16(const std::uint8_t *p) { return static_cast<std::uint16_t>((p[0] << 8) | p[1]); }

} // namespace

std::vector<std::uint8_t> encodeFrameMessage(std::uint32_t frameId, const Framebuffer &fb)
{
    if (fb.width < 1 || fb.height < 1 || fb.width > 0xFFFF || fb.height > 0xFFFF)
        throw std::invalid_argument("frame dimensions do not fit the wire header");

    std::vector<std::uint8_t> out(kFrameHeaderSize + fb.pixels.size() * 4, 0);
    putU32(&out[0], kFrameMagic);
    putU32(&out[4], frameId);
    putU16(&out[8], static_cast<std::uint16_t>(fb.width));
    putU16(&out[10], static_cast<std::uint16_t>(fb.height));
    out[12] = kFormatRgba8;

    std::uint8_t *dst = out.data() + kFrameHeaderSize;
    for (std::uint32_t argb : fb.pixels)
    {
        *dst++ = static_cast<std::uint8_t>(argb >> 16);
        *dst++ = static_cast<std::uint8_t>(argb >> 8);
        *dst++ = static_cast<std::uint8_t>(argb);
        *dst++ = static_cast<std::uint8_t>(argb >> 24);
    }
    return out;
}

std::optional<FrameHeader> decodeFrameHeader(std::span<const std::uint8_t> message)
{
    if (message.size() < kFrameHeaderSize) return std::nullopt;
    FrameHeader h;
    h.magic = getU32(&message[0]);
    h.frameId = getU32(&message[4]);
    h.width = getU16(&message[8]);
    h.height = getU16(&message[10]);
    h.format = message[12];
    if (h.magic != kFrameMagic || h.format != kFormatRgba8) return std::nullopt;
    if (message.size() != kFrameHeaderSize + std::size_t{h.width} * h.height * 4) return std::nullopt;
    return h;
}

} // namespace rt
