#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rt/geometry.hpp"
#include "rt/shading.hpp"

namespace rt
{

inline constexpr float kDefaultMaxReflectivity = 128.0f;

// Upper bound on reflection bounces; sizes the per-ray bounce stack.
inline constexpr int kMaxBounceLimit = 32;

// Equirectangular environment image, row-major. Texels may exceed 1 (HDR);
// lookups clamp on return.
struct Skybox
{
    int width = 0;
    int height = 0;
    std::vector<Vec3> texels;

    const Vec3 &at(int x, int y) const { return texels[static_cast<std::size_t>(x + y * width)]; }
};

struct Scene
{
    std::vector<Body> bodies;
    Light light;
    std::shared_ptr<const Skybox> skybox;
    float ambient = kDefaultAmbient;
    float maxReflectivity = kDefaultMaxReflectivity;
};

// Throws std::invalid_argument describing the first violated invariant.
void validateScene(const Scene &scene);

struct RenderParams
{
    int shadowSamples = 1;
    int bounceLimit = 1;
    int width = 1280;
    int height = 720;

    bool operator==(const RenderParams &) const = default;
};

void validateParams(const RenderParams &params);

// Packed 0xAARRGGBB pixels, row-major, index x + y * width.
struct Framebuffer
{
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> pixels;

    Framebuffer() = default;
    Framebuffer(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0xFF000000u) {}

    std::uint32_t at(int x, int y) const { return pixels[static_cast<std::size_t>(x + y * width)]; }
};

} // namespace rt
