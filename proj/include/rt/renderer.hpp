#pragma once

#include <cstdint>
#include <optional>

#include "rt/camera.hpp"
#include "rt/scene.hpp"

namespace rt
{

// One entry of the manual reflection stack: the surface color and mixing
// ratio plus everything shade() needs at that bounce.
struct BounceRecord
{
    Vec3 baseColor;
    float reflRatio = 0.0f;
    ShadeContext ctx;
    Vec3 toLight;
    float reflectivity = 0.0f;
};

// Nearest-texel equirectangular lookup, clamped to [0, 1].
Vec3 skyboxSample(const Vec3 &direction, const Skybox &sky);

// Background for a ray that leaves the scene: the skybox, or black.
Vec3 background(const Vec3 &direction, const Scene &scene);

// Whitted trace with reflections unrolled onto a fixed-size stack. The
// forward pass records up to bounceLimit + 1 hits; the unwind mixes each
// record's base color with the color traced beyond it and shades the mix.
Vec3 rayTraceIterative(const Ray &ray, const Scene &scene, const RenderParams &params);

struct SurfaceProbe
{
    int bodyIndex = -1;
    Vec3 point;
    float shadowCoeff = 1.0f;
};

// Closest hit of a ray together with its shadow coefficient.
std::optional<SurfaceProbe> probeSurface(const Ray &ray, const Scene &scene, const RenderParams &params);

std::uint32_t packColor(const Vec3 &c);

// Renders every pixel of `out`. Throws std::invalid_argument before doing
// any work if out's dimensions differ from params. The result does not
// depend on the worker count (0 = one per hardware thread).
void renderFrame(const Scene &scene, const Camera &cam, const RenderParams &params, Framebuffer &out,
                 unsigned workers = 0);

} // namespace rt
