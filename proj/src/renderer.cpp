#include "rt/renderer.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rt/parallel.hpp"

namespace rt
{

void validateScene(const Scene &scene)
{
    if (!(scene.maxReflectivity > 0.0f)) throw std::invalid_argument("maxReflectivity must be positive");
    if (!(scene.ambient >= 0.0f && scene.ambient <= 1.0f)) throw std::invalid_argument("ambient must lie in [0, 1]");
    if (!(scene.light.radius > 0.0f)) throw std::invalid_argument("light radius must be positive");
    auto unitColor = [](const Vec3 &c) {
        return c.x >= 0.0f && c.x <= 1.0f && c.y >= 0.0f && c.y <= 1.0f && c.z >= 0.0f && c.z <= 1.0f;
    };
    if (!unitColor(scene.light.color)) throw std::invalid_argument("light color components must lie in [0, 1]");
    for (std::size_t i = 0; i < scene.bodies.size(); ++i)
    {
        const Body &b = scene.bodies[i];
        const std::string where = "body " + std::to_string(i) + ": ";
        if (!isFinite(b.position)) throw std::invalid_argument(where + "position must be finite");
        if (b.kind == BodyKind::Sphere && !(b.size > 0.0f)) throw std::invalid_argument(where + "radius must be positive");
        if (!unitColor(b.color)) throw std::invalid_argument(where + "color components must lie in [0, 1]");
        if (!(b.reflectivity >= 0.0f && b.reflectivity <= scene.maxReflectivity))
            throw std::invalid_argument(where + "reflectivity must lie in [0, maxReflectivity]");
    }
    if (scene.skybox)
    {
        const Skybox &s = *scene.skybox;
        if (s.width < 1 || s.height < 1 || s.texels.size() != static_cast<std::size_t>(s.width) * s.height)
            throw std::invalid_argument("skybox texel count does not match its dimensions");
    }
}

void validateParams(const RenderParams &params)
{
    if (params.shadowSamples < 1) throw std::invalid_argument("shadow samples must be at least 1");
    if (params.bounceLimit < 0 || params.bounceLimit > kMaxBounceLimit)
        throw std::invalid_argument("bounce limit must lie in [0, " + std::to_string(kMaxBounceLimit) + "]");
    if (params.width < 1 || params.height < 1) throw std::invalid_argument("frame dimensions must be positive");
}

Vec3 skyboxSample(const Vec3 &direction, const Skybox &sky)
{
    constexpr float pi = std::numbers::pi_v<float>;
    const float u = 0.5f + std::atan2(direction.x, direction.z) / (2.0f * pi);
    const float v = 0.5f - std::asin(std::clamp(direction.y, -1.0f, 1.0f)) / pi;

    int col = static_cast<int>(std::floor(u * static_cast<float>(sky.width))) % sky.width;
    if (col < 0) col += sky.width;
    const int row = std::clamp(static_cast<int>(std::floor(v * static_cast<float>(sky.height))), 0, sky.height - 1);
    return clampColor(sky.at(col, row));
}

Vec3 background(const Vec3 &direction, const Scene &scene)
{
    if (!scene.skybox) return {};
    return skyboxSample(direction, *scene.skybox);
}

namespace
{

BounceRecord recordHit(const Ray &ray, const HitRecord &hit, const Scene &scene, int shadowSamples)
{
    const Body &body = scene.bodies[static_cast<std::size_t>(hit.bodyIndex)];
    const Vec3 normal = normalAt(body, hit.point);

    BounceRecord rec;
    rec.baseColor = body.color;
    rec.reflRatio = body.reflectivity / scene.maxReflectivity;
    rec.reflectivity = body.reflectivity;
    rec.toLight = normalize(scene.light.position - hit.point);
    rec.ctx.surfacePos = hit.point;
    rec.ctx.normal = normal;
    rec.ctx.viewDir = -ray.direction;
    rec.ctx.shadowCoeff = shadowCoefficient(hit.point, normal, scene.bodies, scene.light, shadowSamples);
    return rec;
}

Vec3 shadeRecord(const BounceRecord &rec, const Vec3 &color, const Scene &scene)
{
    return shade(color, rec.ctx, scene.light, rec.toLight, rec.reflectivity, scene.ambient);
}

} // namespace

Vec3 rayTraceIterative(const Ray &ray, const Scene &scene, const RenderParams &params)
{
    std::array<BounceRecord, kMaxBounceLimit + 1> stack;
    const int limit = std::clamp(params.bounceLimit, 0, kMaxBounceLimit);

    int depth = 0;
    bool exhausted = false;
    Vec3 tail;
    Ray current = ray;

    for (;;)
    {
        const auto hit = closestHit(current, scene.bodies);
        if (!hit)
        {
            tail = background(current.direction, scene);
            break;
        }
        assert(depth <= limit);
        BounceRecord &rec = stack[static_cast<std::size_t>(depth)];
        rec = recordHit(current, *hit, scene, params.shadowSamples);
        ++depth;

        // A non-reflective surface mixes in nothing, so it ends the chain.
        if (depth > limit || rec.reflRatio == 0.0f)
        {
            exhausted = true;
            break;
        }
        current = Ray{hit->point + rec.ctx.normal * kSurfaceEpsilon, reflect(current.direction, rec.ctx.normal)};
    }

    if (depth == 0) return tail;

    int k = depth - 1;
    Vec3 color;
    if (exhausted)
    {
        color = shadeRecord(stack[static_cast<std::size_t>(k)], stack[static_cast<std::size_t>(k)].baseColor, scene);
    }
    else
    {
        const BounceRecord &rec = stack[static_cast<std::size_t>(k)];
        color = shadeRecord(rec, rec.baseColor * (1.0f - rec.reflRatio) + tail * rec.reflRatio, scene);
    }
    for (--k; k >= 0; --k)
    {
        const BounceRecord &rec = stack[static_cast<std::size_t>(k)];
        color = shadeRecord(rec, rec.baseColor * (1.0f - rec.reflRatio) + color * rec.reflRatio, scene);
    }
    return color;
}

std::optional<SurfaceProbe> probeSurface(const Ray &ray, const Scene &scene, const RenderParams &params)
{
    const auto hit = closestHit(ray, scene.bodies);
    if (!hit) return std::nullopt;
    const Body &body = scene.bodies[static_cast<std::size_t>(hit->bodyIndex)];
    const Vec3 normal = normalAt(body, hit->point);
    return SurfaceProbe{hit->bodyIndex, hit->point,
                        shadowCoefficient(hit->point, normal, scene.bodies, scene.light, params.shadowSamples)};
}

std::uint32_t packColor(const Vec3 &c)
{
    auto channel = [](float v) {
        return static_cast<std::uint32_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
    };
    return 0xFF000000u | (channel(c.x) << 16) | (channel(c.y) << 8) | channel(c.z);
}

void renderFrame(const Scene &scene, const Camera &cam, const RenderParams &params, Framebuffer &out,
                 unsigned workers)
{
    if (out.width != params.width || out.height != params.height ||
        out.pixels.size() != static_cast<std::size_t>(params.width) * static_cast<std::size_t>(params.height))
    {
        throw std::invalid_argument("framebuffer dimensions do not match render parameters");
    }
    validateParams(params);

    const ViewRayGenerator viewRay(cam, Viewport{params.width, params.height});
    const std::size_t rows = static_cast<std::size_t>(params.height);
    const int width = params.width;

    parallelFor(rows, workers, 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t row = begin; row < end; ++row)
        {
            const int y = static_cast<int>(row);
            std::uint32_t *line = out.pixels.data() + row * static_cast<std::size_t>(width);
            for (int x = 0; x < width; ++x) line[x] = packColor(rayTraceIterative(viewRay(x, y), scene, params));
        }
    });
}

} // namespace rt
