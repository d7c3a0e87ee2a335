#include "rt/shading.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rt
{

float diffuseFactor(const Vec3 &normal, const Vec3 &toLight) { return std::max(dot(normal, toLight), 0.0f); }

float specularFactorBlinn(const Vec3 &normal, const Vec3 &toLight, const Vec3 &viewDir, float reflectivity)
{
    const Vec3 sum = toLight + viewDir;
    if (dot(sum, sum) == 0.0f) return 0.0f;
    const Vec3 halfway = normalize(sum);
    const float cosine = std::max(dot(normal, halfway), 0.0f);
    return std::pow(cosine, reflectivity);
}

LightDisc::LightDisc(const Light &light, const Vec3 &surfacePos)
    : m_center(light.position), m_radius(light.radius), m_axis(normalize(surfacePos - light.position))
{
    const Vec3 up{0.0f, 1.0f, 0.0f};
    const Vec3 c = cross(m_axis, up);
    m_u = dot(c, c) < 1e-12f ? Vec3{1.0f, 0.0f, 0.0f} : normalize(c);
    m_v = cross(m_axis, m_u);
}

Vec3 LightDisc::sample(int index, int count) const
{
    if (count <= 1) return m_center;
    const float r = 2.0f * m_radius * std::sqrt(static_cast<float>(index) / static_cast<float>(count));
    const float theta = static_cast<float>(static_cast<double>(index) * kGoldenAngle);
    return m_center + m_u * (r * std::cos(theta)) + m_v * (r * std::sin(theta));
}

std::vector<Vec3> sampleLightDisc(const Light &light, const Vec3 &surfacePos, int count)
{
    if (count < 1) throw std::invalid_argument("light sample count must be at least 1");
    const LightDisc disc(light, surfacePos);
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(disc.sample(i, count));
    return out;
}

bool occluded(const Vec3 &origin, const Vec3 &target, std::span<const Body> bodies)
{
    const Vec3 toTarget = target - origin;
    const float limit = magnitude(toTarget);
    if (limit == 0.0f) return false;
    const Ray ray{origin, toTarget * (1.0f / limit)};
    for (const Body &body : bodies)
    {
        const auto t = intersect(ray, body);
        if (t && *t < limit) return true;
    }
    return false;
}

float shadowCoefficient(const Vec3 &surfacePos, const Vec3 &normal, std::span<const Body> bodies,
                        std::span<const Vec3> samples)
{
    if (samples.empty()) return 1.0f;
    const Vec3 origin = surfacePos + normal * kSurfaceEpsilon;
    int visible = 0;
    for (const Vec3 &s : samples)
    {
        if (!occluded(origin, s, bodies)) ++visible;
    }
    return static_cast<float>(visible) / static_cast<float>(samples.size());
}

float shadowCoefficient(const Vec3 &surfacePos, const Vec3 &normal, std::span<const Body> bodies,
                        const Light &light, int sampleCount)
{
    const int n = std::max(sampleCount, 1);
    const LightDisc disc(light, surfacePos);
    const Vec3 origin = surfacePos + normal * kSurfaceEpsilon;
    int visible = 0;
    for (int i = 0; i < n; ++i)
    {
        if (!occluded(origin, disc.sample(i, n), bodies)) ++visible;
    }
    return static_cast<float>(visible) / static_cast<float>(n);
}

Vec3 clampColor(const Vec3 &c)
{
    return {std::clamp(c.x, 0.0f, 1.0f), std::clamp(c.y, 0.0f, 1.0f), std::clamp(c.z, 0.0f, 1.0f)};
}

Vec3 shade(const Vec3 &baseColor, const ShadeContext &ctx, const Light &light, const Vec3 &toLight,
           float reflectivity, float ambient)
{
    const float diffuse = diffuseFactor(ctx.normal, toLight);
    const float intensity = std::min(ambient + ctx.shadowCoeff * diffuse * (1.0f - ambient), 1.0f);
    Vec3 color = baseColor * intensity;
    if (ctx.shadowCoeff > 0.0f)
    {
        const float specular = specularFactorBlinn(ctx.normal, toLight, ctx.viewDir, reflectivity);
        color += light.color * (ctx.shadowCoeff * specular);
    }
    return clampColor(color);
}

} // namespace rt
