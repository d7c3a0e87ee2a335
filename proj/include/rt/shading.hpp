#pragma once

#include <span>
#include <vector>

#include "rt/geometry.hpp"

namespace rt
{

// Spherical emitter. Soft shadows sample the disc through its center that
// faces the shaded point.
struct Light
{
    Vec3 position;
    float radius = 0.5f;
    Vec3 color{1.0f, 1.0f, 1.0f};

    bool operator==(const Light &) const = default;
};

struct ShadeContext
{
    Vec3 surfacePos;
    Vec3 normal;  // unit
    Vec3 viewDir; // unit, surface -> viewer
    float shadowCoeff = 1.0f;
};

inline constexpr float kDefaultAmbient = 0.15f;

// Offset applied along the surface normal to shadow and reflection ray
// origins so they do not re-hit the surface they leave.
inline constexpr float kSurfaceEpsilon = 1e-3f;

// pi * (3 - sqrt(5))
inline constexpr double kGoldenAngle = 2.39996322972865332;

float diffuseFactor(const Vec3 &normal, const Vec3 &toLight);

// max(n.h, 0)^reflectivity with h the normalized light/view halfway vector.
// Exactly opposed light and view directions give 0.
float specularFactorBlinn(const Vec3 &normal, const Vec3 &toLight, const Vec3 &viewDir, float reflectivity);

// Sunflower-seed layout on the light disc facing a surface point. Sample i
// of n sits at radius 2 * lightRadius * sqrt(i / n) and angle i * goldenAngle
// in the plane perpendicular to the light->surface axis. n == 1 degenerates
// to the light center (hard shadows).
class LightDisc
{
  public:
    LightDisc(const Light &light, const Vec3 &surfacePos);

    Vec3 sample(int index, int count) const;

    const Vec3 &axis() const { return m_axis; }
    const Vec3 &tangent() const { return m_u; }
    const Vec3 &bitangent() const { return m_v; }

  private:
    Vec3 m_center;
    float m_radius;
    Vec3 m_axis;
    Vec3 m_u;
    Vec3 m_v;
};

// Throws std::invalid_argument when count < 1.
std::vector<Vec3> sampleLightDisc(const Light &light, const Vec3 &surfacePos, int count);

// True when some body crosses the segment from origin toward target before
// reaching it.
bool occluded(const Vec3 &origin, const Vec3 &target, std::span<const Body> bodies);

// Fraction of samples visible from the surface point, in [0, 1]. Shadow rays
// start kSurfaceEpsilon above the surface along its normal.
float shadowCoefficient(const Vec3 &surfacePos, const Vec3 &normal, std::span<const Body> bodies,
                        std::span<const Vec3> samples);

// Same as above with samples generated on the fly from the light disc.
float shadowCoefficient(const Vec3 &surfacePos, const Vec3 &normal, std::span<const Body> bodies,
                        const Light &light, int sampleCount);

// Blinn-Phong: base * min(ambient + s * diffuse * (1 - ambient), 1)
//              + lightColor * s * specular, clamped to [0, 1],
// where s is the shadow coefficient. Fully shadowed points reduce to
// base * ambient.
Vec3 shade(const Vec3 &baseColor, const ShadeContext &ctx, const Light &light, const Vec3 &toLight,
           float reflectivity, float ambient);

Vec3 clampColor(const Vec3 &c);

} // namespace rt
