#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "rt/vecmath.hpp"

namespace rt
{

// Origin plus unit direction.
struct Ray
{
    Vec3 origin;
    Vec3 direction;

    Vec3 at(float t) const { return origin + direction * t; }
};

enum class BodyKind : std::uint8_t
{
    Sphere,
    HorizontalPlane,
};

// A scene primitive. For a plane only position.y (its height) is used and
// size is ignored.
struct Body
{
    BodyKind kind = BodyKind::Sphere;
    Vec3 position;
    float size = 1.0f;
    Vec3 color{1.0f, 1.0f, 1.0f};
    float reflectivity = 0.0f;

    static Body sphere(Vec3 center, float radius, Vec3 color, float reflectivity)
    {
        return {BodyKind::Sphere, center, radius, color, reflectivity};
    }

    static Body plane(float height, Vec3 color, float reflectivity)
    {
        return {BodyKind::HorizontalPlane, {0.0f, height, 0.0f}, 0.0f, color, reflectivity};
    }

    bool operator==(const Body &) const = default;
};

struct HitRecord
{
    int bodyIndex = -1;
    Vec3 point;
    float distance = 0.0f;
};

// Squared-distance slack under which a tangent ray still counts as a hit.
inline constexpr float kGrazingEpsilon = 1e-7f;

std::optional<float> raySphereIntersect(const Ray &ray, const Vec3 &center, float radius);

std::optional<float> rayPlaneIntersect(const Ray &ray, float height);

// Distance along the ray to the body, if it is hit in front of the origin.
std::optional<float> intersect(const Ray &ray, const Body &body);

// Throws std::invalid_argument when point coincides with center.
Vec3 sphereNormal(const Vec3 &center, const Vec3 &point);

constexpr Vec3 planeNormal() { return {0.0f, 1.0f, 0.0f}; }

Vec3 normalAt(const Body &body, const Vec3 &point);

// Nearest body along the ray. Equal distances resolve to the lower index.
std::optional<HitRecord> closestHit(const Ray &ray, std::span<const Body> bodies);

} // namespace rt
