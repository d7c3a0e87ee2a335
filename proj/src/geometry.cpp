#include "rt/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rt
{

std::optional<float> raySphereIntersect(const Ray &ray, const Vec3 &center, float radius)
{
    const Vec3 toCenter = center - ray.origin;
    const float tca = dot(toCenter, ray.direction);
    if (tca < 0.0f) return std::nullopt;

    const float r2 = radius * radius;
    const float d2 = dot(toCenter, toCenter) - tca * tca;
    if (d2 > r2 + kGrazingEpsilon) return std::nullopt;

    const float halfChord = std::sqrt(std::max(r2 - d2, 0.0f));
    const float t = tca - halfChord;
    // An origin inside the sphere is not an intersection.
    if (t < 0.0f) return std::nullopt;
    return t;
}

std::optional<float> rayPlaneIntersect(const Ray &ray, float height)
{
    if (ray.direction.y == 0.0f) return std::nullopt;
    const float t = (height - ray.origin.y) / ray.direction.y;
    if (t > 0.0f) return t;
    return std::nullopt;
}

std::optional<float> intersect(const Ray &ray, const Body &body)
{
    switch (body.kind)
    {
    case BodyKind::Sphere:
        return raySphereIntersect(ray, body.position, body.size);
    case BodyKind::HorizontalPlane:
        return rayPlaneIntersect(ray, body.position.y);
    }
    return std::nullopt;
}

Vec3 sphereNormal(const Vec3 &center, const Vec3 &point)
{
    const Vec3 d = point - center;
    if (dot(d, d) == 0.0f) throw std::invalid_argument("sphere normal requested at the sphere center");
    return normalize(d);
}

Vec3 normalAt(const Body &body, const Vec3 &point)
{
    if (body.kind == BodyKind::HorizontalPlane) return planeNormal();
    return sphereNormal(body.position, point);
}

std::optional<HitRecord> closestHit(const Ray &ray, std::span<const Body> bodies)
{
    int best = -1;
    float bestT = 0.0f;
    for (std::size_t i = 0; i < bodies.size(); ++i)
    {
        const auto t = intersect(ray, bodies[i]);
        if (t && (best < 0 || *t < bestT))
        {
            best = static_cast<int>(i);
            bestT = *t;
        }
    }
    if (best < 0) return std::nullopt;
    return HitRecord{best, ray.at(bestT), bestT};
}

} // namespace rt
