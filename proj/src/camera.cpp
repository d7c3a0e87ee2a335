#include "rt/camera.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rt
{

namespace
{

ScreenCoords mapToNdc(float x, float y, float width, float height)
{
    if (width > height)
    {
        return {(x - width / 2.0f + height / 2.0f) / height * 2.0f - 1.0f, -(y / height * 2.0f - 1.0f)};
    }
    return {x / width * 2.0f - 1.0f, -((y - height / 2.0f + width / 2.0f) / width * 2.0f - 1.0f)};
}

} // namespace

float clampPitch(float pitch) { return std::clamp(pitch, -kMaxPitch, kMaxPitch); }

bool isValidFov(float fovDegrees) { return fovDegrees > 0.0f && fovDegrees < 180.0f; }

ScreenCoords normScreenCoords(int x, int y, int width, int height)
{
    if (width < 1 || height < 1 || x < 0 || y < 0 || x >= width || y >= height)
    {
        throw std::out_of_range("pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") outside " +
                                std::to_string(width) + "x" + std::to_string(height) + " window");
    }
    return mapToNdc(static_cast<float>(x), static_cast<float>(y), static_cast<float>(width),
                    static_cast<float>(height));
}

float cameraViewportDistance(float fovDegrees)
{
    const float halfAngle = fovDegrees * (std::numbers::pi_v<float> / 180.0f) / 2.0f;
    return 1.0f / std::tan(halfAngle);
}

ViewRayGenerator::ViewRayGenerator(const Camera &cam, const Viewport &vp)
    : m_origin(cam.position), m_width(static_cast<float>(vp.width)), m_height(static_cast<float>(vp.height)),
      m_cameraZ(-cameraViewportDistance(cam.fov))
{
    const float pitch = clampPitch(cam.pitch);
    m_cosYaw = std::cos(cam.yaw);
    m_sinYaw = std::sin(cam.yaw);
    m_cosPitch = std::cos(pitch);
    m_sinPitch = std::sin(pitch);
}

Ray ViewRayGenerator::operator()(int x, int y) const
{
    const ScreenCoords p = mapToNdc(static_cast<float>(x), static_cast<float>(y), m_width, m_height);
    // Pixel P = (u, v, 0) minus camera C = (0, 0, cameraZ).
    const Vec3 d = normalize(Vec3{p.u, p.v, -m_cameraZ});

    const float y2 = d.y * m_cosPitch - d.z * m_sinPitch;
    const float zp = d.y * m_sinPitch + d.z * m_cosPitch;
    const float x2 = d.x * m_cosYaw + zp * m_sinYaw;
    const float z2 = -d.x * m_sinYaw + zp * m_cosYaw;
    return {m_origin, {x2, y2, z2}};
}

Ray primaryRay(int x, int y, const Camera &cam, const Viewport &vp)
{
    if (x < 0 || y < 0 || x >= vp.width || y >= vp.height) throw std::out_of_range("pixel outside viewport");
    return ViewRayGenerator(cam, vp)(x, y);
}

} // namespace rt
