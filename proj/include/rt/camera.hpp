#pragma once

#include <numbers>

#include "rt/geometry.hpp"

namespace rt
{

inline constexpr float kPitchLimitMargin = 1e-3f;
inline constexpr float kMaxPitch = std::numbers::pi_v<float> / 2.0f - kPitchLimitMargin;

// Pinhole camera. Looks along +z with +y up before rotation; fov is the
// full horizontal-or-vertical angle (degrees) spanned by the shorter
// viewport axis.
struct Camera
{
    Vec3 position;
    float yaw = 0.0f;
    float pitch = 0.0f;
    float fov = 60.0f;

    bool operator==(const Camera &) const = default;
};

struct Viewport
{
    int width = 1;
    int height = 1;

    bool operator==(const Viewport &) const = default;
};

struct ScreenCoords
{
    float u = 0.0f;
    float v = 0.0f;
};

float clampPitch(float pitch);

// True when fov lies strictly inside (0, 180) degrees.
bool isValidFov(float fovDegrees);

// Maps a pixel corner to normalized device coordinates. The shorter axis
// spans [-1, 1]. Throws std::out_of_range for pixels outside the window.
ScreenCoords normScreenCoords(int x, int y, int width, int height);

// Distance from the camera to the viewport plane: 1 / tan(fov / 2).
float cameraViewportDistance(float fovDegrees);

Ray primaryRay(int x, int y, const Camera &cam, const Viewport &vp);

// Precomputed per-frame view constants so the pixel kernel avoids
// recomputing the viewport distance and trig for every ray.
class ViewRayGenerator
{
  public:
    ViewRayGenerator(const Camera &cam, const Viewport &vp);

    Ray operator()(int x, int y) const;

  private:
    Vec3 m_origin;
    float m_width;
    float m_height;
    float m_cameraZ;
    float m_cosYaw, m_sinYaw, m_cosPitch, m_sinPitch;
};

} // namespace rt
