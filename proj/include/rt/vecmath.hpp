#pragma once

#include <cmath>
#include <stdexcept>

namespace rt
{

// 3-component vector used for points, directions and linear RGB colors.
struct Vec3
{
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;

    constexpr Vec3 operator-() const { return {-x, -y, -z}; }

    constexpr Vec3 &operator+=(const Vec3 &o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    constexpr Vec3 &operator-=(const Vec3 &o)
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }

    constexpr Vec3 &operator*=(float s)
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
constexpr Vec3 operator*(Vec3 a, float s) { return a *= s; }
constexpr Vec3 operator*(float s, Vec3 a) { return a *= s; }

// Componentwise product, used to modulate colors.
constexpr Vec3 operator*(const Vec3 &a, const Vec3 &b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

constexpr Vec3 add(const Vec3 &a, const Vec3 &b) { return a + b; }
constexpr Vec3 sub(const Vec3 &a, const Vec3 &b) { return a - b; }
constexpr Vec3 scale(const Vec3 &a, float s) { return a * s; }
constexpr Vec3 mul(const Vec3 &a, const Vec3 &b) { return a * b; }

constexpr float dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline float magnitude(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline float distance(const Vec3 &a, const Vec3 &b) { return magnitude(b - a); }

// Hot-path normalization. A zero vector maps to (0,0,0); callers on the
// render path guarantee a nonzero input.
inline Vec3 normalize(const Vec3 &a)
{
    const float len = magnitude(a);
    if (len == 0.0f) return {};
    return a * (1.0f / len);
}

struct ZeroVectorError : std::domain_error
{
    ZeroVectorError() : std::domain_error("cannot normalize a zero-length vector") {}
};

// Boundary variant for inputs that must become unit vectors.
inline Vec3 normalizeChecked(const Vec3 &a)
{
    const float len = magnitude(a);
    if (!(len > 0.0f)) throw ZeroVectorError{};
    return a * (1.0f / len);
}

// Mirror an incident direction about a unit surface normal: r = i - 2(n.i)n.
constexpr Vec3 reflect(const Vec3 &incident, const Vec3 &normal)
{
    return incident - normal * (2.0f * dot(normal, incident));
}

// Camera look angles in radians. Pitch is stored unclamped.
struct Angles
{
    float yaw = 0.0f;
    float pitch = 0.0f;
};

// Rotates by pitch about the horizontal axis first, then by yaw about the
// vertical axis. Positive pitch turns +z towards -y; positive yaw turns +z
// towards +x. No roll.
inline Vec3 rotateYawPitch(const Vec3 &d, float yaw, float pitch)
{
    const float cp = std::cos(pitch);
    const float sp = std::sin(pitch);
    const float cy = std::cos(yaw);
    const float sy = std::sin(yaw);

    const float y2 = d.y * cp - d.z * sp;
    const float zp = d.y * sp + d.z * cp;

    const float x2 = d.x * cy + zp * sy;
    const float z2 = -d.x * sy + zp * cy;
    return {x2, y2, z2};
}

inline Vec3 rotateYawPitch(const Vec3 &d, const Angles &a) { return rotateYawPitch(d, a.yaw, a.pitch); }

inline bool isFinite(const Vec3 &v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

} // namespace rt
