#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rt/vecmath.hpp"

using namespace rt;

namespace
{

void expectVec(const Vec3 &a, const Vec3 &b, float tol = 1e-5f)
{
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

Vec3 randomVec(std::mt19937 &rng, float range = 10.0f)
{
    std::uniform_real_distribution<float> d(-range, range);
    return {d(rng), d(rng), d(rng)};
}

Vec3 randomUnit(std::mt19937 &rng)
{
    for (;;)
    {
        const Vec3 v = randomVec(rng, 1.0f);
        if (dot(v, v) > 1e-4f) return normalize(v);
    }
}

} // namespace

TEST(VecMath, AddSub)
{
    EXPECT_EQ(sub({1, 2, 3}, {1, 2, 3}), (Vec3{0, 0, 0}));
    EXPECT_EQ(add({1, 0, 0}, {0, 1, 0}), (Vec3{1, 1, 0}));
    EXPECT_EQ(sub({4, 5, 6}, {1, 2, 3}), (Vec3{3, 3, 3}));
    EXPECT_EQ(scale({1, -2, 3}, 2.0f), (Vec3{2, -4, 6}));
    EXPECT_EQ(mul({0.5f, 1, 0}, {0.5f, 0.25f, 7}), (Vec3{0.25f, 0.25f, 0}));
}

TEST(VecMath, Magnitude)
{
    EXPECT_FLOAT_EQ(magnitude({1, 2, 2}), 3.0f);
    EXPECT_FLOAT_EQ(magnitude({0, 0, 0}), 0.0f);
    EXPECT_FLOAT_EQ(magnitude({3, 0, 4}), 5.0f);
}

TEST(VecMath, Normalize)
{
    expectVec(normalize({3, 0, 4}), {0.6f, 0.0f, 0.8f});
    expectVec(normalize({0, 1, 0}), {0, 1, 0});
    expectVec(normalize({2, 2, 2}), {0.57735f, 0.57735f, 0.57735f});
}

TEST(VecMath, NormalizeZeroVector)
{
    EXPECT_EQ(normalize({0, 0, 0}), (Vec3{0, 0, 0}));
    EXPECT_THROW(normalizeChecked({0, 0, 0}), ZeroVectorError);
    expectVec(normalizeChecked({0, 0, 5}), {0, 0, 1});
}

TEST(VecMath, Dot)
{
    EXPECT_FLOAT_EQ(dot({1, 0, 0}, {0, 1, 0}), 0.0f);
    EXPECT_FLOAT_EQ(dot({0, 1, 0}, {0, 1, 0}), 1.0f);
    EXPECT_FLOAT_EQ(dot({1, 2, 3}, {4, 5, 6}), 32.0f);
}

TEST(VecMath, Reflect)
{
    expectVec(reflect({0, -1, 0}, {0, 1, 0}), {0, 1, 0});
    expectVec(reflect({0.70711f, -0.70711f, 0}, {0, 1, 0}), {0.70711f, 0.70711f, 0});
    expectVec(reflect({0, 0, 1}, {0, 0, 1}), {0, 0, -1});
}

TEST(VecMath, RotateYawPitch)
{
    expectVec(rotateYawPitch({0.3f, -0.2f, 0.9f}, 0.0f, 0.0f), {0.3f, -0.2f, 0.9f}, 1e-9f);
    expectVec(rotateYawPitch({0, 0, 1}, 0.0f, std::numbers::pi_v<float> / 2), {0, -1, 0});
    expectVec(rotateYawPitch({0, 0, 1}, std::numbers::pi_v<float> / 2, 0.0f), {1, 0, 0});
}

TEST(VecMathProperty, NormalizeGivesUnitLength)
{
    std::mt19937 rng(1);
    for (int i = 0; i < 5000; ++i)
    {
        const Vec3 v = randomVec(rng, 1000.0f);
        if (dot(v, v) == 0.0f) continue;
        EXPECT_LT(std::abs(magnitude(normalize(v)) - 1.0f), 1e-6f);
    }
}

TEST(VecMathProperty, ReflectPreservesLengthAndFlipsNormalComponent)
{
    std::mt19937 rng(2);
    for (int k = 0; k < 5000; ++k)
    {
        const Vec3 i = randomUnit(rng);
        const Vec3 n = randomUnit(rng);
        const Vec3 r = reflect(i, n);
        EXPECT_NEAR(magnitude(r), 1.0f, 1e-6f);
        EXPECT_NEAR(dot(r, n), -dot(i, n), 1e-6f);
        // Two float reflections round-trip to within a few ulps.
        expectVec(reflect(r, n), i, 4e-6f);
    }
}

TEST(VecMathProperty, RotationPreservesMagnitude)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<float> angle(-10.0f, 10.0f);
    for (int k = 0; k < 5000; ++k)
    {
        const Vec3 v = randomUnit(rng);
        const Vec3 r = rotateYawPitch(v, angle(rng), angle(rng));
        EXPECT_NEAR(magnitude(r), 1.0f, 1e-6f);
        EXPECT_EQ(rotateYawPitch(v, 0.0f, 0.0f), v);
    }
}

TEST(VecMathProperty, DotIsSymmetricAndBilinear)
{
    std::mt19937 rng(4);
    std::uniform_real_distribution<float> s(-4.0f, 4.0f);
    for (int k = 0; k < 5000; ++k)
    {
        const Vec3 a = randomVec(rng);
        const Vec3 b = randomVec(rng);
        EXPECT_EQ(dot(a, b), dot(b, a));
        const float f = s(rng);
        // Checked in double so the tolerance measures the float path only.
        const double lhs = dot(a * f, b);
        const double rhs = static_cast<double>(f) * dot(a, b);
        const double bound = 1e-6 * (std::abs(f) * (std::abs(a.x * b.x) + std::abs(a.y * b.y) + std::abs(a.z * b.z)) + 1e-9);
        EXPECT_NEAR(lhs, rhs, bound);

        // Power-of-two scalars scale exactly, so the 1e-9 relative bound holds.
        const float p2 = std::ldexp(1.0f, static_cast<int>(s(rng)));
        const double exactL = dot(a * p2, b);
        const double exactR = static_cast<double>(p2) * dot(a, b);
        EXPECT_LE(std::abs(exactL - exactR), 1e-9 * std::max(std::abs(exactR), 1e-30));
    }
}
