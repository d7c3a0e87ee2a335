#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rt/physics.hpp"

using namespace rt;

namespace
{

std::vector<Body> floorAndBall(Vec3 center, float radius)
{
    return {Body::plane(0.0f, {1, 1, 1}, 0), Body::sphere(center, radius, {1, 1, 1}, 0)};
}

} // namespace

TEST(Verlet, RestingBodyWithoutGravityStaysPut)
{
    auto bodies = floorAndBall({1, 3, 2}, 0.5f);
    PhysicsState state = PhysicsState::atRest(bodies, {1});
    state.acceleration = {0, 0, 0};
    for (int i = 0; i < 100; ++i) verletStep(state, bodies, 0.0f, kDefaultTimeStep);
    EXPECT_EQ(bodies[1].position, (Vec3{1, 3, 2}));
}

TEST(Verlet, UniformMotionWithoutGravity)
{
    auto bodies = floorAndBall({0, 5, 0}, 0.5f);
    PhysicsState state = PhysicsState::atRest(bodies, {1});
    state.acceleration = {0, 0, 0};
    state.prevPositions[0] = {-0.1f, 5, 0}; // 0.1 per step along +x
    for (int i = 0; i < 10; ++i) verletStep(state, bodies, 0.0f, 0.1f);
    EXPECT_NEAR(bodies[1].position.x, 1.0f, 1e-5f);
    EXPECT_FLOAT_EQ(bodies[1].position.y, 5.0f);
}

TEST(Verlet, SingleGravityStepFromRest)
{
    auto bodies = floorAndBall({0, 10, 0}, 0.5f);
    PhysicsState state = PhysicsState::atRest(bodies, {1});
    verletStep(state, bodies, 0.0f, 0.1f);
    EXPECT_NEAR(bodies[1].position.y, 9.902f, 1e-5f);
    EXPECT_EQ(state.prevPositions[0], (Vec3{0, 10, 0}));
}

TEST(Verlet, RejectsBadInput)
{
    auto bodies = floorAndBall({0, 10, 0}, 0.5f);
    PhysicsState state = PhysicsState::atRest(bodies, {1});
    EXPECT_THROW(verletStep(state, bodies, 0.0f, 0.0f), std::invalid_argument);
    state.prevPositions.clear();
    EXPECT_THROW(verletStep(state, bodies, 0.0f, 0.1f), std::invalid_argument);
    EXPECT_THROW(PhysicsState::atRest(bodies, {0}), std::invalid_argument);
    EXPECT_THROW(PhysicsState::atRest(bodies, {7}), std::invalid_argument);
}

TEST(VerletProperty, NeverSinksBelowFloor)
{
    std::mt19937 rng(41);
    std::uniform_real_distribution<float> h(0.6f, 20.0f);
    std::uniform_real_distribution<float> r(0.1f, 1.5f);
    std::uniform_real_distribution<float> e(0.0f, 1.0f);
    std::uniform_real_distribution<float> dt(1.0f / 480.0f, 1.0f / 20.0f);
    for (int trial = 0; trial < 50; ++trial)
    {
        const float radius = r(rng);
        const float floorY = -1.0f + e(rng);
        auto bodies = floorAndBall({0, floorY + radius + h(rng), 0}, radius);
        PhysicsState state = PhysicsState::atRest(bodies, {1});
        state.restitution = e(rng);
        const float step = dt(rng);
        for (int i = 0; i < 2000; ++i)
        {
            verletStep(state, bodies, floorY, step);
            ASSERT_GE(bodies[1].position.y, floorY + radius - 1e-4f) << "trial " << trial << " step " << i;
        }
    }
}

TEST(VerletProperty, ElasticBounceConservesEnergy)
{
    for (float dt : {1.0f / 240.0f, 1.0f / 480.0f})
    {
        auto bodies = floorAndBall({0, 5.5f, 0}, 0.5f);
        PhysicsState state = PhysicsState::atRest(bodies, {1});
        state.restitution = 1.0f;
        // Potential energy per unit mass above the resting height, sampled at
        // apexes where kinetic energy is (nearly) zero.
        const float start = 5.0f;
        std::vector<float> apexes;
        float previousY = bodies[1].position.y;
        bool rising = false;
        for (int i = 0; i < static_cast<int>(30.0f / dt); ++i)
        {
            verletStep(state, bodies, 0.0f, dt);
            const float y = bodies[1].position.y;
            if (rising && y < previousY) apexes.push_back(previousY - 0.5f);
            rising = y > previousY;
            previousY = y;
        }
        ASSERT_GE(apexes.size(), 5u);
        for (float a : apexes) EXPECT_LT(std::abs(a - start) / start, 0.01f) << "dt " << dt;
    }
}

TEST(Verlet, RestitutionDampsBounces)
{
    auto bodies = floorAndBall({0, 5.5f, 0}, 0.5f);
    PhysicsState state = PhysicsState::atRest(bodies, {1});
    float previousY = bodies[1].position.y, firstApex = 0;
    bool rising = false;
    for (int i = 0; i < 600 && firstApex == 0; ++i)
    {
        verletStep(state, bodies, 0.0f, kDefaultTimeStep);
        const float y = bodies[1].position.y;
        if (rising && y < previousY) firstApex = previousY - 0.5f;
        rising = y > previousY;
        previousY = y;
    }
    // Apex height scales with restitution squared.
    EXPECT_NEAR(firstApex / 5.0f, kDefaultRestitution * kDefaultRestitution, 0.05f);
}
