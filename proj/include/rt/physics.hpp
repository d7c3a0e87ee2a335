#pragma once

#include <span>
#include <vector>

#include "rt/geometry.hpp"

namespace rt
{

inline constexpr Vec3 kDefaultGravity{0.0f, -9.8f, 0.0f};
inline constexpr float kDefaultRestitution = 0.85f;
inline constexpr float kDefaultTimeStep = 1.0f / 60.0f;

// Position-Verlet state for the dynamic spheres of a scene. bodyIndices[i]
// names the body driven by positions[i].
struct PhysicsState
{
    std::vector<std::size_t> bodyIndices;
    std::vector<Vec3> positions;
    std::vector<Vec3> prevPositions;
    Vec3 acceleration = kDefaultGravity;
    float restitution = kDefaultRestitution;

    // Starts each listed sphere at rest at its current position.
    static PhysicsState atRest(std::span<const Body> bodies, std::vector<std::size_t> dynamicIndices);
};

// Advances every dynamic sphere by one step: next = 2 pos - prev + a dt^2,
// then bounces spheres that sink below the floor with the state's
// restitution. Writes the new centers back into `bodies`.
void verletStep(PhysicsState &state, std::span<Body> bodies, float floorHeight, float dt);

} // namespace rt
