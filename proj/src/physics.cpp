#include "rt/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace rt
{

PhysicsState PhysicsState::atRest(std::span<const Body> bodies, std::vector<std::size_t> dynamicIndices)
{
    PhysicsState state;
    for (std::size_t idx : dynamicIndices)
    {
        if (idx >= bodies.size() || bodies[idx].kind != BodyKind::Sphere)
            throw std::invalid_argument("dynamic body index must name a sphere");
        state.positions.push_back(bodies[idx].position);
    }
    state.prevPositions = state.positions;
    state.bodyIndices = std::move(dynamicIndices);
    return state;
}

void verletStep(PhysicsState &state, std::span<Body> bodies, float floorHeight, float dt)
{
    if (!(dt > 0.0f)) throw std::invalid_argument("time step must be positive");
    if (state.positions.size() != state.prevPositions.size() || state.positions.size() != state.bodyIndices.size())
        throw std::invalid_argument("physics state arrays differ in length");

    const Vec3 accelStep = state.acceleration * (dt * dt);
    for (std::size_t i = 0; i < state.positions.size(); ++i)
    {
        Body &body = bodies[state.bodyIndices[i]];
        const Vec3 pos = state.positions[i];
        Vec3 next = pos * 2.0f - state.prevPositions[i] + accelStep;
        Vec3 prev = pos;

        const float rest = floorHeight + body.size;
        if (next.y < rest)
        {
            const float incoming = std::abs(next.y - pos.y);
            next.y = rest + state.restitution * (rest - next.y);
            // Implied velocity next - prev becomes the mirrored, damped one.
            prev.y = next.y - state.restitution * incoming;
        }

        state.prevPositions[i] = prev;
        state.positions[i] = next;
        body.position = next;
    }
}

} // namespace rt
