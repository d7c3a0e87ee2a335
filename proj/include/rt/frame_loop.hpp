#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <vector>

#include "rt/control.hpp"
#include "rt/physics.hpp"
#include "rt/scene.hpp"

namespace rt
{

using EncodedFrame = std::shared_ptr<const std::vector<std::uint8_t>>;

// Receives every finished frame, already encoded for the wire.
using FrameSink = std::function<void(std::uint32_t frameId, const EncodedFrame &frame)>;

struct FrameLoopOptions
{
    double targetHz = 60.0;
    float timeStep = kDefaultTimeStep;
    unsigned workers = 0;
    float floorHeight = 0.0f;
};

// Owns the live scene. Each step drains the control mailbox (latest message
// per category wins), advances physics unless paused, renders, and hands
// the encoded frame to the sink. post() may be called from any thread; all
// other members belong to the loop thread.
class FrameLoop
{
  public:
    FrameLoop(Scene scene, std::vector<std::size_t> dynamicBodies, Camera camera, RenderParams params,
              FrameLoopOptions options = {});

    void post(const ControlMessage &msg);

    // Runs one iteration and returns the id of the frame it produced.
    std::uint32_t step(const FrameSink &sink = {});

    // Steps at the target cadence until stop is requested. No frames are
    // skipped when rendering is slower than the target.
    void run(std::stop_token stop, const FrameSink &sink);

    const Framebuffer &framebuffer() const { return m_framebuffer; }
    const Scene &scene() const { return m_scene; }
    const Camera &camera() const { return m_camera; }
    const RenderParams &params() const { return m_params; }
    bool paused() const { return m_paused; }
    std::uint32_t framesProduced() const { return m_nextFrameId; }

  private:
    struct Mailbox
    {
        std::optional<Camera> camera;
        std::optional<ParamsCommand> params;
        std::optional<ResizeCommand> resize;
        std::optional<bool> pause;
    };

    void applyPending();

    Scene m_scene;
    PhysicsState m_physics;
    Camera m_camera;
    RenderParams m_params;
    FrameLoopOptions m_options;
    bool m_paused = false;
    Framebuffer m_framebuffer;
    std::uint32_t m_nextFrameId = 0;

    std::mutex m_mailboxMutex;
    Mailbox m_mailbox;
};

} // namespace rt
