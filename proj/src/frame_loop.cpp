#include "rt/frame_loop.hpp"

#include <chrono>
#include <thread>

#include "rt/renderer.hpp"

namespace rt
{

FrameLoop::FrameLoop(Scene scene, std::vector<std::size_t> dynamicBodies, Camera camera, RenderParams params,
                     FrameLoopOptions options)
    : m_scene(std::move(scene)), m_camera(camera), m_params(params), m_options(options)
{
    validateScene(m_scene);
    validateParams(m_params);
    m_physics = PhysicsState::atRest(m_scene.bodies, std::move(dynamicBodies));
    m_framebuffer = Framebuffer(m_params.width, m_params.height);
}

void FrameLoop::post(const ControlMessage &msg)
{
    std::lock_guard lock(m_mailboxMutex);
    std::visit(
        [this](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CameraCommand>) m_mailbox.camera = m.camera;
            else if constexpr (std::is_same_v<T, ParamsCommand>) m_mailbox.params = m;
            else if constexpr (std::is_same_v<T, ResizeCommand>) m_mailbox.resize = m;
            else if constexpr (std::is_same_v<T, PauseCommand>) m_mailbox.pause = m.on;
        },
        msg);
}

void FrameLoop::applyPending()
{
    Mailbox pending;
    {
        std::lock_guard lock(m_mailboxMutex);
        pending = std::exchange(m_mailbox, Mailbox{});
    }
    if (pending.camera) m_camera = *pending.camera;
    if (pending.params)
    {
        m_params.shadowSamples = pending.params->samples;
        m_params.bounceLimit = pending.params->bounces;
    }
    if (pending.resize)
    {
        m_params.width = pending.resize->width;
        m_params.height = pending.resize->height;
        m_framebuffer = Framebuffer(m_params.width, m_params.height);
    }
    if (pending.pause) m_paused = *pending.pause;
}

std::uint32_t FrameLoop::step(const FrameSink &sink)
{
    applyPending();
    if (!m_paused) verletStep(m_physics, m_scene.bodies, m_options.floorHeight, m_options.timeStep);
    renderFrame(m_scene, m_camera, m_params, m_framebuffer, m_options.workers);

    const std::uint32_t id = m_nextFrameId++;
    if (sink) sink(id, std::make_shared<const std::vector<std::uint8_t>>(encodeFrameMessage(id, m_framebuffer)));
    return id;
}

void FrameLoop::run(std::stop_token stop, const FrameSink &sink)
{
    using Clock = std::chrono::steady_clock;
    const auto period = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(m_options.targetHz > 0.0 ? 1.0 / m_options.targetHz : 0.0));
    auto deadline = Clock::now();
    while (!stop.stop_requested())
    {
        step(sink);
        deadline += period;
        const auto now = Clock::now();
        if (deadline > now)
            std::this_thread::sleep_until(deadline);
        else
            deadline = now;
    }
}

} // namespace rt
