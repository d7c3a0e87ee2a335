#include "rt/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "rt/parallel.hpp"
#include "rt/renderer.hpp"

namespace rt
{

std::optional<Resolution> parseResolution(std::string_view label)
{
    if (label == "720p") return Resolution{"720p", 1280, 720};
    if (label == "1080p") return Resolution{"1080p", 1920, 1080};
    if (label == "4k" || label == "4K") return Resolution{"4k", 3840, 2160};
    return std::nullopt;
}

namespace
{

std::shared_ptr<const Skybox> proceduralSky()
{
    constexpr int width = 256;
    constexpr int height = 128;
    constexpr float pi = std::numbers::pi_v<float>;
    auto sky = std::make_shared<Skybox>();
    sky->width = width;
    sky->height = height;
    sky->texels.resize(static_cast<std::size_t>(width * height));

    const Vec3 zenith{0.25f, 0.45f, 0.85f};
    const Vec3 horizon{0.85f, 0.9f, 1.0f};
    const Vec3 ground{0.3f, 0.27f, 0.24f};
    for (int y = 0; y < height; ++y)
    {
        // Elevation in [-pi/2, pi/2] at the row center.
        const float elevation = (0.5f - (static_cast<float>(y) + 0.5f) / height) * pi;
        for (int x = 0; x < width; ++x)
        {
            const float azimuth = (static_cast<float>(x) + 0.5f) / width * 2.0f * pi;
            const float band = 0.92f + 0.08f * std::cos(4.0f * azimuth);
            Vec3 c;
            if (elevation >= 0.0f)
            {
                const float t = std::sqrt(elevation / (pi / 2.0f));
                c = horizon * (1.0f - t) + zenith * t;
            }
            else
            {
                const float t = std::min(-elevation / 0.3f, 1.0f);
                c = horizon * (1.0f - t) + ground * t;
            }
            sky->texels[static_cast<std::size_t>(x + y * width)] = c * band;
        }
    }
    return sky;
}

} // namespace

Scene buildBenchmarkScene()
{
    Scene scene;
    scene.ambient = kDefaultAmbient;
    scene.maxReflectivity = kDefaultMaxReflectivity;
    scene.light = Light{{-4.0f, 7.0f, -1.0f}, 0.8f, {1.0f, 1.0f, 0.95f}};
    scene.bodies = {
        Body::plane(0.0f, {0.75f, 0.75f, 0.7f}, 16.0f),
        Body::sphere({-2.6f, 0.8f, 2.0f}, 0.8f, {0.85f, 0.2f, 0.2f}, 8.0f),
        Body::sphere({-0.9f, 0.6f, 0.5f}, 0.6f, {0.2f, 0.75f, 0.3f}, 32.0f),
        Body::sphere({0.0f, 1.2f, 3.0f}, 1.2f, {0.95f, 0.95f, 0.95f}, 128.0f),
        Body::sphere({1.3f, 0.5f, 0.6f}, 0.5f, {0.9f, 0.8f, 0.2f}, 64.0f),
        Body::sphere({2.8f, 0.9f, 2.2f}, 0.9f, {0.2f, 0.35f, 0.9f}, 96.0f),
    };
    scene.skybox = proceduralSky();
    return scene;
}

Camera benchmarkCamera() { return Camera{{0.0f, 0.45f, -2.0f}, 0.0f, -0.08f, 60.0f}; }

BenchReport runBenchmark(const FrameRenderer &render, const BenchOptions &options)
{
    if (options.warmupFrames < 0) throw std::invalid_argument("warmup frame count must be non-negative");
    if (options.measuredFrames < 1) throw std::invalid_argument("at least one measured frame is required");

    for (int i = 0; i < options.warmupFrames; ++i) render();

    using Clock = std::chrono::steady_clock;
    Clock::duration total{};
    for (int i = 0; i < options.measuredFrames; ++i)
    {
        const auto start = Clock::now();
        render();
        total += Clock::now() - start;
    }

    BenchReport report;
    report.warmupFrames = options.warmupFrames;
    report.measuredFrames = options.measuredFrames;
    report.avgFrameMs = std::chrono::duration<double, std::milli>(total).count() / options.measuredFrames;
    report.fps = report.avgFrameMs > 0.0 ? 1000.0 / report.avgFrameMs : 0.0;
    return report;
}

BenchReport runBenchmark(const Scene &scene, const Camera &cam, const RenderParams &params, unsigned workers,
                         const BenchOptions &options)
{
    validateParams(params);
    Framebuffer fb(params.width, params.height);
    BenchReport report = runBenchmark([&] { renderFrame(scene, cam, params, fb, workers); }, options);
    report.resolution = fmt::format("{}x{}", params.width, params.height);
    report.shadowSamples = params.shadowSamples;
    report.bounceLimit = params.bounceLimit;
    report.workers = resolveWorkers(workers);
    return report;
}

void printReport(const BenchReport &r, std::ostream &out)
{
    out << fmt::format("resolution={} samples={} bounces={} workers={} warmup={} frames={} avg_ms={:.3f} fps={:.2f}\n",
                       r.resolution, r.shadowSamples, r.bounceLimit, r.workers, r.warmupFrames, r.measuredFrames,
                       r.avgFrameMs, r.fps);
}

std::string reportJson(const BenchReport &r)
{
    nlohmann::json j{{"resolution", r.resolution},     {"shadowSamples", r.shadowSamples},
                     {"bounceLimit", r.bounceLimit},   {"workers", r.workers},
                     {"warmupFrames", r.warmupFrames}, {"measuredFrames", r.measuredFrames},
                     {"avgFrameMs", r.avgFrameMs},     {"fps", r.fps}};
    return j.dump();
}

} // namespace rt
