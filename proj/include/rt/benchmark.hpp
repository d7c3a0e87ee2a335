#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "rt/camera.hpp"
#include "rt/scene.hpp"

namespace rt
{

inline constexpr int kDefaultWarmupFrames = 100;
inline constexpr int kDefaultMeasuredFrames = 10;

struct Resolution
{
    std::string label;
    int width = 0;
    int height = 0;
};

// "720p" -> 1280x720, "1080p" -> 1920x1080, "4k" -> 3840x2160.
std::optional<Resolution> parseResolution(std::string_view label);

// Fixed evaluation scene: one spherical light, a floor plane (body 0) and
// five spheres of increasing reflectivity, under a procedural sky.
Scene buildBenchmarkScene();
Camera benchmarkCamera();

struct BenchOptions
{
    int warmupFrames = kDefaultWarmupFrames;
    int measuredFrames = kDefaultMeasuredFrames;
};

struct BenchReport
{
    std::string resolution;
    int shadowSamples = 0;
    int bounceLimit = 0;
    unsigned workers = 0;
    int warmupFrames = 0;
    int measuredFrames = 0;
    double avgFrameMs = 0.0;
    double fps = 0.0;
};

// Renders one frame when invoked; the benchmark times each call.
using FrameRenderer = std::function<void()>;

// Calls render warmupFrames times untimed, then measuredFrames times with a
// monotonic clock around each call, and reports the mean. Only the timing
// fields and frame counts of the report are filled in.
BenchReport runBenchmark(const FrameRenderer &render, const BenchOptions &options);

BenchReport runBenchmark(const Scene &scene, const Camera &cam, const RenderParams &params, unsigned workers,
                         const BenchOptions &options);

void printReport(const BenchReport &report, std::ostream &out);
std::string reportJson(const BenchReport &report);

} // namespace rt
