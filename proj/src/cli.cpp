#include "rt/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <limits>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "rt/frame_server.hpp"
#include "rt/renderer.hpp"
#include "rt/scene_io.hpp"

namespace rt::cli
{

namespace
{

std::atomic<bool> g_interrupted{false};

extern "C" void onSignal(int) { g_interrupted.store(true); }

struct LoadedScene
{
    Scene scene;
    Camera camera;
    std::vector<std::size_t> dynamicBodies;
    float floorHeight = std::numeric_limits<float>::lowest();
};

LoadedScene loadOrDefault(const std::string &path, std::ostream &err)
{
    LoadedScene out;
    if (path.empty())
    {
        out.scene = buildBenchmarkScene();
        out.camera = benchmarkCamera();
        out.floorHeight = 0.0f;
        return out;
    }
    SceneDocument doc = loadSceneFile(path);
    for (const auto &w : doc.warnings) err << "warning: " << w << '\n';
    out.scene = std::move(doc.scene);
    out.camera = doc.camera.value_or(benchmarkCamera());
    out.dynamicBodies = std::move(doc.dynamicBodies);
    if (doc.floorHeight) out.floorHeight = *doc.floorHeight;
    return out;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Hooks &hooks)
{
    CLI::App app{"CPU data-parallel Whitted ray tracer"};
    app.require_subcommand(1);

    // render
    std::string renderScene, renderOut;
    RenderParams renderParams;
    unsigned renderWorkers = 0;
    auto *render = app.add_subcommand("render", "Render one frame to a binary PPM file");
    render->add_option("--scene", renderScene, "Scene JSON file (default: built-in benchmark scene)");
    render->add_option("--width", renderParams.width)->check(CLI::Range(1, 65535));
    render->add_option("--height", renderParams.height)->check(CLI::Range(1, 65535));
    render->add_option("--samples", renderParams.shadowSamples, "Soft-shadow samples per hit")->check(CLI::PositiveNumber);
    render->add_option("--bounces", renderParams.bounceLimit, "Reflection bounce limit")->check(CLI::Range(0, kMaxBounceLimit));
    render->add_option("--workers", renderWorkers, "Worker threads (0 = all hardware threads)");
    render->add_option("--out", renderOut, "Output .ppm path")->required();

    // bench
    std::string resolution = "720p";
    RenderParams benchParams;
    BenchOptions benchOptions;
    unsigned benchWorkers = 0;
    bool benchJson = false;
    auto *bench = app.add_subcommand("bench", "Time the benchmark scene");
    bench->add_option("--resolution", resolution, "720p, 1080p or 4k")->check(CLI::IsMember({"720p", "1080p", "4k", "4K"}));
    bench->add_option("--samples", benchParams.shadowSamples)->check(CLI::PositiveNumber);
    bench->add_option("--bounces", benchParams.bounceLimit)->check(CLI::Range(0, kMaxBounceLimit));
    bench->add_option("--warmup", benchOptions.warmupFrames, "Untimed warmup frames")->check(CLI::NonNegativeNumber);
    bench->add_option("--frames", benchOptions.measuredFrames, "Timed frames to average")->check(CLI::PositiveNumber);
    bench->add_option("--workers", benchWorkers, "Worker threads (0 = all hardware threads)");
    bench->add_flag("--json", benchJson, "Print the report as JSON");

    // serve
    std::string serveScene;
    RenderParams serveParams;
    ServerOptions serverOptions;
    FrameLoopOptions loopOptions;
    auto *serve = app.add_subcommand("serve", "Stream frames to WebSocket viewers");
    serve->add_option("--port", serverOptions.port);
    serve->add_option("--address", serverOptions.address);
    serve->add_option("--scene", serveScene);
    serve->add_option("--width", serveParams.width)->check(CLI::Range(1, 65535));
    serve->add_option("--height", serveParams.height)->check(CLI::Range(1, 65535));
    serve->add_option("--samples", serveParams.shadowSamples)->check(CLI::PositiveNumber);
    serve->add_option("--bounces", serveParams.bounceLimit)->check(CLI::Range(0, kMaxBounceLimit));
    serve->add_option("--hz", loopOptions.targetHz, "Target frame rate")->check(CLI::PositiveNumber);
    serve->add_option("--workers", loopOptions.workers);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e, out, err);
    }

    try
    {
        if (*render)
        {
            const LoadedScene s = loadOrDefault(renderScene, err);
            Framebuffer fb(renderParams.width, renderParams.height);
            renderFrame(s.scene, s.camera, renderParams, fb, renderWorkers);
            writePPM(fb, renderOut);
            out << "wrote " << renderOut << " (" << fb.width << "x" << fb.height << ")\n";
            return 0;
        }
        if (*bench)
        {
            const Resolution res = *parseResolution(resolution);
            benchParams.width = res.width;
            benchParams.height = res.height;
            BenchReport report;
            if (hooks.benchRenderer)
            {
                report = runBenchmark(hooks.benchRenderer(benchParams), benchOptions);
                report.shadowSamples = benchParams.shadowSamples;
                report.bounceLimit = benchParams.bounceLimit;
                report.workers = benchWorkers;
            }
            else
            {
                report = runBenchmark(buildBenchmarkScene(), benchmarkCamera(), benchParams, benchWorkers, benchOptions);
            }
            report.resolution = res.label;
            if (benchJson)
                out << reportJson(report) << '\n';
            else
                printReport(report, out);
            return 0;
        }
        if (*serve)
        {
            LoadedScene s = loadOrDefault(serveScene, err);
            loopOptions.floorHeight = s.floorHeight;
            FrameLoop loop(std::move(s.scene), std::move(s.dynamicBodies), s.camera, serveParams, loopOptions);
            FrameServer server(loop, serverOptions);
            server.start();
            out << "serving on http://" << serverOptions.address << ':' << server.port()
                << " (WebSocket /stream, health /healthz)" << std::endl;

            g_interrupted.store(false);
            std::signal(SIGINT, onSignal);
            std::signal(SIGTERM, onSignal);
            while (!g_interrupted.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
            server.stop();
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace rt::cli
