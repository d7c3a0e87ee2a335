#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rt/benchmark.hpp"

namespace rt::cli
{

struct Hooks
{
    // Replaces the real per-frame render in `bench` (instrumentation).
    std::function<FrameRenderer(const RenderParams &)> benchRenderer;
};

// Entry point shared by the rt binary and the tests. args excludes argv[0].
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Hooks &hooks = {});

} // namespace rt::cli
