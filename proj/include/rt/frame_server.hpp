#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "rt/frame_loop.hpp"

namespace rt
{

struct ServerOptions
{
    std::string address = "0.0.0.0";
    std::uint16_t port = 8090; // 0 picks an ephemeral port
    std::size_t sendQueueFrames = 3;
};

// HTTP + WebSocket front end for a FrameLoop.
//   GET /healthz  -> 200 {"status":"ok","version":...}
//   /stream       -> WebSocket; binary frames out, JSON control text in.
// Invalid control messages get a {"type":"error"} text reply and the
// connection stays open. Each viewer has a bounded send queue that drops
// its oldest frame when full, so a slow viewer never stalls the loop.
class FrameServer
{
  public:
    FrameServer(FrameLoop &loop, ServerOptions options);
    ~FrameServer();

    FrameServer(const FrameServer &) = delete;
    FrameServer &operator=(const FrameServer &) = delete;

    // Binds the port and starts the network and frame-loop threads.
    void start();
    void stop();

    // Valid after start(); reports the bound port.
    std::uint16_t port() const;
    std::size_t viewerCount() const;

  private:
    class Impl;
    std::unique_ptr<Impl> m_impl;
};

const char *buildVersion();

} // namespace rt
