#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

#include "rt/benchmark.hpp"
#include "rt/frame_server.hpp"

using namespace rt;

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace
{

constexpr int kW = 32, kH = 18;

struct Fixture
{
    FrameLoop loop{buildBenchmarkScene(), {}, benchmarkCamera(), RenderParams{1, 1, kW, kH},
                   FrameLoopOptions{30.0, kDefaultTimeStep, 1, 0.0f}};
    FrameServer server{loop, ServerOptions{"127.0.0.1", 0, 3}};
    Fixture() { server.start(); }
    ~Fixture() { server.stop(); }
};

struct Client
{
    net::io_context ioc;
    websocket::stream<tcp::socket> ws{ioc};

    explicit Client(std::uint16_t port)
    {
        tcp::resolver resolver(ioc);
        net::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
        ws.handshake("127.0.0.1", "/stream");
    }

    // Reads until a binary frame arrives; text replies are collected.
    std::vector<std::uint8_t> nextFrame(std::vector<std::string> *texts = nullptr)
    {
        for (;;)
        {
            beast::flat_buffer buf;
            ws.read(buf);
            const auto data = buf.cdata();
            const auto *p = static_cast<const std::uint8_t *>(data.data());
            if (ws.got_binary()) return {p, p + data.size()};
            if (texts) texts->emplace_back(reinterpret_cast<const char *>(p), data.size());
        }
    }
};

std::uint32_t probe(const std::vector<std::uint8_t> &frame)
{
    // Centre pixel, RGBA.
    const std::size_t off = kFrameHeaderSize + (static_cast<std::size_t>(kH / 2) * kW + kW / 2) * 4;
    return (std::uint32_t{frame[off]} << 24) | (frame[off + 1] << 16) | (frame[off + 2] << 8) | frame[off + 3];
}

} // namespace

TEST(FrameServer, HealthzReportsVersion)
{
    Fixture f;
    net::io_context ioc;
    beast::tcp_stream stream(ioc);
    tcp::resolver resolver(ioc);
    stream.connect(resolver.resolve("127.0.0.1", std::to_string(f.server.port())));

    http::request<http::empty_body> req{http::verb::get, "/healthz", 11};
    req.set(http::field::host, "127.0.0.1");
    http::write(stream, req);
    beast::flat_buffer buf;
    http::response<http::string_body> res;
    http::read(stream, buf, res);
    EXPECT_EQ(res.result(), http::status::ok);
    const auto j = nlohmann::json::parse(res.body());
    EXPECT_EQ(j.at("status"), "ok");
    EXPECT_EQ(j.at("version"), buildVersion());

    http::request<http::empty_body> other{http::verb::get, "/nope", 11};
    other.set(http::field::host, "127.0.0.1");
    http::write(stream, other);
    http::response<http::string_body> missing;
    http::read(stream, buf, missing);
    EXPECT_EQ(missing.result(), http::status::not_found);
}

TEST(FrameServer, StreamsIncreasingFrameIds)
{
    Fixture f;
    Client c(f.server.port());
    std::uint32_t last = 0;
    for (int i = 0; i < 5; ++i)
    {
        const auto frame = c.nextFrame();
        const auto header = decodeFrameHeader(frame);
        ASSERT_TRUE(header);
        EXPECT_EQ(header->width, kW);
        EXPECT_EQ(header->height, kH);
        if (i > 0) { EXPECT_GT(header->frameId, last); }
        last = header->frameId;
    }
    EXPECT_EQ(f.server.viewerCount(), 1u);
}

TEST(FrameServer, CameraChangeVisibleWithinTwoFrames)
{
    Fixture f;
    Client c(f.server.port());
    const std::uint32_t before = probe(c.nextFrame());

    Camera cam = benchmarkCamera();
    cam.yaw += 1.2f;
    c.ws.text(true);
    c.ws.write(net::buffer(controlToJson(CameraCommand{cam})));
    // One frame may already be in flight when the command lands.
    c.nextFrame();
    EXPECT_NE(probe(c.nextFrame()), before);
}

TEST(FrameServer, MalformedControlGetsErrorAndConnectionSurvives)
{
    Fixture f;
    Client c(f.server.port());
    c.nextFrame();
    c.ws.text(true);
    c.ws.write(net::buffer(std::string(R"({"type":"params","samples":0,"bounces":1})")));
    c.ws.write(net::buffer(std::string("{oops")));

    std::vector<std::string> texts;
    for (int i = 0; i < 20 && texts.size() < 2; ++i) c.nextFrame(&texts);
    ASSERT_EQ(texts.size(), 2u);
    for (const auto &t : texts)
    {
        const auto j = nlohmann::json::parse(t);
        EXPECT_EQ(j.at("type"), "error");
        EXPECT_FALSE(j.at("reason").get<std::string>().empty());
    }
    EXPECT_TRUE(decodeFrameHeader(c.nextFrame()));
}
