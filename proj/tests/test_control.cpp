#include <gtest/gtest.h>

#include <json.hpp>

#include "rt/benchmark.hpp"
#include "rt/control.hpp"
#include "rt/frame_loop.hpp"
#include "rt/renderer.hpp"

using namespace rt;

TEST(Control, ParsesEachMessageType)
{
    const auto cam = handleControl(R"({"type":"camera","pos":[1,2,3],"yaw":0.5,"pitch":-0.25,"fov":70})");
    EXPECT_EQ(std::get<CameraCommand>(cam).camera.position, (Vec3{1, 2, 3}));
    EXPECT_FLOAT_EQ(std::get<CameraCommand>(cam).camera.fov, 70.0f);
    EXPECT_EQ(std::get<ParamsCommand>(handleControl(R"({"type":"params","samples":50,"bounces":3})")),
              (ParamsCommand{50, 3}));
    EXPECT_EQ(std::get<ResizeCommand>(handleControl(R"({"type":"resize","width":640,"height":360})")),
              (ResizeCommand{640, 360}));
    EXPECT_EQ(std::get<PauseCommand>(handleControl(R"({"type":"pause","on":true})")), PauseCommand{true});
}

TEST(Control, RejectsInvalidMessages)
{
    for (const char *raw : {
             "not json",
             "[1,2]",
             R"({"samples":1})",
             R"({"type":"zoom"})",
             R"({"type":"camera","pos":[0,0],"yaw":0,"pitch":0,"fov":60})",
             R"({"type":"camera","pos":[0,0,0],"yaw":0,"pitch":0,"fov":0})",
             R"({"type":"camera","pos":[0,0,0],"yaw":0,"pitch":0,"fov":180})",
             R"({"type":"camera","pos":[0,0,0],"yaw":"x","pitch":0,"fov":60})",
             R"({"type":"params","samples":0,"bounces":1})",
             R"({"type":"params","samples":10001,"bounces":1})",
             R"({"type":"params","samples":1,"bounces":33})",
             R"({"type":"params","samples":1.5,"bounces":1})",
             R"({"type":"resize","width":0,"height":10})",
             R"({"type":"resize","width":3841,"height":2160})",
             R"({"type":"resize","width":70000,"height":1})",
             R"({"type":"pause","on":1})",
         })
        EXPECT_THROW(handleControl(raw), ControlError) << raw;
}

TEST(Control, JsonRoundTrip)
{
    const std::vector<ControlMessage> msgs{CameraCommand{Camera{{1, 2, 3}, 0.5f, -0.25f, 45}}, ParamsCommand{7, 2},
                                           ResizeCommand{320, 200}, PauseCommand{false}};
    for (const auto &m : msgs) EXPECT_EQ(handleControl(controlToJson(m)), m);
}

TEST(Control, ErrorReplyShape)
{
    const auto j = nlohmann::json::parse(errorReply("bad \"thing\""));
    EXPECT_EQ(j.at("type"), "error");
    EXPECT_EQ(j.at("reason"), "bad \"thing\"");
}

TEST(FrameMessage, TwoByTwoFixture)
{
    Framebuffer fb(2, 2);
    fb.pixels = {0xFFFF0000u, 0xFF00FF00u, 0xFF0000FFu, 0x80102030u};
    const std::vector<std::uint8_t> want{
        0x52, 0x41, 0x59, 0x46, // "RAYF"
        0x00, 0x00, 0x01, 0x02, // frameId 258
        0x00, 0x02, 0x00, 0x02, // 2 x 2
        0x01, 0x00, 0x00, 0x00, // RGBA8 + reserved
        0xFF, 0x00, 0x00, 0xFF, 0x00, 0xFF, 0x00, 0xFF, 0x00, 0x00, 0xFF, 0xFF, 0x10, 0x20, 0x30, 0x80,
    };
    EXPECT_EQ(encodeFrameMessage(258, fb), want);

    const auto header = decodeFrameHeader(want);
    ASSERT_TRUE(header);
    EXPECT_EQ(header->frameId, 258u);
    EXPECT_EQ(header->width, 2);
    EXPECT_EQ(header->height, 2);
}

TEST(FrameMessage, DecoderRejectsCorruptMessages)
{
    auto msg = encodeFrameMessage(1, Framebuffer(3, 2));
    EXPECT_TRUE(decodeFrameHeader(msg));
    auto truncated = msg;
    truncated.pop_back();
    EXPECT_FALSE(decodeFrameHeader(truncated));
    auto badMagic = msg;
    badMagic[0] = 'X';
    EXPECT_FALSE(decodeFrameHeader(badMagic));
    auto badFormat = msg;
    badFormat[12] = 9;
    EXPECT_FALSE(decodeFrameHeader(badFormat));
    EXPECT_FALSE(decodeFrameHeader(std::span<const std::uint8_t>(msg.data(), 8)));
}

namespace
{

FrameLoop smallLoop(int w = 16, int h = 9)
{
    Scene scene = buildBenchmarkScene();
    return FrameLoop(scene, {3}, benchmarkCamera(), RenderParams{1, 1, w, h}, FrameLoopOptions{60.0, 1.0f / 60.0f, 1, 0.0f});
}

} // namespace

TEST(FrameLoop, FrameIdsIncreaseAndFramesDecode)
{
    FrameLoop loop = smallLoop();
    std::vector<std::uint32_t> ids;
    for (int i = 0; i < 5; ++i)
        loop.step([&](std::uint32_t id, const EncodedFrame &frame) {
            const auto header = decodeFrameHeader(*frame);
            ASSERT_TRUE(header);
            EXPECT_EQ(header->frameId, id);
            ids.push_back(id);
        });
    EXPECT_EQ(ids, (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(loop.framesProduced(), 5u);
}

TEST(FrameLoop, CameraCommandAppliesToNextFrame)
{
    FrameLoop loop = smallLoop();
    loop.post(PauseCommand{true});
    loop.step();
    const auto before = loop.framebuffer().pixels;
    Camera turned = benchmarkCamera();
    turned.yaw += 0.8f;
    loop.post(CameraCommand{turned});
    loop.step();
    EXPECT_EQ(loop.camera().yaw, turned.yaw);
    EXPECT_NE(loop.framebuffer().pixels, before);

    Framebuffer expected(16, 9);
    renderFrame(loop.scene(), turned, loop.params(), expected, 1);
    EXPECT_EQ(loop.framebuffer().pixels, expected.pixels);
}

TEST(FrameLoop, MailboxKeepsLatestPerCategory)
{
    FrameLoop loop = smallLoop();
    loop.post(ParamsCommand{5, 2});
    loop.post(ResizeCommand{8, 8});
    loop.post(ParamsCommand{9, 4});
    loop.post(PauseCommand{true});
    loop.post(PauseCommand{false});
    loop.post(PauseCommand{true});
    loop.step();
    EXPECT_EQ(loop.params().shadowSamples, 9);
    EXPECT_EQ(loop.params().bounceLimit, 4);
    EXPECT_EQ(loop.framebuffer().width, 8);
    EXPECT_EQ(loop.framebuffer().height, 8);
    EXPECT_TRUE(loop.paused());
}

TEST(FrameLoop, PhysicsAdvancesOnlyWhileRunning)
{
    FrameLoop loop = smallLoop();
    const float y0 = loop.scene().bodies[3].position.y;
    loop.post(PauseCommand{true});
    loop.step();
    EXPECT_EQ(loop.scene().bodies[3].position.y, y0);
    loop.post(PauseCommand{false});
    loop.step();
    loop.step();
    EXPECT_NE(loop.scene().bodies[3].position.y, y0);
}

TEST(FrameLoop, RunStopsOnRequest)
{
    FrameLoop loop = smallLoop(4, 4);
    std::stop_source stop;
    int frames = 0;
    loop.run(stop.get_token(), [&](std::uint32_t, const EncodedFrame &) {
        if (++frames == 3) stop.request_stop();
    });
    EXPECT_EQ(frames, 3);
}
