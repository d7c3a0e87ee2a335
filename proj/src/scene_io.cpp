#include "rt/scene_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace rt
{

using nlohmann::json;

LoadError::LoadError(std::string path, std::optional<std::size_t> offset, const std::string &what)
    : std::runtime_error(path + (offset ? " (byte " + std::to_string(*offset) + ")" : std::string{}) + ": " + what),
      m_path(std::move(path)), m_offset(offset)
{
}

namespace
{

std::string readFile(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(path.string(), std::nullopt, "cannot open file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Vec3 readVec3(const json &j, const char *key)
{
    const json &a = j.at(key);
    if (!a.is_array() || a.size() != 3) throw std::invalid_argument(std::string(key) + " must be an array of 3 numbers");
    return {a.at(0).get<float>(), a.at(1).get<float>(), a.at(2).get<float>()};
}

json writeVec3(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

Camera readCamera(const json &j)
{
    Camera cam;
    cam.position = readVec3(j, "position");
    cam.yaw = j.value("yaw", 0.0f);
    cam.pitch = j.value("pitch", 0.0f);
    cam.fov = j.value("fov", cam.fov);
    if (!isValidFov(cam.fov)) throw std::invalid_argument("camera fov must lie in (0, 180)");
    return cam;
}

} // namespace

SceneDocument parseScene(const std::string &text, const std::filesystem::path &baseDir,
                         const std::string &sourceName)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw LoadError(sourceName, e.byte, e.what());
    }

    SceneDocument doc;
    Scene &scene = doc.scene;
    try
    {
        scene.ambient = j.value("ambient", kDefaultAmbient);
        scene.maxReflectivity = j.value("maxReflectivity", kDefaultMaxReflectivity);

        const json &light = j.at("light");
        scene.light.position = readVec3(light, "position");
        scene.light.radius = light.at("radius").get<float>();
        scene.light.color = light.contains("color") ? readVec3(light, "color") : Vec3{1.0f, 1.0f, 1.0f};

        if (j.contains("plane"))
        {
            const json &p = j.at("plane");
            const float height = p.at("height").get<float>();
            scene.bodies.push_back(Body::plane(height, readVec3(p, "color"), p.value("reflectivity", 0.0f)));
            doc.floorHeight = height;
        }
        if (j.contains("spheres"))
        {
            for (const json &s : j.at("spheres"))
            {
                scene.bodies.push_back(Body::sphere(readVec3(s, "position"), s.at("radius").get<float>(),
                                                    readVec3(s, "color"), s.value("reflectivity", 0.0f)));
                if (s.value("dynamic", false)) doc.dynamicBodies.push_back(scene.bodies.size() - 1);
            }
        }
        if (j.contains("camera")) doc.camera = readCamera(j.at("camera"));
        if (j.contains("skybox") && !j.at("skybox").is_null()) doc.skyboxPath = j.at("skybox").get<std::string>();

        validateScene(scene);
    }
    catch (const json::exception &e)
    {
        throw LoadError(sourceName, std::nullopt, e.what());
    }
    catch (const std::invalid_argument &e)
    {
        throw LoadError(sourceName, std::nullopt, e.what());
    }

    if (doc.skyboxPath)
    {
        std::filesystem::path p(*doc.skyboxPath);
        if (p.is_relative() && !baseDir.empty()) p = baseDir / p;
        try
        {
            scene.skybox = std::make_shared<const Skybox>(loadSkybox(p));
        }
        catch (const LoadError &e)
        {
            doc.warnings.push_back(std::string("skybox unavailable, using black background: ") + e.what());
        }
    }
    return doc;
}

SceneDocument loadSceneFile(const std::filesystem::path &path)
{
    return parseScene(readFile(path), path.parent_path(), path.string());
}

std::string serializeScene(const SceneDocument &doc)
{
    const Scene &scene = doc.scene;
    json j;
    j["ambient"] = scene.ambient;
    j["maxReflectivity"] = scene.maxReflectivity;
    j["light"] = {{"position", writeVec3(scene.light.position)},
                  {"radius", scene.light.radius},
                  {"color", writeVec3(scene.light.color)}};

    json spheres = json::array();
    bool planeWritten = false;
    for (std::size_t i = 0; i < scene.bodies.size(); ++i)
    {
        const Body &b = scene.bodies[i];
        if (b.kind == BodyKind::HorizontalPlane)
        {
            if (planeWritten) throw std::invalid_argument("scene format holds at most one plane");
            j["plane"] = {{"height", b.position.y}, {"color", writeVec3(b.color)}, {"reflectivity", b.reflectivity}};
            planeWritten = true;
            continue;
        }
        const bool dynamic = std::find(doc.dynamicBodies.begin(), doc.dynamicBodies.end(), i) != doc.dynamicBodies.end();
        spheres.push_back({{"position", writeVec3(b.position)},
                           {"radius", b.size},
                           {"color", writeVec3(b.color)},
                           {"reflectivity", b.reflectivity},
                           {"dynamic", dynamic}});
    }
    j["spheres"] = std::move(spheres);
    if (doc.skyboxPath) j["skybox"] = *doc.skyboxPath;
    if (doc.camera)
    {
        j["camera"] = {{"position", writeVec3(doc.camera->position)},
                       {"yaw", doc.camera->yaw},
                       {"pitch", doc.camera->pitch},
                       {"fov", doc.camera->fov}};
    }
    return j.dump(2);
}

namespace
{

// Cursor over an in-memory image file that reports byte offsets on error.
class ByteReader
{
  public:
    ByteReader(const std::string &bytes, std::string source) : m_bytes(bytes), m_source(std::move(source)) {}

    [[noreturn]] void fail(const std::string &what) const { throw LoadError(m_source, m_pos, what); }

    bool atEnd() const { return m_pos >= m_bytes.size(); }
    std::size_t pos() const { return m_pos; }

    unsigned char byte()
    {
        if (atEnd()) fail("unexpected end of file");
        return static_cast<unsigned char>(m_bytes[m_pos++]);
    }

    // Skips whitespace and '#' comments between PPM header tokens.
    void skipSpace()
    {
        while (!atEnd())
        {
            const char c = m_bytes[m_pos];
            if (c == '#')
            {
                while (!atEnd() && m_bytes[m_pos] != '\n') ++m_pos;
            }
            else if (std::isspace(static_cast<unsigned char>(c)))
            {
                ++m_pos;
            }
            else
            {
                break;
            }
        }
    }

    std::string token()
    {
        skipSpace();
        const std::size_t start = m_pos;
        while (!atEnd() && !std::isspace(static_cast<unsigned char>(m_bytes[m_pos])) && m_bytes[m_pos] != '#') ++m_pos;
        if (start == m_pos) fail("expected a header token");
        return m_bytes.substr(start, m_pos - start);
    }

    long number()
    {
        skipSpace();
        const std::size_t at = m_pos;
        const std::string t = token();
        long v = 0;
        for (char c : t)
        {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw LoadError(m_source, at, "expected a number, got '" + t + "'");
            v = v * 10 + (c - '0');
            if (v > 1'000'000'000L) throw LoadError(m_source, at, "number out of range");
        }
        return v;
    }

    std::string line()
    {
        const std::size_t start = m_pos;
        while (!atEnd() && m_bytes[m_pos] != '\n') ++m_pos;
        std::string out = m_bytes.substr(start, m_pos - start);
        if (!atEnd()) ++m_pos;
        return out;
    }

  private:
    const std::string &m_bytes;
    std::string m_source;
    std::size_t m_pos = 0;
};

void checkDimensions(ByteReader &r, long w, long h)
{
    if (w < 1 || h < 1) r.fail("image dimensions must be positive");
    if (w * h > 64L * 1024 * 1024) r.fail("image too large");
}

} // namespace

Skybox decodePpm(const std::string &bytes, const std::string &sourceName)
{
    ByteReader r(bytes, sourceName);
    const std::string magic = r.token();
    if (magic != "P6" && magic != "P3") r.fail("not a PPM file (magic '" + magic + "')");
    const long w = r.number();
    const long h = r.number();
    const long maxval = r.number();
    checkDimensions(r, w, h);
    if (maxval < 1 || maxval > 65535) r.fail("PPM maxval must lie in [1, 65535]");

    Skybox sky;
    sky.width = static_cast<int>(w);
    sky.height = static_cast<int>(h);
    sky.texels.resize(static_cast<std::size_t>(w * h));
    const float scaleBy = 1.0f / static_cast<float>(maxval);

    if (magic == "P6")
    {
        r.byte(); // single whitespace after maxval
        const bool wide = maxval > 255;
        auto sample = [&] {
            unsigned v = r.byte();
            if (wide) v = (v << 8) | r.byte();
            return static_cast<float>(v) * scaleBy;
        };
        for (Vec3 &t : sky.texels) t = {sample(), sample(), sample()};
    }
    else
    {
        auto sample = [&] {
            const long v = r.number();
            if (v > maxval) r.fail("sample exceeds maxval");
            return static_cast<float>(v) * scaleBy;
        };
        for (Vec3 &t : sky.texels) t = {sample(), sample(), sample()};
    }
    return sky;
}

Skybox decodeRadianceHdr(const std::string &bytes, const std::string &sourceName)
{
    ByteReader r(bytes, sourceName);
    const std::string first = r.line();
    if (first.rfind("#?", 0) != 0) r.fail("not a Radiance HDR file");
    for (;;)
    {
        if (r.atEnd()) r.fail("header not terminated by a blank line");
        const std::string l = r.line();
        if (l.empty()) break;
        if (l.rfind("FORMAT=", 0) == 0 && l != "FORMAT=32-bit_rle_rgbe") r.fail("unsupported HDR format '" + l + "'");
    }

    const std::size_t resAt = r.pos();
    const std::string res = r.line();
    std::istringstream rs(res);
    std::string ya, xa;
    long h = 0, w = 0;
    if (!(rs >> ya >> h >> xa >> w) || ya != "-Y" || xa != "+X")
        throw LoadError(sourceName, resAt, "unsupported resolution line '" + res + "'");
    checkDimensions(r, w, h);

    Skybox sky;
    sky.width = static_cast<int>(w);
    sky.height = static_cast<int>(h);
    sky.texels.resize(static_cast<std::size_t>(w * h));

    std::vector<unsigned char> scan(static_cast<std::size_t>(w) * 4);
    for (long y = 0; y < h; ++y)
    {
        const unsigned char b0 = r.byte();
        const unsigned char b1 = r.byte();
        const unsigned char b2 = r.byte();
        const unsigned char b3 = r.byte();
        const bool rle = w >= 8 && w < 32768 && b0 == 2 && b1 == 2 && (b2 & 0x80) == 0;
        if (rle)
        {
            if (((b2 << 8) | b3) != w) r.fail("scanline width mismatch");
            // Four planar channels, each run-length encoded.
            for (int c = 0; c < 4; ++c)
            {
                long x = 0;
                while (x < w)
                {
                    unsigned count = r.byte();
                    if (count > 128)
                    {
                        count -= 128;
                        if (x + count > w) r.fail("run overflows scanline");
                        const unsigned char v = r.byte();
                        for (unsigned k = 0; k < count; ++k) scan[static_cast<std::size_t>(x++) * 4 + c] = v;
                    }
                    else
                    {
                        if (count == 0 || x + count > w) r.fail("bad literal run length");
                        for (unsigned k = 0; k < count; ++k) scan[static_cast<std::size_t>(x++) * 4 + c] = r.byte();
                    }
                }
            }
        }
        else
        {
            scan[0] = b0;
            scan[1] = b1;
            scan[2] = b2;
            scan[3] = b3;
            for (std::size_t i = 4; i < scan.size(); ++i) scan[i] = r.byte();
        }

        for (long x = 0; x < w; ++x)
        {
            const unsigned char *p = &scan[static_cast<std::size_t>(x) * 4];
            Vec3 &t = sky.texels[static_cast<std::size_t>(x + y * w)];
            if (p[3] == 0)
            {
                t = {};
                continue;
            }
            const float f = std::ldexp(1.0f, static_cast<int>(p[3]) - (128 + 8));
            t = {static_cast<float>(p[0]) * f, static_cast<float>(p[1]) * f, static_cast<float>(p[2]) * f};
        }
    }
    return sky;
}

Skybox loadSkybox(const std::filesystem::path &path)
{
    const std::string bytes = readFile(path);
    if (bytes.rfind("#?", 0) == 0) return decodeRadianceHdr(bytes, path.string());
    return decodePpm(bytes, path.string());
}

void writePPM(const Framebuffer &fb, std::ostream &sink)
{
    sink << "P6\n" << fb.width << ' ' << fb.height << "\n255\n";
    std::string rgb;
    rgb.reserve(fb.pixels.size() * 3);
    for (std::uint32_t p : fb.pixels)
    {
        rgb.push_back(static_cast<char>((p >> 16) & 0xFF));
        rgb.push_back(static_cast<char>((p >> 8) & 0xFF));
        rgb.push_back(static_cast<char>(p & 0xFF));
    }
    sink.write(rgb.data(), static_cast<std::streamsize>(rgb.size()));
    sink.flush();
    if (!sink) throw std::runtime_error("failed to write PPM image");
}

void writePPM(const Framebuffer &fb, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writePPM(fb, out);
}

} // namespace rt
