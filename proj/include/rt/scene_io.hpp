#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rt/camera.hpp"
#include "rt/scene.hpp"

namespace rt
{

// Failure to read an image or scene file. offset is the byte position in
// the file where parsing stopped, when known.
class LoadError : public std::runtime_error
{
  public:
    LoadError(std::string path, std::optional<std::size_t> offset, const std::string &what);

    const std::string &path() const { return m_path; }
    std::optional<std::size_t> offset() const { return m_offset; }

  private:
    std::string m_path;
    std::optional<std::size_t> m_offset;
};

// A scene as stored on disk plus the bits that are not part of rt::Scene.
struct SceneDocument
{
    Scene scene;
    std::vector<std::size_t> dynamicBodies;
    std::optional<float> floorHeight; // plane height, when a plane exists
    std::optional<std::string> skyboxPath;
    std::optional<Camera> camera;
    std::vector<std::string> warnings;
};

// Parses the JSON scene format. Skybox paths are resolved relative to
// baseDir; an unreadable skybox leaves the scene without one and adds a
// warning. Throws LoadError on malformed or invalid documents.
SceneDocument parseScene(const std::string &json, const std::filesystem::path &baseDir = {},
                         const std::string &sourceName = "<memory>");

SceneDocument loadSceneFile(const std::filesystem::path &path);

std::string serializeScene(const SceneDocument &doc);

// Reads binary or ASCII PPM (P6/P3) or Radiance RGBE (.hdr). PPM samples are
// normalized by maxval; HDR values are kept as-is.
Skybox loadSkybox(const std::filesystem::path &path);
Skybox decodePpm(const std::string &bytes, const std::string &sourceName = "<memory>");
Skybox decodeRadianceHdr(const std::string &bytes, const std::string &sourceName = "<memory>");

// Binary PPM: "P6\n<w> <h>\n255\n" then RGB bytes, alpha dropped.
// Throws std::runtime_error if the stream fails.
void writePPM(const Framebuffer &fb, std::ostream &sink);
void writePPM(const Framebuffer &fb, const std::filesystem::path &path);

} // namespace rt
