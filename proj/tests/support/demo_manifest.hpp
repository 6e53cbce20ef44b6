#pragma once

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "jndkit/codec.hpp"
#include "jndkit/raster.hpp"
#include "jndkit/rng.hpp"
#include "jndkit/store.hpp"

namespace jndkit::testing {

struct DemoOptions {
  int references = 10;
  int size = 32;
  std::vector<std::string> kinds{"blur", "noise"};
  double threshold = 7.0;
  double lapse_rate = 0.0;
  int window = 3;
  int repeats = 3;
  std::string checker = "stub";
  std::uint64_t seed = 11;
};

/// Small seeded textured images plus a manifest over them; returns the
/// manifest path.
inline std::filesystem::path write_demo_manifest(const std::filesystem::path& dir, const DemoOptions& o = {}) {
  std::filesystem::create_directories(dir / "refs");
  nlohmann::json refs = nlohmann::json::array();
  for (int k = 0; k < o.references; ++k) {
    Raster img(o.size, o.size);
    Rng rng(o.seed * 1000 + static_cast<std::uint64_t>(k));
    for (int y = 0; y < o.size; ++y)
      for (int x = 0; x < o.size; ++x)
        for (int c = 0; c < Raster::kChannels; ++c)
          img.at(x, y, c) = static_cast<std::uint8_t>((x * (3 + k) + y * (5 + c) + rng.below(40)) % 256);
    const std::string name = "refs/r" + std::to_string(k) + ".png";
    write_png(dir / name, img);
    refs.push_back({{"id", "r" + std::to_string(k)}, {"path", name}, {"sha256", sha256_file(dir / name)}});
  }
  nlohmann::json ladders = nlohmann::json::array();
  for (const auto& kind : o.kinds) ladders.push_back({{"kind", kind}});
  const nlohmann::json doc{
      {"version", 1},
      {"name", "demo"},
      {"seed", o.seed},
      {"deterministic", true},
      {"references", refs},
      {"ladders", ladders},
      {"perceivers",
       {{"sim", {{"type", "simulated"}, {"threshold", o.threshold}, {"lapse_rate", o.lapse_rate}}}}},
      {"checker", {{"type", o.checker}}},
      {"run", {{"window", o.window}, {"repeats", o.repeats}}}};
  const auto path = dir / "manifest.json";
  std::ofstream(path) << doc.dump(2) << "\n";
  return path;
}

}  // namespace jndkit::testing
