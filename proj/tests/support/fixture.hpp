#pragma once

#include "texnet/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace texnet::testing {

/// Writes `per_class` random PNGs for each label plus `manifest.csv`.
inline std::filesystem::path write_dataset(const std::filesystem::path& dir, int per_class,
                                           std::size_t side, unsigned seed = 1) {
    std::filesystem::create_directories(dir);
    std::mt19937 rng(seed);
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    manifest << "path,label\n";
    for (int k = 0; k < per_class; ++k) {
        for (int label : {0, 1}) {
            const std::size_t n = side * side;
            std::vector<std::uint8_t> r(n), g(n), b(n);
            const unsigned spread = label == 1 ? 256u : 64u;
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = static_cast<std::uint8_t>(rng() % spread);
                g[i] = static_cast<std::uint8_t>(rng() % spread);
                b[i] = static_cast<std::uint8_t>(rng() % spread);
            }
            const auto name = "img_" + std::to_string(k) + "_" + std::to_string(label) + ".png";
            encode_png(RgbImage(side, side, r, g, b), dir / name);
            manifest << name << ',' << label << '\n';
        }
    }
    return dir / "manifest.csv";
}

} // namespace texnet::testing
