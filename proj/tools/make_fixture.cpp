// Writes a small synthetic labelled PNG dataset plus its manifest.
//
//   make_fixture <out_dir> [per_class] [size]
//
// Label 1 images are speckled, high-contrast textures; label 0 images are
// smooth gradients with mild noise. Output depends only on the arguments.

#include "texnet/ingest.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

/// splitmix64: tiny and fully specified, so fixtures are identical everywhere.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

private:
    std::uint64_t state_;
};

std::uint8_t clamp8(int v) { return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v)); }

texnet::RgbImage make_image(int label, int index, std::size_t size) {
    SplitMix rng(0xC0FFEEULL * static_cast<std::uint64_t>(label + 1) +
                 static_cast<std::uint64_t>(index) * 7919ULL);
    const std::size_t n = size * size;
    std::vector<std::uint8_t> r(n), g(n), b(n);
    const int tint = rng.below(40);
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const std::size_t i = y * size + x;
            int base = 0;
            if (label == 1) {
                const bool blob = ((x / 3 + y / 3 + static_cast<std::size_t>(index)) % 3) == 0;
                base = (blob ? 190 : 60) + rng.below(60) - 30;
            } else {
                base = static_cast<int>((x + y) * 200 / (2 * size)) + 30 + rng.below(12) - 6 +
                       index * 4;
            }
            r[i] = clamp8(base + tint);
            g[i] = clamp8(base);
            b[i] = clamp8(base - tint / 2);
        }
    }
    return texnet::RgbImage(size, size, std::move(r), std::move(g), std::move(b));
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: make_fixture <out_dir> [per_class] [size]\n";
        return 2;
    }
    const std::filesystem::path out = argv[1];
    const int per_class = argc > 2 ? std::atoi(argv[2]) : 6;
    const std::size_t size = argc > 3 ? static_cast<std::size_t>(std::atoi(argv[3])) : 32;
    if (per_class < 1 || size < 2) {
        std::cerr << "per_class must be >= 1 and size >= 2\n";
        return 2;
    }
    std::filesystem::create_directories(out);

    std::ofstream manifest(out / "manifest.csv", std::ios::binary);
    manifest << "path,label\n";
    for (int k = 0; k < per_class; ++k) {
        // interleave classes so file order does not sort by label
        for (int label : {1, 0}) {
            const std::string name =
                (label == 1 ? "pos_" : "neg_") + std::to_string(k) + ".png";
            texnet::encode_png(make_image(label, k, size), out / name);
            manifest << name << ',' << label << '\n';
        }
    }
    std::cout << "wrote " << 2 * per_class << " images to " << out.string() << '\n';
    return 0;
}
