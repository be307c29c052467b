#include "texnet/ingest.hpp"

#include "csv_util.hpp"
#include "png_io.hpp"
#include "texnet/error.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace texnet {

std::size_t SampleManifest::count_label(int label) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        records.begin(), records.end(), [label](const auto& r) { return r.label == label; }));
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (count > n) {
        throw DataError("cannot sample " + std::to_string(count) + " of " + std::to_string(n));
    }
    // std::uniform_int_distribution is implementation-defined; draw bounded
    // integers by rejection straight from the engine so results are portable.
    std::mt19937_64 engine(seed);
    auto bounded = [&engine](std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = engine();
        while (x >= limit) {
            x = engine();
        }
        return x % bound;
    };

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

SampleManifest load_manifest(const std::filesystem::path& path,
                             std::optional<std::size_t> per_class,
                             std::optional<std::uint64_t> seed) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("manifest not found: " + path.string());
    }
    if (per_class && *per_class == 0) {
        throw ConfigError("per_class must be at least 1");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty manifest");
    }
    std::string_view header = detail::trim(line);
    if (header.starts_with("\xEF\xBB\xBF")) {
        header.remove_prefix(3);
    }
    if (header != "path,label") {
        throw DataError("manifest header must be `path,label`, got `" + std::string(header) + "`");
    }

    const auto base = path.parent_path();
    std::vector<ManifestRecord> all;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = detail::split_fields(text);
        if (fields.size() != 2 || fields[0].empty()) {
            throw DataError("malformed manifest row at line " + std::to_string(line_no) +
                            ": expected `path,label`");
        }
        int label = 0;
        if (fields[1] == "0") {
            label = 0;
        } else if (fields[1] == "1") {
            label = 1;
        } else {
            throw DataError("label must be 0 or 1 at line " + std::to_string(line_no) + ", got `" +
                            std::string(fields[1]) + "`");
        }
        std::filesystem::path p{std::string(fields[0])};
        if (p.is_relative()) {
            p = base / p;
        }
        all.push_back({all.size(), std::move(p), label});
    }
    if (all.empty()) {
        throw DataError("empty manifest");
    }

    SampleManifest manifest;
    if (!per_class) {
        manifest.records = std::move(all);
        return manifest;
    }

    std::vector<bool> keep(all.size(), false);
    for (int label : {0, 1}) {
        std::vector<std::size_t> positions;
        for (const auto& r : all) {
            if (r.label == label) {
                positions.push_back(r.sample_id);
            }
        }
        if (positions.size() < *per_class) {
            throw DataError("label " + std::to_string(label) + " has " +
                            std::to_string(positions.size()) + " records, " +
                            std::to_string(*per_class) + " requested");
        }
        // Separate streams per label keep one class's draw independent of the other's size.
        const std::uint64_t label_seed =
            seed.value_or(0) + static_cast<std::uint64_t>(label) * 0x9E3779B97F4A7C15ULL;
        for (auto k : sample_indices(positions.size(), *per_class, label_seed)) {
            keep[positions[k]] = true;
        }
    }
    for (auto& r : all) {
        if (keep[r.sample_id]) {
            r.sample_id = manifest.records.size();
            manifest.records.push_back(std::move(r));
        }
    }
    return manifest;
}

RgbImage decode_png(const std::filesystem::path& path) {
    auto png = detail::read_png_rgb(path);
    const std::size_t n = png.width * png.height;
    std::vector<std::uint8_t> r(n), g(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = png.rgb[3 * i];
        g[i] = png.rgb[3 * i + 1];
        b[i] = png.rgb[3 * i + 2];
    }
    return RgbImage(png.width, png.height, std::move(r), std::move(g), std::move(b));
}

void encode_png(const RgbImage& img, const std::filesystem::path& path) {
    const std::size_t n = img.pixel_count();
    std::vector<std::uint8_t> rgb(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        rgb[3 * i] = img.red()[i];
        rgb[3 * i + 1] = img.green()[i];
        rgb[3 * i + 2] = img.blue()[i];
    }
    detail::write_png_8bit(path, img.width(), img.height(), 3, rgb);
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    // Integer form of 0.3R + 0.59G + 0.11B rounded half up; exact, no FP ties.
    const unsigned weighted = 30u * r + 59u * g + 11u * b;
    return static_cast<std::uint8_t>(std::min(255u, (weighted + 50u) / 100u));
}

GrayImage to_grayscale(const RgbImage& img) {
    const std::size_t n = img.pixel_count();
    std::vector<std::uint8_t> out(n);
    const auto r = img.red();
    const auto g = img.green();
    const auto b = img.blue();
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = luma(r[i], g[i], b[i]);
    }
    return GrayImage(img.width(), img.height(), std::move(out), 256);
}

GrayImage quantize(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256) {
        throw ConfigError("levels must be in [2, 256], got " + std::to_string(levels));
    }
    const auto from = static_cast<unsigned>(img.levels());
    std::vector<std::uint8_t> out(img.pixels().begin(), img.pixels().end());
    for (auto& p : out) {
        p = static_cast<std::uint8_t>((static_cast<unsigned>(p) * static_cast<unsigned>(levels)) / from);
    }
    return GrayImage(img.width(), img.height(), std::move(out), levels);
}

} // namespace texnet
