#pragma once

#include "texnet/image.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace texnet {

struct ManifestRecord {
    std::size_t sample_id = 0;
    std::filesystem::path path;
    int label = 0;

    friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// Ordered (path, label) records. sample_id of record k is always k.
struct SampleManifest {
    std::vector<ManifestRecord> records;

    std::size_t size() const noexcept { return records.size(); }
    std::size_t count_label(int label) const noexcept;
};

/// Reads a `path,label` CSV. Relative image paths are resolved against the
/// manifest's directory.
///
/// When `per_class` is set, exactly that many records of each label are kept,
/// chosen by a seeded shuffle (seed defaults to 0); survivors keep file order
/// and are renumbered 0..N-1. Throws DataError for a missing file, an empty
/// body, a malformed row, a label outside {0,1}, or a class with fewer than
/// `per_class` records; ConfigError when per_class is zero.
SampleManifest load_manifest(const std::filesystem::path& path,
                             std::optional<std::size_t> per_class = std::nullopt,
                             std::optional<std::uint64_t> seed = std::nullopt);

/// Selects `count` distinct indices out of [0, n) with a seeded partial
/// Fisher-Yates shuffle, returned in ascending order. Portable: identical on
/// every platform for the same (n, count, seed).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed);

/// Decodes an 8-bit (or 16-bit, truncated) PNG into RGB. Gray images are
/// replicated into three channels; alpha is composited over black.
RgbImage decode_png(const std::filesystem::path& path);

/// Writes an RGB image as an 8-bit PNG.
void encode_png(const RgbImage& img, const std::filesystem::path& path);

/// Luma conversion: round_half_up(0.3 R + 0.59 G + 0.11 B), levels = 256.
GrayImage to_grayscale(const RgbImage& img);

/// Single pixel form of to_grayscale.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// pixel' = floor(pixel * levels / img.levels()), i.e. floor(pixel * levels / 256) for
/// 8-bit input. Throws ConfigError unless 2 <= levels <= 256.
GrayImage quantize(const GrayImage& img, int levels);

} // namespace texnet
