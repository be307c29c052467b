#pragma once

#include "texnet/histfeat.hpp"
#include "texnet/netbuild.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace texnet {

/// 8-bit single-channel raster, row-major.
struct GrayRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    friend bool operator==(const GrayRaster&, const GrayRaster&) = default;
};

enum class ImageFormat { Png, Pgm };

struct HeatmapOptions {
    std::optional<double> vmin; ///< defaults to the matrix minimum
    std::optional<double> vmax; ///< defaults to the matrix maximum
    bool invert = false;
    std::size_t scale = 1;      ///< integer upscale factor per cell
};

inline constexpr std::size_t kHistogramWidth = 512;
inline constexpr std::size_t kHistogramHeight = 256;

/// intensity = round(255 (v - vmin) / (vmax - vmin)), clamped; all 0 when vmax == vmin.
/// Throws DataError on an empty matrix, non-finite entries or vmin > vmax.
GrayRaster rasterize_heatmap(const SquareMatrix& m, const HeatmapOptions& opts = {});

/// 256 bars, two pixels wide each, on a 512 x 256 canvas; bar height is
/// round(256 count / max count). White bars on black.
GrayRaster rasterize_histogram(const ChannelHistogram& h);

void write_png(const GrayRaster& img, const std::filesystem::path& out);
void write_pgm(const GrayRaster& img, const std::filesystem::path& out);
void write_image(const GrayRaster& img, const std::filesystem::path& out, ImageFormat format);

/// Reads back an 8-bit grayscale PNG written by write_png.
GrayRaster read_png_gray(const std::filesystem::path& in);
/// Reads a binary (P5) PGM with maxval 255.
GrayRaster read_pgm(const std::filesystem::path& in);

void render_heatmap(const SquareMatrix& m, const std::filesystem::path& out,
                    const HeatmapOptions& opts = {}, ImageFormat format = ImageFormat::Png);
void render_histogram(const ChannelHistogram& h, const std::filesystem::path& out,
                      ImageFormat format = ImageFormat::Png);

} // namespace texnet
