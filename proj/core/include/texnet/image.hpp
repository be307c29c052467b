#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace texnet {

/// 8-bit RGB image stored as three planar row-major channels.
class RgbImage {
public:
    RgbImage() = default;
    /// Throws DataError when a dimension is zero or a plane has the wrong size.
    RgbImage(std::size_t width, std::size_t height,
             std::vector<std::uint8_t> r, std::vector<std::uint8_t> g, std::vector<std::uint8_t> b);
    /// Solid-colour image.
    static RgbImage filled(std::size_t width, std::size_t height,
                           std::uint8_t r, std::uint8_t g, std::uint8_t b);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }

    std::span<const std::uint8_t> red() const noexcept { return r_; }
    std::span<const std::uint8_t> green() const noexcept { return g_; }
    std::span<const std::uint8_t> blue() const noexcept { return b_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> r_, g_, b_;
};

/// Single-channel image whose pixels lie in [0, levels-1].
class GrayImage {
public:
    GrayImage() = default;
    /// Throws DataError on zero dimensions, size mismatch, levels outside
    /// [2, 256], or a pixel >= levels.
    GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels,
              int levels = 256);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    int levels() const noexcept { return levels_; }

    std::uint8_t at(std::size_t row, std::size_t col) const noexcept {
        return pixels_[row * width_ + col];
    }
    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    int levels_ = 256;
    std::vector<std::uint8_t> pixels_;
};

} // namespace texnet
