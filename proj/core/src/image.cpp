#include "texnet/image.hpp"

#include "texnet/error.hpp"

#include <algorithm>
#include <string>

namespace texnet {

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> r,
                   std::vector<std::uint8_t> g, std::vector<std::uint8_t> b)
    : width_(width), height_(height), r_(std::move(r)), g_(std::move(g)), b_(std::move(b)) {
    if (width_ == 0 || height_ == 0) {
        throw DataError("RGB image must have positive dimensions");
    }
    const std::size_t n = width_ * height_;
    if (r_.size() != n || g_.size() != n || b_.size() != n) {
        throw DataError("RGB plane size does not match " + std::to_string(width_) + "x" +
                        std::to_string(height_));
    }
}

RgbImage RgbImage::filled(std::size_t width, std::size_t height, std::uint8_t r, std::uint8_t g,
                          std::uint8_t b) {
    const std::size_t n = width * height;
    return RgbImage(width, height, std::vector<std::uint8_t>(n, r), std::vector<std::uint8_t>(n, g),
                    std::vector<std::uint8_t>(n, b));
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels,
                     int levels)
    : width_(width), height_(height), levels_(levels), pixels_(std::move(pixels)) {
    if (width_ == 0 || height_ == 0) {
        throw DataError("gray image must have positive dimensions");
    }
    if (levels_ < 2 || levels_ > 256) {
        throw DataError("gray levels must be in [2, 256], got " + std::to_string(levels_));
    }
    if (pixels_.size() != width_ * height_) {
        throw DataError("gray pixel buffer size does not match dimensions");
    }
    if (levels_ < 256) {
        const auto top = *std::max_element(pixels_.begin(), pixels_.end());
        if (top >= levels_) {
            throw DataError("pixel value " + std::to_string(top) + " exceeds levels " +
                            std::to_string(levels_));
        }
    }
}

} // namespace texnet
