#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace texnet::detail {

/// Interleaved 8-bit RGB pixels.
struct DecodedPng {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> rgb;
};

DecodedPng read_png_rgb(const std::filesystem::path& path);

/// channels is 1 (gray) or 3 (interleaved RGB).
void write_png_8bit(const std::filesystem::path& path, std::size_t width, std::size_t height,
                    int channels, std::span<const std::uint8_t> data);

} // namespace texnet::detail
