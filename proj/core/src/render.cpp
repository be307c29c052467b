#include "texnet/render.hpp"

#include "png_io.hpp"
#include "texnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace texnet {

GrayRaster rasterize_heatmap(const SquareMatrix& m, const HeatmapOptions& opts) {
    if (m.n == 0) {
        throw DataError("cannot render an empty matrix");
    }
    if (opts.scale == 0) {
        throw ConfigError("heatmap scale must be >= 1");
    }
    for (double v : m.data) {
        if (!std::isfinite(v)) {
            throw DataError("cannot render non-finite matrix entry");
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(m.data.begin(), m.data.end());
    const double vmin = opts.vmin.value_or(*lo_it);
    const double vmax = opts.vmax.value_or(*hi_it);
    if (!(vmin <= vmax)) {
        throw DataError("heatmap vmin must not exceed vmax");
    }
    const double span = vmax - vmin;

    auto intensity = [&](double v) -> std::uint8_t {
        if (span == 0.0) {
            return 0;
        }
        const double level = std::floor(255.0 * (v - vmin) / span + 0.5);
        return static_cast<std::uint8_t>(std::clamp(level, 0.0, 255.0));
    };

    const std::size_t s = opts.scale;
    GrayRaster img{m.n * s, m.n * s, {}};
    img.pixels.resize(img.width * img.height);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            std::uint8_t px = intensity(m(i, j));
            if (opts.invert) {
                px = static_cast<std::uint8_t>(255 - px);
            }
            for (std::size_t dy = 0; dy < s; ++dy) {
                auto* row = img.pixels.data() + (i * s + dy) * img.width + j * s;
                std::fill(row, row + s, px);
            }
        }
    }
    return img;
}

GrayRaster rasterize_histogram(const ChannelHistogram& h) {
    GrayRaster img{kHistogramWidth, kHistogramHeight, {}};
    img.pixels.assign(img.width * img.height, 0);
    const auto peak = *std::max_element(h.bins.begin(), h.bins.end());
    if (peak == 0) {
        return img;
    }
    constexpr std::size_t bar_width = kHistogramWidth / 256;
    for (std::size_t v = 0; v < 256; ++v) {
        const double ratio = static_cast<double>(h.bins[v]) / static_cast<double>(peak);
        const auto bar = static_cast<std::size_t>(
            std::floor(ratio * static_cast<double>(kHistogramHeight) + 0.5));
        for (std::size_t y = kHistogramHeight - bar; y < kHistogramHeight; ++y) {
            auto* row = img.pixels.data() + y * img.width + v * bar_width;
            std::fill(row, row + bar_width, std::uint8_t{255});
        }
    }
    return img;
}

void write_png(const GrayRaster& img, const std::filesystem::path& out) {
    detail::write_png_8bit(out, img.width, img.height, 1, img.pixels);
}

void write_pgm(const GrayRaster& img, const std::filesystem::path& out) {
    std::ofstream os(out, std::ios::binary);
    if (!os) {
        throw IoError("cannot write " + out.string());
    }
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
    if (!os.flush()) {
        throw IoError("cannot write " + out.string());
    }
}

void write_image(const GrayRaster& img, const std::filesystem::path& out, ImageFormat format) {
    if (format == ImageFormat::Pgm) {
        write_pgm(img, out);
    } else {
        write_png(img, out);
    }
}

GrayRaster read_png_gray(const std::filesystem::path& in) {
    const auto png = detail::read_png_rgb(in);
    GrayRaster img{png.width, png.height, {}};
    img.pixels.resize(png.width * png.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        img.pixels[i] = png.rgb[3 * i];
    }
    return img;
}

GrayRaster read_pgm(const std::filesystem::path& in) {
    std::ifstream is(in, std::ios::binary);
    if (!is) {
        throw DataError("cannot open " + in.string());
    }
    std::string magic;
    std::size_t width = 0, height = 0;
    int maxval = 0;
    is >> magic >> width >> height >> maxval;
    if (!is || magic != "P5" || maxval != 255 || width == 0 || height == 0) {
        throw DataError("unsupported PGM header in " + in.string());
    }
    is.get(); // single whitespace before the raster
    GrayRaster img{width, height, std::vector<std::uint8_t>(width * height)};
    is.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (is.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw DataError("truncated PGM raster in " + in.string());
    }
    return img;
}

void render_heatmap(const SquareMatrix& m, const std::filesystem::path& out,
                    const HeatmapOptions& opts, ImageFormat format) {
    write_image(rasterize_heatmap(m, opts), out, format);
}

void render_histogram(const ChannelHistogram& h, const std::filesystem::path& out,
                      ImageFormat format) {
    write_image(rasterize_histogram(h), out, format);
}

} // namespace texnet
