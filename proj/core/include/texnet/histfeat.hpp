#pragma once

#include "texnet/feature_vector.hpp"
#include "texnet/image.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace texnet {

enum class Channel { R, G, B, Gray };

std::string_view channel_name(Channel c) noexcept;

struct ChannelHistogram {
    std::array<std::uint64_t, 256> bins{};
    Channel channel = Channel::Gray;
    std::uint64_t pixel_count = 0;
};

/// Moments of the pixel-intensity distribution a histogram describes.
struct HistStats {
    double median = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double kurtosis = 0.0; ///< Fisher excess, 0 for a normal distribution
    double skew = 0.0;
};

ChannelHistogram compute_histogram(std::span<const std::uint8_t> plane, Channel channel);

/// Population moments; lower median. skew and kurtosis are 0 when std is 0.
/// Throws DataError when the histogram is empty.
HistStats histogram_stats(const ChannelHistogram& h);

/// Names of the five statistics in vector order.
inline constexpr std::array<std::string_view, 5> kHistStatNames = {"median", "mean", "std",
                                                                   "kurtosis", "skew"};

/// 15 values: [R: median, mean, std, kurtosis, skew, G: ..., B: ...].
FeatureVector hist_feature_vector(const RgbImage& img, int label = 0, std::size_t sample_id = 0);

/// 5 values computed on a single-channel image.
FeatureVector gray_hist_feature_vector(const GrayImage& img, int label = 0,
                                       std::size_t sample_id = 0);

/// Relative bin frequencies (count / pixel_count) of the R, G and B
/// histograms concatenated (768 values).
FeatureVector hist_bin_vector(const RgbImage& img, int label = 0, std::size_t sample_id = 0);

/// Relative bin frequencies of a single-channel image (256 values).
FeatureVector gray_hist_bin_vector(const GrayImage& img, int label = 0,
                                   std::size_t sample_id = 0);

/// Column names such as `R_median`, ..., `B_skew` for the given channels.
std::vector<std::string> hist_feature_names(std::span<const Channel> channels);

} // namespace texnet
