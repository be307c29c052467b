#include "texnet/histfeat.hpp"

#include "texnet/error.hpp"

#include <cmath>

namespace texnet {

std::string_view channel_name(Channel c) noexcept {
    switch (c) {
    case Channel::R: return "R";
    case Channel::G: return "G";
    case Channel::B: return "B";
    case Channel::Gray: return "Gray";
    }
    return "?";
}

ChannelHistogram compute_histogram(std::span<const std::uint8_t> plane, Channel channel) {
    ChannelHistogram h;
    h.channel = channel;
    for (auto v : plane) {
        ++h.bins[v];
    }
    h.pixel_count = plane.size();
    return h;
}

HistStats histogram_stats(const ChannelHistogram& h) {
    if (h.pixel_count == 0) {
        throw DataError("histogram_stats: empty histogram");
    }
    const double n = static_cast<double>(h.pixel_count);

    HistStats s;
    double sum = 0.0;
    std::uint64_t cumulative = 0;
    bool median_found = false;
    for (int v = 0; v < 256; ++v) {
        const auto c = h.bins[v];
        sum += static_cast<double>(v) * static_cast<double>(c);
        cumulative += c;
        if (!median_found && 2 * cumulative >= h.pixel_count) {
            s.median = v;
            median_found = true;
        }
    }
    s.mean = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (int v = 0; v < 256; ++v) {
        if (h.bins[v] == 0) {
            continue;
        }
        const double w = static_cast<double>(h.bins[v]) / n;
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += w * d2;
        m3 += w * d2 * d;
        m4 += w * d2 * d2;
    }
    s.std = std::sqrt(m2);
    if (m2 > 0.0) {
        s.skew = m3 / (m2 * s.std);
        s.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

namespace {

void append_stats(std::vector<double>& out, const HistStats& s) {
    out.insert(out.end(), {s.median, s.mean, s.std, s.kurtosis, s.skew});
}

void append_frequencies(std::vector<double>& out, const ChannelHistogram& h) {
    const double n = static_cast<double>(h.pixel_count);
    for (auto c : h.bins) {
        out.push_back(static_cast<double>(c) / n);
    }
}

} // namespace

FeatureVector hist_feature_vector(const RgbImage& img, int label, std::size_t sample_id) {
    FeatureVector fv{.values = {}, .label = label, .sample_id = sample_id};
    fv.values.reserve(15);
    append_stats(fv.values, histogram_stats(compute_histogram(img.red(), Channel::R)));
    append_stats(fv.values, histogram_stats(compute_histogram(img.green(), Channel::G)));
    append_stats(fv.values, histogram_stats(compute_histogram(img.blue(), Channel::B)));
    return fv;
}

FeatureVector gray_hist_feature_vector(const GrayImage& img, int label, std::size_t sample_id) {
    FeatureVector fv{.values = {}, .label = label, .sample_id = sample_id};
    append_stats(fv.values, histogram_stats(compute_histogram(img.pixels(), Channel::Gray)));
    return fv;
}

FeatureVector hist_bin_vector(const RgbImage& img, int label, std::size_t sample_id) {
    FeatureVector fv{.values = {}, .label = label, .sample_id = sample_id};
    fv.values.reserve(3 * 256);
    append_frequencies(fv.values, compute_histogram(img.red(), Channel::R));
    append_frequencies(fv.values, compute_histogram(img.green(), Channel::G));
    append_frequencies(fv.values, compute_histogram(img.blue(), Channel::B));
    return fv;
}

FeatureVector gray_hist_bin_vector(const GrayImage& img, int label, std::size_t sample_id) {
    FeatureVector fv{.values = {}, .label = label, .sample_id = sample_id};
    append_frequencies(fv.values, compute_histogram(img.pixels(), Channel::Gray));
    return fv;
}

std::vector<std::string> hist_feature_names(std::span<const Channel> channels) {
    std::vector<std::string> names;
    for (auto c : channels) {
        for (auto stat : kHistStatNames) {
            names.push_back(std::string(channel_name(c)) + "_" + std::string(stat));
        }
    }
    return names;
}

} // namespace texnet
