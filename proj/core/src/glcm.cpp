#include "texnet/glcm.hpp"

#include "texnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace texnet {

int degrees(Angle a) noexcept { return static_cast<int>(a); }

Displacement GlcmOffset::displacement() const {
    if (distance < 1) {
        throw ConfigError("GLCM distance must be >= 1, got " + std::to_string(distance));
    }
    const long d = distance;
    switch (angle) {
    case Angle::Deg0: return {0, d};
    case Angle::Deg45: return {-d, d};
    case Angle::Deg90: return {-d, 0};
    case Angle::Deg135: return {-d, -d};
    }
    throw ConfigError("invalid GLCM angle");
}

Glcm compute_glcm(const GrayImage& img, GlcmOffset offset, bool symmetric, bool normalize) {
    const auto [drow, dcol] = offset.displacement();
    const long height = static_cast<long>(img.height());
    const long width = static_cast<long>(img.width());
    const auto levels = static_cast<std::size_t>(img.levels());

    Glcm g;
    g.levels = img.levels();
    g.offset = offset;
    g.symmetric = symmetric;
    g.normalized = normalize;
    g.raw_counts.assign(levels * levels, 0);

    // Rows/cols whose partner stays inside the image.
    const long row_begin = std::max(0L, -drow);
    const long row_end = std::min(height, height - drow);
    const long col_begin = std::max(0L, -dcol);
    const long col_end = std::min(width, width - dcol);

    std::uint64_t pairs = 0;
    const auto px = img.pixels();
    for (long r = row_begin; r < row_end; ++r) {
        const std::uint8_t* ref = px.data() + r * width;
        const std::uint8_t* nbr = px.data() + (r + drow) * width;
        for (long c = col_begin; c < col_end; ++c) {
            ++g.raw_counts[ref[c] * levels + nbr[c + dcol]];
            ++pairs;
        }
    }
    if (pairs == 0) {
        throw DataError("no valid pixel pairs for GLCM offset d=" + std::to_string(offset.distance) +
                        " angle=" + std::to_string(degrees(offset.angle)) + " on " +
                        std::to_string(width) + "x" + std::to_string(height) + " image");
    }

    if (symmetric) {
        for (std::size_t i = 0; i < levels; ++i) {
            for (std::size_t j = i + 1; j < levels; ++j) {
                const auto sum = g.raw_counts[i * levels + j] + g.raw_counts[j * levels + i];
                g.raw_counts[i * levels + j] = sum;
                g.raw_counts[j * levels + i] = sum;
            }
            g.raw_counts[i * levels + i] *= 2;
        }
        pairs *= 2;
    }

    g.P.resize(g.raw_counts.size());
    const double total = normalize ? static_cast<double>(pairs) : 1.0;
    for (std::size_t k = 0; k < g.P.size(); ++k) {
        g.P[k] = static_cast<double>(g.raw_counts[k]) / total;
    }
    return g;
}

GlcmFeatures glcm_features(const Glcm& g) {
    if (!g.normalized) {
        throw DataError("glcm_features requires a normalized GLCM");
    }
    const int levels = g.levels;
    std::vector<double> row_marginal(static_cast<std::size_t>(levels), 0.0);
    std::vector<double> col_marginal(static_cast<std::size_t>(levels), 0.0);

    GlcmFeatures f;
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
            const double p = g.prob(i, j);
            if (p == 0.0) {
                continue;
            }
            const double diff = i - j;
            const double diff2 = diff * diff;
            f.contrast += p * diff2;
            f.dissimilarity += p * std::abs(diff);
            f.homogeneity += p / (1.0 + diff2);
            f.asm_ += p * p;
            row_marginal[static_cast<std::size_t>(i)] += p;
            col_marginal[static_cast<std::size_t>(j)] += p;
        }
    }
    f.energy = std::sqrt(f.asm_);

    double mu_i = 0.0, mu_j = 0.0;
    for (int k = 0; k < levels; ++k) {
        mu_i += k * row_marginal[static_cast<std::size_t>(k)];
        mu_j += k * col_marginal[static_cast<std::size_t>(k)];
    }
    double var_i = 0.0, var_j = 0.0;
    for (int k = 0; k < levels; ++k) {
        var_i += (k - mu_i) * (k - mu_i) * row_marginal[static_cast<std::size_t>(k)];
        var_j += (k - mu_j) * (k - mu_j) * col_marginal[static_cast<std::size_t>(k)];
    }
    const double var_product = var_i * var_j;
    if (var_product == 0.0) {
        f.correlation = 1.0;
        return f;
    }
    double cov = 0.0;
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
            const double p = g.prob(i, j);
            if (p != 0.0) {
                cov += p * (i - mu_i) * (j - mu_j);
            }
        }
    }
    f.correlation = cov / std::sqrt(var_product);
    return f;
}

FeatureVector glcm_feature_vector(const GrayImage& img, int distance,
                                  std::span<const Angle> angles, bool symmetric, int label,
                                  std::size_t sample_id) {
    const std::size_t na = angles.size();
    std::vector<GlcmFeatures> per_angle;
    per_angle.reserve(na);
    for (auto a : angles) {
        per_angle.push_back(glcm_features(compute_glcm(img, {distance, a}, symmetric, true)));
    }

    FeatureVector fv{.values = std::vector<double>(6 * na), .label = label, .sample_id = sample_id};
    for (std::size_t k = 0; k < na; ++k) {
        const auto& f = per_angle[k];
        fv.values[0 * na + k] = f.contrast;
        fv.values[1 * na + k] = f.dissimilarity;
        fv.values[2 * na + k] = f.homogeneity;
        fv.values[3 * na + k] = f.asm_;
        fv.values[4 * na + k] = f.energy;
        fv.values[5 * na + k] = f.correlation;
    }
    return fv;
}

std::vector<std::string> glcm_feature_names(std::span<const Angle> angles) {
    std::vector<std::string> names;
    for (const char* feature : kGlcmFeatureNames) {
        for (auto a : angles) {
            names.push_back(std::string(feature) + "_" + std::to_string(degrees(a)));
        }
    }
    return names;
}

} // namespace texnet
