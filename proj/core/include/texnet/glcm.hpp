#pragma once

#include "texnet/feature_vector.hpp"
#include "texnet/image.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace texnet {

enum class Angle { Deg0 = 0, Deg45 = 45, Deg90 = 90, Deg135 = 135 };

inline constexpr std::array<Angle, 4> kAllAngles = {Angle::Deg0, Angle::Deg45, Angle::Deg90,
                                                    Angle::Deg135};

int degrees(Angle a) noexcept;

/// Row/column step of one pixel pair. Rows grow downward, so 45 degrees
/// points up and to the right.
struct Displacement {
    long drow = 0;
    long dcol = 0;
};

struct GlcmOffset {
    int distance = 1;
    Angle angle = Angle::Deg0;

    /// Throws ConfigError when distance < 1.
    Displacement displacement() const;
};

/// Grey-level co-occurrence matrix for one offset.
struct Glcm {
    int levels = 0;
    GlcmOffset offset;
    bool symmetric = true;
    bool normalized = true;
    std::vector<std::uint64_t> raw_counts; ///< levels x levels, row-major
    std::vector<double> P;                 ///< probabilities, or counts when not normalized

    std::uint64_t count(int i, int j) const { return raw_counts[idx(i, j)]; }
    double prob(int i, int j) const { return P[idx(i, j)]; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(levels) +
               static_cast<std::size_t>(j);
    }
};

struct GlcmFeatures {
    double contrast = 0.0;
    double dissimilarity = 0.0;
    double homogeneity = 0.0;
    double asm_ = 0.0; ///< angular second moment
    double energy = 0.0;
    double correlation = 0.0;
};

/// Counts ordered pairs (p, p + displacement) that fall inside the image.
/// A symmetric matrix adds the transpose of the counts; normalization divides
/// by the total. Throws DataError when no pair fits the image.
Glcm compute_glcm(const GrayImage& img, GlcmOffset offset, bool symmetric = true,
                  bool normalize = true);

/// Throws DataError when g is not normalized. correlation is 1 when either
/// marginal variance is zero.
GlcmFeatures glcm_features(const Glcm& g);

/// Feature order inside a GLCM vector; every feature is expanded over angles.
inline constexpr std::array<const char*, 6> kGlcmFeatureNames = {
    "contrast", "dissimilarity", "homogeneity", "ASM", "energy", "correlation"};

/// Feature-major, angle-minor vector: contrast_0, contrast_45, ...,
/// correlation_135 (24 values for the four angles).
FeatureVector glcm_feature_vector(const GrayImage& img, int distance = 1,
                                  std::span<const Angle> angles = kAllAngles,
                                  bool symmetric = true, int label = 0,
                                  std::size_t sample_id = 0);

std::vector<std::string> glcm_feature_names(std::span<const Angle> angles = kAllAngles);

} // namespace texnet
