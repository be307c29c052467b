#pragma once

#include "texnet/feature_vector.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace texnet {

/// Row-per-sample feature table: `sample_id,<names...>,label`, values with six
/// decimals, label written as 1.0 / 0.0, rows ordered by sample id. Throws
/// DataError when a row's width differs from `names`, IoError when the file
/// cannot be written.
void export_features(std::span<const FeatureVector> vectors, std::span<const std::string> names,
                     const std::filesystem::path& out);

/// Parses a table written by export_features.
FeatureTable read_features(const std::filesystem::path& in);

} // namespace texnet
