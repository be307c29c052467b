#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace texnet {

/// A fixed-order feature vector describing one labelled sample.
struct FeatureVector {
    std::vector<double> values;
    int label = 0;
    std::size_t sample_id = 0;

    std::size_t size() const noexcept { return values.size(); }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Column names paired with the vectors they describe.
struct FeatureTable {
    std::vector<std::string> names;
    std::vector<FeatureVector> rows;
};

} // namespace texnet
