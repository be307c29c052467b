#pragma once

#include "texnet/feature_vector.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace texnet {

enum class Scaling { None, ZScore };
enum class FilterMode { KeepBelow, KeepAbove };

/// Dense row-major n x n matrix.
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t size, double fill = 0.0) : n(size), data(size * size, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

/// Weighted undirected graph over the samples of one class.
struct DistanceGraph {
    std::vector<std::size_t> nodes; ///< sample ids, ascending
    SquareMatrix weights;           ///< Euclidean distances
    std::vector<bool> kept;         ///< n x n edge mask, symmetric, false diagonal
    double median_distance = 0.0;
    int label = 0;

    std::size_t size() const noexcept { return nodes.size(); }
    bool is_kept(std::size_t i, std::size_t j) const { return kept[i * size() + j]; }
    std::size_t edge_count() const noexcept { return size() * (size() - 1) / 2; }
    std::size_t kept_edge_count() const;
    bool is_complete() const;
};

/// Per-dimension standardization; zero-variance dimensions are left untouched.
std::vector<FeatureVector> zscore(std::span<const FeatureVector> vectors);

/// Complete graph of Euclidean distances. Nodes are ordered by sample id.
/// Throws DataError on mixed labels or dimensions, fewer than two vectors, or
/// non-finite values.
DistanceGraph pairwise_distances(std::span<const FeatureVector> vectors,
                                 Scaling scaling = Scaling::None);

/// Lower median of the upper-triangle distances.
double median_of_upper_triangle(const SquareMatrix& w);

/// Keeps edges at or below (or at or above) the median distance. Throws
/// DataError when the graph was already filtered.
DistanceGraph median_filter(const DistanceGraph& g, FilterMode mode = FilterMode::KeepBelow);

/// Distance where the edge exists (all off-diagonal edges when !filtered), else 0.
SquareMatrix adjacency_matrix(const DistanceGraph& g, bool filtered);

/// `src,dst,distance,kept`, one row per upper-triangle pair, 9 significant digits.
void write_edge_list(const DistanceGraph& g, const std::filesystem::path& out);

/// Reads an edge list back into an adjacency matrix over the sorted node ids.
/// Kept edges carry their distance; dropped edges are 0 when `filtered`.
SquareMatrix read_edge_list(const std::filesystem::path& in, bool filtered,
                            std::vector<std::size_t>* nodes = nullptr);

} // namespace texnet
