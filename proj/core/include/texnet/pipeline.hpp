#pragma once

#include "texnet/netbuild.hpp"
#include "texnet/render.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace texnet {

enum class FeatureSet { Histogram, Glcm, Both };
enum class HistSource { Rgb, Gray };
enum class HistDistanceSpace { Stats, Bins };

struct PipelineConfig {
    std::filesystem::path manifest;
    std::size_t per_class = 50;
    std::uint64_t seed = 0;
    FeatureSet feature_set = FeatureSet::Both;
    int glcm_distance = 1;
    int levels = 256;
    bool symmetric = true;
    Scaling scaling = Scaling::None;
    FilterMode filter_mode = FilterMode::KeepBelow;
    HistSource hist_source = HistSource::Rgb;
    HistDistanceSpace hist_distance_space = HistDistanceSpace::Stats;
    std::filesystem::path out_dir = "out";
    std::size_t heatmap_scale = 4;
    bool emit_pgm = false;
    bool histogram_plots = true;
    std::size_t threads = 0; ///< 0 = hardware concurrency

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
};

std::string_view to_string(FeatureSet v) noexcept;
std::string_view to_string(HistSource v) noexcept;
std::string_view to_string(HistDistanceSpace v) noexcept;
std::string_view to_string(Scaling v) noexcept;
std::string_view to_string(FilterMode v) noexcept;

/// Enum parsers accept the CLI spellings (`both`, `keep_below`, ...); throw ConfigError.
FeatureSet parse_feature_set(std::string_view s);
HistSource parse_hist_source(std::string_view s);
HistDistanceSpace parse_hist_distance_space(std::string_view s);
Scaling parse_scaling(std::string_view s);
FilterMode parse_filter_mode(std::string_view s);

/// `key = value` lines; `#` starts a comment; values may be double-quoted.
/// Keys use the flag spelling without dashes (`per-class` or `per_class`).
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies one key/value pair to the config. Throws ConfigError on unknown
/// keys or unparsable values.
void apply_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value);

struct Artifact {
    std::string path; ///< relative to out_dir, forward slashes
    std::string sha256;
};

struct RunManifest {
    std::vector<Artifact> artifacts; ///< sorted by path; excludes run.json itself
    std::filesystem::path run_json;
};

/// Features -> per-class graphs -> filtered graphs -> CSV / image artifacts,
/// plus `run.json` echoing the config and listing SHA-256 checksums. Files
/// written before a failure are removed. Errors name the offending sample id.
RunManifest run_pipeline(const PipelineConfig& cfg);

/// Features only: writes the feature CSV(s) for the configured set and
/// returns their paths.
std::vector<std::filesystem::path> run_features(const PipelineConfig& cfg);

struct NetworkOptions {
    Scaling scaling = Scaling::None;
    FilterMode filter_mode = FilterMode::KeepBelow;
    std::filesystem::path out_dir = "out";
    std::size_t heatmap_scale = 4;
    bool emit_pgm = false;
};

/// Builds both class graphs from a feature table written by export_features
/// and writes `edges_<name>_class<L>[_filtered].csv` and matching heatmaps.
/// Returns the written paths.
std::vector<std::filesystem::path> run_network(const std::filesystem::path& features_csv,
                                               std::string_view name,
                                               const NetworkOptions& opts);

/// Hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

} // namespace texnet
