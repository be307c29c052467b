#include "texnet/pipeline.hpp"

#include "parallel.hpp"
#include "texnet/error.hpp"
#include "texnet/features_csv.hpp"
#include "texnet/glcm.hpp"
#include "texnet/histfeat.hpp"
#include "texnet/ingest.hpp"

#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace texnet {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

void PipelineConfig::validate() const {
    if (manifest.empty()) {
        throw ConfigError("manifest path is required");
    }
    if (per_class < 2) {
        throw ConfigError("per_class must be >= 2 (a graph needs two nodes), got " +
                          std::to_string(per_class));
    }
    if (glcm_distance < 1) {
        throw ConfigError("glcm distance must be >= 1");
    }
    if (levels < 2 || levels > 256) {
        throw ConfigError("levels must be in [2, 256]");
    }
    if (heatmap_scale < 1) {
        throw ConfigError("heatmap scale must be >= 1");
    }
    if (out_dir.empty()) {
        throw ConfigError("out_dir is required");
    }
}

std::string_view to_string(FeatureSet v) noexcept {
    switch (v) {
    case FeatureSet::Histogram: return "histogram";
    case FeatureSet::Glcm: return "glcm";
    case FeatureSet::Both: return "both";
    }
    return "?";
}
std::string_view to_string(HistSource v) noexcept { return v == HistSource::Rgb ? "rgb" : "gray"; }
std::string_view to_string(HistDistanceSpace v) noexcept {
    return v == HistDistanceSpace::Stats ? "stats" : "bins";
}
std::string_view to_string(Scaling v) noexcept { return v == Scaling::None ? "none" : "zscore"; }
std::string_view to_string(FilterMode v) noexcept {
    return v == FilterMode::KeepBelow ? "keep_below" : "keep_above";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view what, std::string_view s, const std::array<Enum, N>& values) {
    std::string choices;
    for (auto v : values) {
        if (to_string(v) == s) {
            return v;
        }
        choices += (choices.empty() ? "" : "|") + std::string(to_string(v));
    }
    throw ConfigError("invalid " + std::string(what) + " `" + std::string(s) + "` (expected " +
                      choices + ")");
}

bool parse_bool(std::string_view key, std::string_view s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError("invalid boolean for " + std::string(key) + ": `" + std::string(s) + "`");
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || v < 0) {
        throw ConfigError("invalid value for " + std::string(key) + ": `" + std::string(s) + "`");
    }
    return static_cast<Int>(v);
}

std::string normalize_key(std::string_view key) {
    std::string k(key);
    while (!k.empty() && k.front() == '-') {
        k.erase(0, 1);
    }
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

FeatureSet parse_feature_set(std::string_view s) {
    return parse_enum("feature set", s,
                      std::array{FeatureSet::Histogram, FeatureSet::Glcm, FeatureSet::Both});
}
HistSource parse_hist_source(std::string_view s) {
    return parse_enum("histogram source", s, std::array{HistSource::Rgb, HistSource::Gray});
}
HistDistanceSpace parse_hist_distance_space(std::string_view s) {
    return parse_enum("histogram distance space", s,
                      std::array{HistDistanceSpace::Stats, HistDistanceSpace::Bins});
}
Scaling parse_scaling(std::string_view s) {
    return parse_enum("scaling", s, std::array{Scaling::None, Scaling::ZScore});
}
FilterMode parse_filter_mode(std::string_view s) {
    return parse_enum("filter mode", s, std::array{FilterMode::KeepBelow, FilterMode::KeepAbove});
}

std::map<std::string, std::string> read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config file not found: " + path.string());
    }
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        bool quoted = false;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '"') {
                quoted = !quoted;
            } else if (text[i] == '#' && !quoted) {
                text = text.substr(0, i);
                break;
            }
        }
        text = strip(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = strip(text.substr(0, eq));
        auto value = strip(text.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        values[normalize_key(key)] = std::string(value);
    }
    return values;
}

void apply_config_value(PipelineConfig& cfg, std::string_view raw_key, std::string_view value) {
    const auto key = normalize_key(raw_key);
    if (key == "manifest") {
        cfg.manifest = fs::path(std::string(value));
    } else if (key == "per-class") {
        cfg.per_class = parse_int<std::size_t>(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "feature-set") {
        cfg.feature_set = parse_feature_set(value);
    } else if (key == "glcm-distance") {
        cfg.glcm_distance = parse_int<int>(key, value);
    } else if (key == "levels") {
        cfg.levels = parse_int<int>(key, value);
    } else if (key == "symmetric") {
        cfg.symmetric = parse_bool(key, value);
    } else if (key == "scaling") {
        cfg.scaling = parse_scaling(value);
    } else if (key == "filter-mode") {
        cfg.filter_mode = parse_filter_mode(value);
    } else if (key == "hist-source") {
        cfg.hist_source = parse_hist_source(value);
    } else if (key == "hist-distance-space") {
        cfg.hist_distance_space = parse_hist_distance_space(value);
    } else if (key == "out-dir") {
        cfg.out_dir = fs::path(std::string(value));
    } else if (key == "heatmap-scale") {
        cfg.heatmap_scale = parse_int<std::size_t>(key, value);
    } else if (key == "pgm") {
        cfg.emit_pgm = parse_bool(key, value);
    } else if (key == "histogram-plots") {
        cfg.histogram_plots = parse_bool(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_int<std::size_t>(key, value);
    } else {
        throw ConfigError("unknown config key `" + std::string(raw_key) + "`");
    }
}

// ---------------------------------------------------------------------------
// Checksums

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw IoError("SHA-256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = in.gcount();
        if (got > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got)) != 1) {
            throw IoError("SHA-256 update failed");
        }
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw IoError("SHA-256 finalisation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

bool wants_histogram(FeatureSet s) { return s != FeatureSet::Glcm; }
bool wants_glcm(FeatureSet s) { return s != FeatureSet::Histogram; }

struct SampleFeatures {
    FeatureVector hist_stats;
    FeatureVector hist_points; ///< vector used for the histogram network
    FeatureVector glcm;
    std::vector<ChannelHistogram> histograms;
};

enum class FailureKind { Config, Data };

struct SampleFailure {
    FailureKind kind = FailureKind::Data;
    std::string message;
};

SampleFeatures extract_sample(const ManifestRecord& rec, const PipelineConfig& cfg) {
    SampleFeatures out;
    const RgbImage rgb = decode_png(rec.path);
    std::optional<GrayImage> gray;
    auto grayscale = [&]() -> const GrayImage& {
        if (!gray) {
            gray = to_grayscale(rgb);
        }
        return *gray;
    };

    if (wants_histogram(cfg.feature_set)) {
        const bool bins = cfg.hist_distance_space == HistDistanceSpace::Bins;
        if (cfg.hist_source == HistSource::Rgb) {
            out.hist_stats = hist_feature_vector(rgb, rec.label, rec.sample_id);
            if (bins) {
                out.hist_points = hist_bin_vector(rgb, rec.label, rec.sample_id);
            }
            if (cfg.histogram_plots) {
                out.histograms = {compute_histogram(rgb.red(), Channel::R),
                                  compute_histogram(rgb.green(), Channel::G),
                                  compute_histogram(rgb.blue(), Channel::B)};
            }
        } else {
            out.hist_stats = gray_hist_feature_vector(grayscale(), rec.label, rec.sample_id);
            if (bins) {
                out.hist_points = gray_hist_bin_vector(grayscale(), rec.label, rec.sample_id);
            }
            if (cfg.histogram_plots) {
                out.histograms = {compute_histogram(grayscale().pixels(), Channel::Gray)};
            }
        }
        if (!bins) {
            out.hist_points = out.hist_stats;
        }
    }
    if (wants_glcm(cfg.feature_set)) {
        const GrayImage levelled =
            cfg.levels == 256 ? grayscale() : quantize(grayscale(), cfg.levels);
        out.glcm = glcm_feature_vector(levelled, cfg.glcm_distance, kAllAngles, cfg.symmetric,
                                       rec.label, rec.sample_id);
    }
    return out;
}

std::vector<SampleFeatures> extract_all(const SampleManifest& manifest, const PipelineConfig& cfg) {
    const std::size_t n = manifest.size();
    std::vector<SampleFeatures> features(n);
    std::vector<std::optional<SampleFailure>> failures(n);

    detail::parallel_for(n, cfg.threads, [&](std::size_t i) {
        const auto& rec = manifest.records[i];
        try {
            features[i] = extract_sample(rec, cfg);
        } catch (const ConfigError& e) {
            failures[i] = SampleFailure{FailureKind::Config, e.what()};
        } catch (const std::exception& e) {
            failures[i] = SampleFailure{FailureKind::Data, e.what()};
        }
    });

    // Report the lowest failing sample id so errors do not depend on scheduling.
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i]) {
            const auto msg = "sample " + std::to_string(i) + " (" +
                             manifest.records[i].path.string() + "): " + failures[i]->message;
            if (failures[i]->kind == FailureKind::Config) {
                throw ConfigError(msg);
            }
            throw DataError(msg);
        }
    }
    return features;
}

/// Tracks every file the run creates so a failed run can be rolled back.
class OutputSet {
public:
    explicit OutputSet(fs::path root) : root_(std::move(root)) {}

    fs::path claim(const std::string& relative) {
        const auto full = root_ / relative;
        fs::create_directories(full.parent_path());
        relative_.push_back(relative);
        return full;
    }

    const std::vector<std::string>& files() const { return relative_; }
    const fs::path& root() const { return root_; }

    void rollback() noexcept {
        std::error_code ec;
        for (const auto& rel : relative_) {
            fs::remove(root_ / rel, ec);
        }
        relative_.clear();
    }

private:
    fs::path root_;
    std::vector<std::string> relative_;
};

std::vector<std::string> hist_names(const PipelineConfig& cfg) {
    if (cfg.hist_source == HistSource::Gray) {
        const std::array channels{Channel::Gray};
        return hist_feature_names(channels);
    }
    const std::array channels{Channel::R, Channel::G, Channel::B};
    return hist_feature_names(channels);
}

std::string sample_tag(std::size_t sample_id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sample_%04zu", sample_id);
    return buf;
}

NetworkOptions network_options(const PipelineConfig& cfg) {
    return {.scaling = cfg.scaling,
            .filter_mode = cfg.filter_mode,
            .out_dir = cfg.out_dir,
            .heatmap_scale = cfg.heatmap_scale,
            .emit_pgm = cfg.emit_pgm};
}

void emit_networks(OutputSet& out, const NetworkOptions& cfg, std::string_view set_name,
                   const std::vector<FeatureVector>& points,
                   std::optional<std::size_t> expected_per_class) {
    const auto ext = cfg.emit_pgm ? std::vector<std::string>{".png", ".pgm"}
                                  : std::vector<std::string>{".png"};
    for (int label : {0, 1}) {
        std::vector<FeatureVector> members;
        for (const auto& p : points) {
            if (p.label == label) {
                members.push_back(p);
            }
        }
        if (expected_per_class && members.size() != *expected_per_class) {
            throw DataError("class " + std::to_string(label) + " has " +
                            std::to_string(members.size()) + " samples, expected " +
                            std::to_string(*expected_per_class));
        }
        const DistanceGraph full = pairwise_distances(members, cfg.scaling);
        const DistanceGraph filtered = median_filter(full, cfg.filter_mode);

        const std::string stem = std::string(set_name) + "_class" + std::to_string(label);
        write_edge_list(full, out.claim("edges_" + stem + ".csv"));
        write_edge_list(filtered, out.claim("edges_" + stem + "_filtered.csv"));

        const HeatmapOptions opts{.vmin = {}, .vmax = {}, .invert = false,
                                  .scale = cfg.heatmap_scale};
        const GrayRaster full_img = rasterize_heatmap(adjacency_matrix(full, false), opts);
        const GrayRaster filtered_img = rasterize_heatmap(adjacency_matrix(filtered, true), opts);
        for (const auto& e : ext) {
            const auto format = e == ".pgm" ? ImageFormat::Pgm : ImageFormat::Png;
            write_image(full_img, out.claim("heatmap_" + stem + e), format);
            write_image(filtered_img, out.claim("heatmap_" + stem + "_filtered" + e), format);
        }
    }
}

nlohmann::ordered_json config_json(const PipelineConfig& cfg) {
    nlohmann::ordered_json j;
    j["manifest"] = cfg.manifest.generic_string();
    j["per_class"] = cfg.per_class;
    j["seed"] = cfg.seed;
    j["feature_set"] = to_string(cfg.feature_set);
    j["glcm_distance"] = cfg.glcm_distance;
    j["levels"] = cfg.levels;
    j["symmetric"] = cfg.symmetric;
    j["scaling"] = to_string(cfg.scaling);
    j["filter_mode"] = to_string(cfg.filter_mode);
    j["hist_source"] = to_string(cfg.hist_source);
    j["hist_distance_space"] = to_string(cfg.hist_distance_space);
    j["out_dir"] = cfg.out_dir.generic_string();
    j["heatmap_scale"] = cfg.heatmap_scale;
    j["pgm"] = cfg.emit_pgm;
    j["histogram_plots"] = cfg.histogram_plots;
    return j;
}

void write_feature_tables(OutputSet& out, const PipelineConfig& cfg,
                          const std::vector<SampleFeatures>& features) {
    if (wants_histogram(cfg.feature_set)) {
        std::vector<FeatureVector> rows;
        for (const auto& f : features) {
            rows.push_back(f.hist_stats);
        }
        export_features(rows, hist_names(cfg), out.claim("features_histogram.csv"));
    }
    if (wants_glcm(cfg.feature_set)) {
        std::vector<FeatureVector> rows;
        for (const auto& f : features) {
            rows.push_back(f.glcm);
        }
        export_features(rows, glcm_feature_names(), out.claim("features_glcm.csv"));
    }
}

} // namespace

std::vector<fs::path> run_features(const PipelineConfig& cfg) {
    cfg.validate();
    const auto manifest = load_manifest(cfg.manifest, cfg.per_class, cfg.seed);
    const auto features = extract_all(manifest, cfg);
    OutputSet out(cfg.out_dir);
    try {
        write_feature_tables(out, cfg, features);
    } catch (const fs::filesystem_error& e) {
        out.rollback();
        throw IoError(e.what());
    } catch (...) {
        out.rollback();
        throw;
    }
    std::vector<fs::path> paths;
    for (const auto& rel : out.files()) {
        paths.push_back(out.root() / rel);
    }
    return paths;
}

std::vector<fs::path> run_network(const fs::path& features_csv, std::string_view name,
                                  const NetworkOptions& opts) {
    if (opts.heatmap_scale < 1) {
        throw ConfigError("heatmap scale must be >= 1");
    }
    if (name.empty()) {
        throw ConfigError("network name must not be empty");
    }
    const FeatureTable table = read_features(features_csv);
    OutputSet out(opts.out_dir);
    try {
        emit_networks(out, opts, name, table.rows, std::nullopt);
    } catch (const fs::filesystem_error& e) {
        out.rollback();
        throw IoError(e.what());
    } catch (...) {
        out.rollback();
        throw;
    }
    std::vector<fs::path> paths;
    for (const auto& rel : out.files()) {
        paths.push_back(out.root() / rel);
    }
    return paths;
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    const auto manifest = load_manifest(cfg.manifest, cfg.per_class, cfg.seed);
    const auto features = extract_all(manifest, cfg);

    OutputSet out(cfg.out_dir);
    RunManifest result;
    try {
        write_feature_tables(out, cfg, features);

        if (wants_histogram(cfg.feature_set)) {
            std::vector<FeatureVector> points;
            for (const auto& f : features) {
                points.push_back(f.hist_points);
            }
            emit_networks(out, network_options(cfg), "histogram", points, cfg.per_class);

            if (cfg.histogram_plots) {
                for (const auto& f : features) {
                    for (const auto& h : f.histograms) {
                        const auto rel = "histograms/" + sample_tag(f.hist_stats.sample_id) + "_" +
                                         std::string(channel_name(h.channel)) + ".png";
                        render_histogram(h, out.claim(rel));
                    }
                }
            }
        }
        if (wants_glcm(cfg.feature_set)) {
            std::vector<FeatureVector> points;
            for (const auto& f : features) {
                points.push_back(f.glcm);
            }
            emit_networks(out, network_options(cfg), "glcm", points, cfg.per_class);
        }

        for (const auto& rel : out.files()) {
            result.artifacts.push_back({rel, sha256_file(out.root() / rel)});
        }
        std::sort(result.artifacts.begin(), result.artifacts.end(),
                  [](const auto& a, const auto& b) { return a.path < b.path; });

        nlohmann::ordered_json run;
        run["config"] = config_json(cfg);
        run["samples"] = manifest.size();
        auto& list = run["artifacts"] = nlohmann::ordered_json::array();
        for (const auto& a : result.artifacts) {
            list.push_back({{"path", a.path}, {"sha256", a.sha256}});
        }
        result.run_json = out.claim("run.json");
        std::ofstream os(result.run_json, std::ios::binary);
        os << run.dump(2) << '\n';
        if (!os.flush()) {
            throw IoError("cannot write " + result.run_json.string());
        }
    } catch (const fs::filesystem_error& e) {
        out.rollback();
        throw IoError(e.what());
    } catch (...) {
        out.rollback();
        throw;
    }
    return result;
}

} // namespace texnet
