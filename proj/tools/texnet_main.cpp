// texnet: texture features -> per-class distance networks -> heatmaps.

#include "texnet/error.hpp"
#include "texnet/histfeat.hpp"
#include "texnet/ingest.hpp"
#include "texnet/netbuild.hpp"
#include "texnet/pipeline.hpp"
#include "texnet/render.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

/// Flags that map one-to-one onto PipelineConfig keys. Values stay strings
/// until the config file has been applied, so flags always win.
struct ConfigFlags {
    std::string config_file;
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        options.emplace_back(key, app->add_option("--" + key, values[key], help));
    }

    void add_flag(CLI::App* app, const std::string& key, const std::string& help) {
        auto* opt = app->add_flag_function(
            "--" + key + ",!--no-" + key,
            [this, key](std::int64_t n) { values[key] = n > 0 ? "true" : "false"; }, help);
        options.emplace_back(key, opt);
    }

    texnet::PipelineConfig resolve() const {
        texnet::PipelineConfig cfg;
        if (!config_file.empty()) {
            for (const auto& [k, v] : texnet::read_config_file(config_file)) {
                texnet::apply_config_value(cfg, k, v);
            }
        }
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) {
                texnet::apply_config_value(cfg, key, values.at(key));
            }
        }
        return cfg;
    }
};

void add_common_pipeline_flags(CLI::App* app, ConfigFlags& flags) {
    app->add_option("--config", flags.config_file, "key = value config file (flags override it)")
        ->check(CLI::ExistingFile);
    flags.add(app, "manifest", "CSV manifest with header path,label");
    flags.add(app, "per-class", "samples kept per label (default 50)");
    flags.add(app, "seed", "subsampling seed (default 0)");
    flags.add(app, "feature-set", "histogram | glcm | both (default both)");
    flags.add(app, "glcm-distance", "GLCM pixel offset (default 1)");
    flags.add(app, "levels", "grey levels for GLCM, 2..256 (default 256)");
    flags.add_flag(app, "symmetric", "symmetric GLCM (default on)");
    flags.add(app, "hist-source", "rgb | gray histogram source (default rgb)");
    flags.add(app, "out-dir", "output directory (default out)");
    flags.add(app, "threads", "worker threads, 0 = all cores");
}

void print_paths(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) {
        std::cout << p.generic_string() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Texture features, per-class distance networks and adjacency heatmaps"};
    app.require_subcommand(1);

    // features
    ConfigFlags features_flags;
    auto* features = app.add_subcommand("features", "extract feature tables from a manifest");
    add_common_pipeline_flags(features, features_flags);

    // pipeline
    ConfigFlags pipeline_flags;
    auto* pipeline = app.add_subcommand("pipeline", "run the full characterization pipeline");
    add_common_pipeline_flags(pipeline, pipeline_flags);
    pipeline_flags.add(pipeline, "scaling", "none | zscore (default none)");
    pipeline_flags.add(pipeline, "filter-mode", "keep_below | keep_above (default keep_below)");
    pipeline_flags.add(pipeline, "hist-distance-space", "stats | bins (default stats)");
    pipeline_flags.add(pipeline, "heatmap-scale", "pixels per adjacency cell (default 4)");
    pipeline_flags.add_flag(pipeline, "pgm", "also write PGM heatmaps");
    pipeline_flags.add_flag(pipeline, "histogram-plots", "write per-sample histogram plots");

    // network
    std::string net_features, net_name, net_scaling = "none", net_filter = "keep_below",
                                         net_out = "out";
    std::size_t net_scale = 4;
    bool net_pgm = false;
    auto* network = app.add_subcommand("network", "build class networks from a feature table");
    network->add_option("--features", net_features, "feature CSV written by `features`")
        ->required()
        ->check(CLI::ExistingFile);
    network->add_option("--name", net_name, "artifact name prefix (default: CSV stem)");
    network->add_option("--scaling", net_scaling, "none | zscore");
    network->add_option("--filter-mode", net_filter, "keep_below | keep_above");
    network->add_option("--out-dir", net_out, "output directory");
    network->add_option("--heatmap-scale", net_scale, "pixels per adjacency cell");
    network->add_flag("--pgm", net_pgm, "also write PGM heatmaps");

    // render
    std::string render_edges, render_image, render_channel = "gray", render_out,
                                            render_format = "png";
    bool render_filtered = false;
    std::size_t render_scale = 1;
    auto* render = app.add_subcommand("render", "render an edge list heatmap or an image histogram");
    auto* edges_opt = render->add_option("--edges", render_edges, "edge list CSV to render")
                          ->check(CLI::ExistingFile);
    auto* image_opt = render->add_option("--image", render_image, "PNG whose histogram to plot")
                          ->check(CLI::ExistingFile);
    edges_opt->excludes(image_opt);
    render->add_option("--channel", render_channel, "R | G | B | gray (histogram only)");
    render->add_flag("--filtered", render_filtered, "zero the edges dropped by median filtering");
    render->add_option("--scale", render_scale, "pixels per adjacency cell");
    render->add_option("--format", render_format, "png | pgm")
        ->check(CLI::IsMember({"png", "pgm"}));
    render->add_option("--out", render_out, "output image path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*features) {
            print_paths(texnet::run_features(features_flags.resolve()));
        } else if (*pipeline) {
            const auto result = texnet::run_pipeline(pipeline_flags.resolve());
            for (const auto& a : result.artifacts) {
                std::cout << a.sha256 << "  " << a.path << '\n';
            }
            std::cout << "wrote " << result.run_json.generic_string() << '\n';
        } else if (*network) {
            texnet::NetworkOptions opts{.scaling = texnet::parse_scaling(net_scaling),
                                        .filter_mode = texnet::parse_filter_mode(net_filter),
                                        .out_dir = net_out,
                                        .heatmap_scale = net_scale,
                                        .emit_pgm = net_pgm};
            const auto name =
                net_name.empty() ? std::filesystem::path(net_features).stem().string() : net_name;
            print_paths(texnet::run_network(net_features, name, opts));
        } else if (*render) {
            const auto format =
                render_format == "pgm" ? texnet::ImageFormat::Pgm : texnet::ImageFormat::Png;
            if (!render_edges.empty()) {
                const auto m = texnet::read_edge_list(render_edges, render_filtered);
                texnet::HeatmapOptions opts;
                opts.scale = render_scale;
                texnet::render_heatmap(m, render_out, opts, format);
            } else if (!render_image.empty()) {
                const auto rgb = texnet::decode_png(render_image);
                texnet::ChannelHistogram h;
                if (render_channel == "R") {
                    h = texnet::compute_histogram(rgb.red(), texnet::Channel::R);
                } else if (render_channel == "G") {
                    h = texnet::compute_histogram(rgb.green(), texnet::Channel::G);
                } else if (render_channel == "B") {
                    h = texnet::compute_histogram(rgb.blue(), texnet::Channel::B);
                } else if (render_channel == "gray") {
                    h = texnet::compute_histogram(texnet::to_grayscale(rgb).pixels(),
                                                  texnet::Channel::Gray);
                } else {
                    throw texnet::ConfigError("channel must be R, G, B or gray");
                }
                texnet::render_histogram(h, render_out, format);
            } else {
                throw texnet::ConfigError("render needs --edges or --image");
            }
            std::cout << render_out << '\n';
        }
    } catch (const texnet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const texnet::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
