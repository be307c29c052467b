#include "support/fixture.hpp"
#include "texnet/error.hpp"
#include "texnet/features_csv.hpp"
#include "texnet/glcm.hpp"
#include "texnet/pipeline.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>

namespace texnet {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class PipelineTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("texnet_pipeline_" +
                std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::size_t count_files(const fs::path& root) const {
        std::size_t n = 0;
        for (const auto& e : fs::recursive_directory_iterator(root)) {
            n += e.is_regular_file() ? 1 : 0;
        }
        return n;
    }

    fs::path dir_;
};

TEST(PipelineConfig, DefaultsAndValidation) {
    PipelineConfig cfg;
    EXPECT_EQ(cfg.per_class, 50u);
    EXPECT_EQ(cfg.glcm_distance, 1);
    EXPECT_EQ(cfg.levels, 256);
    EXPECT_TRUE(cfg.symmetric);
    EXPECT_EQ(cfg.scaling, Scaling::None);
    EXPECT_EQ(cfg.filter_mode, FilterMode::KeepBelow);
    EXPECT_THROW(cfg.validate(), ConfigError); // no manifest
    cfg.manifest = "m.csv";
    EXPECT_NO_THROW(cfg.validate());
    cfg.per_class = 1;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg.per_class = 2;
    cfg.levels = 300;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg.levels = 8;
    cfg.glcm_distance = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(PipelineConfig, ApplyValues) {
    PipelineConfig cfg;
    apply_config_value(cfg, "per-class", "7");
    apply_config_value(cfg, "per_class", "8");
    apply_config_value(cfg, "--feature-set", "glcm");
    apply_config_value(cfg, "filter_mode", "keep_above");
    apply_config_value(cfg, "scaling", "zscore");
    apply_config_value(cfg, "hist-source", "gray");
    apply_config_value(cfg, "hist-distance-space", "bins");
    apply_config_value(cfg, "symmetric", "false");
    apply_config_value(cfg, "seed", "42");
    EXPECT_EQ(cfg.per_class, 8u);
    EXPECT_EQ(cfg.feature_set, FeatureSet::Glcm);
    EXPECT_EQ(cfg.filter_mode, FilterMode::KeepAbove);
    EXPECT_EQ(cfg.scaling, Scaling::ZScore);
    EXPECT_EQ(cfg.hist_source, HistSource::Gray);
    EXPECT_EQ(cfg.hist_distance_space, HistDistanceSpace::Bins);
    EXPECT_FALSE(cfg.symmetric);
    EXPECT_EQ(cfg.seed, 42u);

    EXPECT_THROW(apply_config_value(cfg, "colour", "red"), ConfigError);
    EXPECT_THROW(apply_config_value(cfg, "feature-set", "texture"), ConfigError);
    EXPECT_THROW(apply_config_value(cfg, "per-class", "-3"), ConfigError);
    EXPECT_THROW(apply_config_value(cfg, "per-class", "3x"), ConfigError);
    EXPECT_THROW(apply_config_value(cfg, "symmetric", "maybe"), ConfigError);
}

TEST_F(PipelineTest, ConfigFile) {
    const auto p = dir_ / "run.conf";
    std::ofstream(p) << "# comment\nmanifest = \"data/m#1.csv\"\nper_class=12  # trailing\n\n"
                        "filter-mode = keep_above\n";
    const auto values = read_config_file(p);
    EXPECT_EQ(values.at("manifest"), "data/m#1.csv");
    EXPECT_EQ(values.at("per-class"), "12");
    EXPECT_EQ(values.at("filter-mode"), "keep_above");
    std::ofstream(p) << "no equals sign\n";
    EXPECT_THROW(read_config_file(p), ConfigError);
    EXPECT_THROW(read_config_file(dir_ / "absent.conf"), ConfigError);
}

TEST_F(PipelineTest, ExportFeaturesLayout) {
    const auto out = dir_ / "f.csv";
    export_features({}, glcm_feature_names(), out);
    const auto header = slurp(out);
    EXPECT_EQ(header.substr(0, header.find('\n')),
              "sample_id,contrast_0,contrast_45,contrast_90,contrast_135,dissimilarity_0,"
              "dissimilarity_45,dissimilarity_90,dissimilarity_135,homogeneity_0,homogeneity_45,"
              "homogeneity_90,homogeneity_135,ASM_0,ASM_45,ASM_90,ASM_135,energy_0,energy_45,"
              "energy_90,energy_135,correlation_0,correlation_45,correlation_90,correlation_135,"
              "label");
    EXPECT_EQ(std::count(header.begin(), header.end(), '\n'), 1);

    FeatureVector fv{std::vector<double>(24, 0.0), 1, 3};
    fv.values[0] = 2343.4959921;
    fv.values[12] = 0.0012649;
    const std::vector<FeatureVector> one{fv};
    export_features(one, glcm_feature_names(), out);
    const auto text = slurp(out);
    const auto row = text.substr(text.find('\n') + 1);
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 25); // 26 columns
    EXPECT_TRUE(row.starts_with("3,2343.495992,"));
    EXPECT_NE(row.find(",0.001265,"), std::string::npos);
    EXPECT_TRUE(row.ends_with(",1.0\n"));

    const std::vector<FeatureVector> bad{FeatureVector{{1.0}, 0, 0}};
    EXPECT_THROW(export_features(bad, glcm_feature_names(), out), DataError);
    EXPECT_THROW(export_features(one, glcm_feature_names(), dir_ / "no" / "f.csv"), IoError);
}

TEST_F(PipelineTest, ExportFeaturesRoundTrip) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3000.0, 3000.0);
    std::vector<FeatureVector> rows;
    for (std::size_t id : {4u, 0u, 2u}) {
        FeatureVector fv{std::vector<double>(24), static_cast<int>(id % 2), id};
        for (auto& x : fv.values) {
            x = u(rng);
        }
        rows.push_back(fv);
    }
    const auto out = dir_ / "rt.csv";
    const auto names = glcm_feature_names();
    export_features(rows, names, out);
    const auto table = read_features(out);
    EXPECT_EQ(table.names, names);
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_EQ(table.rows[0].sample_id, 0u); // ordered by sample id
    for (const auto& parsed : table.rows) {
        const auto& orig = *std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
            return r.sample_id == parsed.sample_id;
        });
        EXPECT_EQ(parsed.label, orig.label);
        for (std::size_t k = 0; k < 24; ++k) {
            EXPECT_NEAR(parsed.values[k], orig.values[k], 5e-7);
        }
    }
}

TEST_F(PipelineTest, HundredImageDefaultRunArtifactCounts) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 50, 8);
    cfg.out_dir = dir_ / "out";
    cfg.histogram_plots = false;
    const auto run = run_pipeline(cfg);

    std::size_t csv_features = 0, edges = 0, heatmaps = 0;
    for (const auto& a : run.artifacts) {
        csv_features += a.path.starts_with("features_") ? 1 : 0;
        edges += a.path.starts_with("edges_") ? 1 : 0;
        heatmaps += a.path.starts_with("heatmap_") ? 1 : 0;
        EXPECT_EQ(a.sha256.size(), 64u);
        EXPECT_EQ(a.sha256, sha256_file(cfg.out_dir / a.path));
    }
    EXPECT_EQ(csv_features, 2u);
    EXPECT_EQ(edges, 8u);
    EXPECT_EQ(heatmaps, 8u);

    // 50 nodes per class network
    std::vector<std::size_t> nodes;
    read_edge_list(cfg.out_dir / "edges_glcm_class1.csv", false, &nodes);
    EXPECT_EQ(nodes.size(), 50u);
    const auto table = read_features(cfg.out_dir / "features_histogram.csv");
    EXPECT_EQ(table.names.front(), "R_median");
    EXPECT_EQ(table.rows.size(), 100u);

    const auto run_json = nlohmann::json::parse(slurp(run.run_json));
    EXPECT_EQ(run_json["config"]["per_class"], 50);
    EXPECT_EQ(run_json["config"]["feature_set"], "both");
    EXPECT_EQ(run_json["artifacts"].size(), run.artifacts.size());
}

TEST_F(PipelineTest, HistogramPlotsAndFeatureSelection) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 3, 6);
    cfg.per_class = 3;
    cfg.feature_set = FeatureSet::Histogram;
    cfg.out_dir = dir_ / "out";
    const auto run = run_pipeline(cfg);
    // 1 CSV + 2 classes x (2 edge lists + 2 heatmaps) + 6 samples x 3 channel plots
    EXPECT_EQ(run.artifacts.size(), 1u + 8u + 18u);
    EXPECT_TRUE(fs::exists(cfg.out_dir / "histograms" / "sample_0000_R.png"));
    EXPECT_FALSE(fs::exists(cfg.out_dir / "features_glcm.csv"));
    EXPECT_EQ(count_files(cfg.out_dir), run.artifacts.size() + 1); // + run.json
}

TEST_F(PipelineTest, AlternativeSpaces) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 3, 6);
    cfg.per_class = 3;
    cfg.out_dir = dir_ / "out";
    cfg.hist_source = HistSource::Gray;
    cfg.hist_distance_space = HistDistanceSpace::Bins;
    cfg.scaling = Scaling::ZScore;
    cfg.filter_mode = FilterMode::KeepAbove;
    cfg.levels = 8;
    cfg.emit_pgm = true;
    run_pipeline(cfg);
    const auto table = read_features(cfg.out_dir / "features_histogram.csv");
    EXPECT_EQ(table.names,
              (std::vector<std::string>{"Gray_median", "Gray_mean", "Gray_std", "Gray_kurtosis",
                                        "Gray_skew"}));
    EXPECT_TRUE(fs::exists(cfg.out_dir / "histograms" / "sample_0000_Gray.png"));
    EXPECT_TRUE(fs::exists(cfg.out_dir / "heatmap_glcm_class0_filtered.pgm"));
    // keep_above on 3 distinct edges keeps 2
    const auto filtered = read_edge_list(cfg.out_dir / "edges_glcm_class0_filtered.csv", true);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < filtered.n; ++i) {
        for (std::size_t j = i + 1; j < filtered.n; ++j) {
            kept += filtered(i, j) != 0.0 ? 1 : 0;
        }
    }
    EXPECT_EQ(kept, 2u);
}

TEST_F(PipelineTest, DeterministicAcrossRunsAndThreadCounts) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 5, 10);
    cfg.per_class = 4;
    cfg.seed = 9;
    cfg.out_dir = dir_ / "a";
    cfg.threads = 1;
    const auto a = run_pipeline(cfg);
    cfg.out_dir = dir_ / "b";
    cfg.threads = 4;
    const auto b = run_pipeline(cfg);
    ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
        EXPECT_EQ(a.artifacts[i].path, b.artifacts[i].path);
        EXPECT_EQ(a.artifacts[i].sha256, b.artifacts[i].sha256) << a.artifacts[i].path;
    }
}

TEST_F(PipelineTest, MissingImageNamesSample) {
    const auto manifest = testing::write_dataset(dir_ / "data", 3, 6);
    fs::remove(dir_ / "data" / "img_1_1.png"); // third positive, file order index 3
    PipelineConfig cfg;
    cfg.manifest = manifest;
    cfg.per_class = 3;
    cfg.out_dir = dir_ / "out";
    try {
        run_pipeline(cfg);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("sample 3"), std::string::npos) << e.what();
    }
    EXPECT_TRUE(!fs::exists(cfg.out_dir) || count_files(cfg.out_dir) == 0);
}

TEST_F(PipelineTest, FailedWriteRollsBackOutputs) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 2, 6);
    cfg.per_class = 2;
    cfg.out_dir = dir_ / "out";
    fs::create_directories(cfg.out_dir);
    std::ofstream(cfg.out_dir / "histograms") << "a file where a directory should go";
    EXPECT_THROW(run_pipeline(cfg), DataError);
    EXPECT_EQ(count_files(cfg.out_dir), 1u); // only the pre-existing file
}

TEST_F(PipelineTest, RunFeaturesAndNetwork) {
    PipelineConfig cfg;
    cfg.manifest = testing::write_dataset(dir_ / "data", 3, 6);
    cfg.per_class = 3;
    cfg.feature_set = FeatureSet::Glcm;
    cfg.out_dir = dir_ / "feat";
    const auto written = run_features(cfg);
    ASSERT_EQ(written.size(), 1u);
    EXPECT_EQ(written[0].filename(), "features_glcm.csv");

    NetworkOptions opts;
    opts.out_dir = dir_ / "net";
    opts.heatmap_scale = 2;
    const auto net = run_network(written[0], "glcm", opts);
    EXPECT_EQ(net.size(), 8u);
    EXPECT_TRUE(fs::exists(dir_ / "net" / "edges_glcm_class1_filtered.csv"));

    // the network stage applied to the pipeline's own table gives the same edge list
    cfg.out_dir = dir_ / "full";
    cfg.heatmap_scale = 2;
    run_pipeline(cfg);
    // values pass through 6-decimal CSV rounding, so compare the kept masks
    const auto direct = read_edge_list(dir_ / "full" / "edges_glcm_class0_filtered.csv", true);
    const auto staged = read_edge_list(dir_ / "net" / "edges_glcm_class0_filtered.csv", true);
    ASSERT_EQ(direct.n, staged.n);
    for (std::size_t k = 0; k < direct.data.size(); ++k) {
        EXPECT_EQ(direct.data[k] == 0.0, staged.data[k] == 0.0);
        EXPECT_NEAR(direct.data[k], staged.data[k], 1e-3 * std::max(1.0, direct.data[k]));
    }
}

TEST(Sha256, KnownVector) {
    const auto p = fs::temp_directory_path() / "texnet_sha.txt";
    std::ofstream(p, std::ios::binary) << "abc";
    EXPECT_EQ(sha256_file(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove(p);
}

} // namespace
} // namespace texnet
