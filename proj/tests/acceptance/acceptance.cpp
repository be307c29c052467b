// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.
// TEXNET_FIXTURE_DIR points at the bundled 12-image synthetic dataset.

#include "support/oracles.hpp"
#include "texnet/glcm.hpp"
#include "texnet/histfeat.hpp"
#include "texnet/ingest.hpp"
#include "texnet/netbuild.hpp"
#include "texnet/pipeline.hpp"
#include "texnet/render.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace texnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Collects failures for one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 5) {
            failures_.push_back(what);
        }
        failed_ += ok ? 0 : 1;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const {
        std::ostringstream os;
        os << checks_ << " checks";
        if (failed_ > 0) {
            os << ", " << failed_ << " failed";
            for (const auto& f : failures_) {
                os << "\n       - " << f;
            }
        }
        return os.str();
    }
    std::string note;

private:
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// 1. Published ASM/energy pairs agree; our energy is sqrt(ASM) on every sample.
Check table_consistency() {
    Check c;
    const double pairs[][2] = {{0.001265, 0.035566}, {0.000535, 0.023127}, {0.000520, 0.022796}};
    for (const auto& p : pairs) {
        c.expect(std::fabs(std::sqrt(p[0]) - p[1]) <= 2e-5,
                 "sqrt(" + fmt(p[0]) + ") = " + fmt(std::sqrt(p[0])) + " vs " + fmt(p[1]));
    }

    std::vector<GrayImage> samples;
    const auto manifest = load_manifest(fs::path(TEXNET_FIXTURE_DIR) / "manifest.csv");
    for (const auto& r : manifest.records) {
        samples.push_back(to_grayscale(decode_png(r.path)));
    }
    std::mt19937 rng(2024);
    for (int k = 0; k < 200; ++k) {
        samples.push_back(oracle::random_gray(rng, 2, 32, 256));
    }
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto fv = glcm_feature_vector(samples[s]);
        for (std::size_t a = 0; a < 4; ++a) {
            const double asm_v = fv.values[12 + a];
            const double energy = fv.values[16 + a];
            c.expect(std::fabs(energy - std::sqrt(asm_v)) <= 1e-12 &&
                         std::fabs(energy * energy - asm_v) <= 1e-12 * asm_v,
                     "sample " + std::to_string(s) + " angle " + std::to_string(a));
        }
    }
    c.note = std::to_string(samples.size()) + " samples";
    return c;
}

// 2. Counts equal a pair-enumeration oracle; features within 1e-12; under 5 s.
Check glcm_oracle() {
    Check c;
    const auto start = Clock::now();
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        const auto img = oracle::random_gray(rng, 2, 8, 4);
        for (auto angle : kAllAngles) {
            const auto expected = oracle::glcm_counts(img, 1, angle, true);
            const auto g = compute_glcm(img, {1, angle});
            bool counts_ok = true;
            for (int i = 0; i < img.levels(); ++i) {
                for (int j = 0; j < img.levels(); ++j) {
                    const auto it = expected.find({i, j});
                    counts_ok &= g.count(i, j) == (it == expected.end() ? 0 : it->second);
                }
            }
            c.expect(counts_ok, "counts differ on image " + std::to_string(k));
            const auto f = glcm_features(g);
            const auto o = oracle::glcm_features(expected);
            const double diffs[] = {f.contrast - static_cast<double>(o.contrast),
                                    f.dissimilarity - static_cast<double>(o.dissimilarity),
                                    f.homogeneity - static_cast<double>(o.homogeneity),
                                    f.asm_ - static_cast<double>(o.asm_),
                                    f.energy - static_cast<double>(o.energy),
                                    f.correlation - static_cast<double>(o.correlation)};
            for (double d : diffs) {
                c.expect(std::fabs(d) <= 1e-12, "feature off by " + fmt(d) + " on image " +
                                                    std::to_string(k));
            }
        }
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
    c.note = fmt(elapsed) + " s";
    return c;
}

// 3. The hand-derived 3x3 fixture.
Check hand_fixture() {
    Check c;
    const GrayImage img(3, 3, {0, 1, 1, 0, 0, 1, 2, 2, 2}, 3);
    const auto f = glcm_features(compute_glcm(img, {1, Angle::Deg0}, true, true));
    const std::pair<double, double> cases[] = {{f.contrast, 1.0 / 3.0},
                                               {f.dissimilarity, 1.0 / 3.0},
                                               {f.homogeneity, 5.0 / 6.0},
                                               {f.asm_, 2.0 / 9.0},
                                               {f.energy, 0.47140452},
                                               {f.correlation, 0.75}};
    const char* names[] = {"contrast", "dissimilarity", "homogeneity", "ASM", "energy",
                           "correlation"};
    for (std::size_t k = 0; k < 6; ++k) {
        c.expect(std::fabs(cases[k].first - cases[k].second) <= 1e-9,
                 std::string(names[k]) + " = " + fmt(cases[k].first));
    }
    return c;
}

// 4. Histogram moments equal direct pixel moments; degenerate convention.
Check histogram_oracle() {
    Check c;
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> size(1, 1024);
    for (int k = 0; k < 100; ++k) {
        auto px = oracle::random_plane(rng, size(rng));
        if (k % 2 == 1) {
            for (auto& p : px) {
                p = static_cast<std::uint8_t>(p * p / 255);
            }
        }
        const auto s = histogram_stats(compute_histogram(px, Channel::Gray));
        const auto o = oracle::pixel_moments(px);
        c.expect(s.median == o.median, "median on plane " + std::to_string(k));
        c.expect(oracle::rel_close(s.mean, o.mean, 1e-9), "mean on plane " + std::to_string(k));
        c.expect(oracle::rel_close(s.std, o.std, 1e-9), "std on plane " + std::to_string(k));
        c.expect(oracle::rel_close(s.skew, o.skew, 1e-9), "skew on plane " + std::to_string(k));
        c.expect(oracle::rel_close(s.kurtosis, o.kurtosis, 1e-9),
                 "kurtosis on plane " + std::to_string(k));
    }
    const std::vector<std::uint8_t> constant(37, 123);
    const auto s = histogram_stats(compute_histogram(constant, Channel::Gray));
    c.expect(s.std == 0.0 && s.skew == 0.0 && s.kurtosis == 0.0, "constant plane");
    return c;
}

// 5. 50 per class -> 1225 edges; metric suite; 613 edges survive keep_below.
Check network_shape() {
    Check c;
    std::mt19937 rng(5);
    for (int label : {0, 1}) {
        const auto pts = oracle::random_vectors(rng, 50, 24, label);
        const auto g = pairwise_distances(pts);
        c.expect(g.size() == 50 && g.edge_count() == 1225 && g.kept_edge_count() == 1225,
                 "complete graph size");
        std::vector<double> upper;
        for (std::size_t i = 0; i < 50; ++i) {
            c.expect(g.weights(i, i) == 0.0, "zero diagonal");
            for (std::size_t j = 0; j < 50; ++j) {
                if (j > i) {
                    upper.push_back(g.weights(i, j));
                }
                if (g.weights(i, j) != g.weights(j, i)) {
                    c.expect(false, "asymmetric weight");
                }
            }
        }
        c.expect(upper.size() == 1225, "1225 weighted edges");
        std::uniform_int_distribution<std::size_t> pick(0, 49);
        for (int t = 0; t < 1000; ++t) {
            const auto i = pick(rng), j = pick(rng), k = pick(rng);
            c.expect(g.weights(i, k) <= g.weights(i, j) + g.weights(j, k) + 1e-9,
                     "triangle inequality");
        }
        std::sort(upper.begin(), upper.end());
        c.expect(std::adjacent_find(upper.begin(), upper.end()) == upper.end(),
                 "weights distinct");
        const auto kept = median_filter(g, FilterMode::KeepBelow).kept_edge_count();
        c.expect(kept == 613, "keep_below retained " + std::to_string(kept));
    }
    return c;
}

// 6. Range sanity over 1000 random images.
Check feature_ranges() {
    Check c;
    std::mt19937 rng(1000);
    for (int k = 0; k < 1000; ++k) {
        const int max_levels = k % 4 == 0 ? 256 : (k % 4 == 1 ? 16 : 4);
        const auto img = oracle::random_gray(rng, 2, 16, max_levels);
        for (auto angle : kAllAngles) {
            const auto f = glcm_features(compute_glcm(img, {1, angle}));
            const std::string where = "image " + std::to_string(k);
            c.expect(f.homogeneity > 0.0 && f.homogeneity <= 1.0, "homogeneity " + where);
            c.expect(f.asm_ > 0.0 && f.asm_ <= 1.0, "ASM " + where);
            c.expect(f.correlation >= -1.0 - 1e-9 && f.correlation <= 1.0 + 1e-9,
                     "correlation " + where);
            c.expect(f.dissimilarity * f.dissimilarity <= f.contrast + 1e-12,
                     "dissimilarity^2 <= contrast " + where);
            c.expect(f.contrast >= 0.0, "contrast " + where);
        }
    }
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// 7. Two pipeline runs on the bundled fixture are byte-identical; < 30 s.
Check end_to_end_determinism() {
    Check c;
    const auto root = fs::temp_directory_path() / "texnet_acceptance_e2e";
    fs::remove_all(root);
    const auto start = Clock::now();

    PipelineConfig cfg;
    cfg.manifest = fs::path(TEXNET_FIXTURE_DIR) / "manifest.csv";
    cfg.per_class = 6;
    cfg.seed = 42;
    cfg.emit_pgm = true;
    cfg.out_dir = root / "run1";
    const auto first = run_pipeline(cfg);
    cfg.out_dir = root / "run2";
    const auto second = run_pipeline(cfg);
    const double elapsed = seconds_since(start);

    c.expect(first.artifacts.size() == second.artifacts.size(), "artifact counts differ");
    std::size_t csv = 0, edges = 0, png = 0, pgm = 0;
    for (const auto& a : first.artifacts) {
        const auto other = slurp(root / "run2" / a.path);
        c.expect(!other.empty() && slurp(root / "run1" / a.path) == other, a.path + " differs");
        csv += a.path.starts_with("features_") ? 1 : 0;
        edges += a.path.starts_with("edges_") ? 1 : 0;
        png += a.path.starts_with("heatmap_") && a.path.ends_with(".png") ? 1 : 0;
        pgm += a.path.ends_with(".pgm") ? 1 : 0;
    }
    c.expect(slurp(first.run_json).substr(slurp(first.run_json).find("\"artifacts\"")) ==
                 slurp(second.run_json).substr(slurp(second.run_json).find("\"artifacts\"")),
             "run.json checksums differ");
    c.expect(csv == 2 && edges == 8 && png == 8 && pgm == 8, "unexpected artifact mix");
    c.expect(elapsed < 30.0, "runtime " + fmt(elapsed) + " s");
    c.note = std::to_string(first.artifacts.size()) + " artifacts, " + fmt(elapsed) + " s";
    fs::remove_all(root);
    return c;
}

// 8. [[0,1],[1,0]] maps to {0,255}; symmetric matrices give transpose-equal images.
Check rendering_contract() {
    Check c;
    SquareMatrix m(2);
    m(0, 1) = m(1, 0) = 1.0;
    const auto img = rasterize_heatmap(m);
    c.expect(img.at(0, 0) == 0 && img.at(1, 1) == 0, "diagonal not black");
    c.expect(img.at(0, 1) == 255 && img.at(1, 0) == 255, "off-diagonal not white");

    const auto dir = fs::temp_directory_path() / "texnet_acceptance_render";
    fs::create_directories(dir);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t);
        SquareMatrix s(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s(i, j) = s(j, i) = u(rng);
            }
        }
        render_heatmap(s, dir / "s.png", {.vmin = {}, .vmax = {}, .invert = false, .scale = 3});
        const auto back = read_png_gray(dir / "s.png");
        bool symmetric = back.width == back.height;
        for (std::size_t y = 0; symmetric && y < back.height; ++y) {
            for (std::size_t x = 0; x < back.width; ++x) {
                symmetric &= back.at(y, x) == back.at(x, y);
            }
        }
        c.expect(symmetric, "image not transpose-equal for n=" + std::to_string(n));
    }
    fs::remove_all(dir);
    return c;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"C1 ASM/energy consistency", table_consistency},
        {"C2 GLCM pair-enumeration oracle", glcm_oracle},
        {"C3 hand-derived 3x3 GLCM fixture", hand_fixture},
        {"C4 histogram moment oracle", histogram_oracle},
        {"C5 network shape and median filter", network_shape},
        {"C6 GLCM feature range sanity", feature_ranges},
        {"C7 end-to-end determinism", end_to_end_determinism},
        {"C8 heatmap rendering contract", rendering_contract},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok() ? "[PASS] " : "[FAIL] ") << name << " (" << c.summary()
                  << (c.note.empty() ? "" : "; " + c.note) << ")\n";
        failed += c.ok() ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed"
                              : std::to_string(failed) + " criteria failed")
              << '\n';
    return failed == 0 ? 0 : 1;
}
