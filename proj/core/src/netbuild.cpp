#include "texnet/netbuild.hpp"

#include "csv_util.hpp"
#include "texnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>

namespace texnet {

std::size_t DistanceGraph::kept_edge_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            count += is_kept(i, j) ? 1 : 0;
        }
    }
    return count;
}

bool DistanceGraph::is_complete() const { return kept_edge_count() == edge_count(); }

std::vector<FeatureVector> zscore(std::span<const FeatureVector> vectors) {
    std::vector<FeatureVector> out(vectors.begin(), vectors.end());
    if (out.empty()) {
        return out;
    }
    const std::size_t dims = out.front().size();
    const double n = static_cast<double>(out.size());
    for (std::size_t k = 0; k < dims; ++k) {
        double mean = 0.0;
        for (const auto& v : out) {
            mean += v.values[k];
        }
        mean /= n;
        double var = 0.0;
        for (const auto& v : out) {
            var += (v.values[k] - mean) * (v.values[k] - mean);
        }
        const double sd = std::sqrt(var / n);
        if (sd == 0.0) {
            continue;
        }
        for (auto& v : out) {
            v.values[k] = (v.values[k] - mean) / sd;
        }
    }
    return out;
}

double median_of_upper_triangle(const SquareMatrix& w) {
    std::vector<double> upper;
    upper.reserve(w.n * (w.n - 1) / 2);
    for (std::size_t i = 0; i < w.n; ++i) {
        for (std::size_t j = i + 1; j < w.n; ++j) {
            upper.push_back(w(i, j));
        }
    }
    if (upper.empty()) {
        throw DataError("median of an empty edge set");
    }
    const auto mid = upper.begin() + static_cast<std::ptrdiff_t>((upper.size() - 1) / 2);
    std::nth_element(upper.begin(), mid, upper.end());
    return *mid;
}

DistanceGraph pairwise_distances(std::span<const FeatureVector> vectors, Scaling scaling) {
    if (vectors.size() < 2) {
        throw DataError("a distance graph needs at least 2 vectors, got " +
                        std::to_string(vectors.size()));
    }
    const int label = vectors.front().label;
    const std::size_t dims = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.label != label) {
            throw DataError("mixed labels in distance graph (sample " +
                            std::to_string(v.sample_id) + ")");
        }
        if (v.size() != dims) {
            throw DataError("mixed feature dimensions in distance graph (sample " +
                            std::to_string(v.sample_id) + ")");
        }
        for (double x : v.values) {
            if (!std::isfinite(x)) {
                throw DataError("non-finite feature value in sample " +
                                std::to_string(v.sample_id));
            }
        }
    }

    std::vector<FeatureVector> points =
        scaling == Scaling::ZScore ? zscore(vectors)
                                   : std::vector<FeatureVector>(vectors.begin(), vectors.end());
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.sample_id < b.sample_id; });

    const std::size_t n = points.size();
    DistanceGraph g;
    g.label = label;
    g.weights = SquareMatrix(n);
    g.kept.assign(n * n, true);
    for (std::size_t i = 0; i < n; ++i) {
        g.nodes.push_back(points[i].sample_id);
        g.kept[i * n + i] = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < dims; ++k) {
                const double d = points[i].values[k] - points[j].values[k];
                sum += d * d;
            }
            const double dist = std::sqrt(sum);
            g.weights(i, j) = dist;
            g.weights(j, i) = dist;
        }
    }
    g.median_distance = median_of_upper_triangle(g.weights);
    return g;
}

DistanceGraph median_filter(const DistanceGraph& g, FilterMode mode) {
    if (!g.is_complete()) {
        throw DataError("median_filter expects a complete (unfiltered) graph");
    }
    DistanceGraph out = g;
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = g.weights(i, j);
            const bool keep =
                mode == FilterMode::KeepBelow ? w <= g.median_distance : w >= g.median_distance;
            out.kept[i * n + j] = keep;
            out.kept[j * n + i] = keep;
        }
    }
    return out;
}

SquareMatrix adjacency_matrix(const DistanceGraph& g, bool filtered) {
    const std::size_t n = g.size();
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && (!filtered || g.is_kept(i, j))) {
                m(i, j) = g.weights(i, j);
            }
        }
    }
    return m;
}

void write_edge_list(const DistanceGraph& g, const std::filesystem::path& out) {
    std::ofstream os(out, std::ios::binary);
    if (!os) {
        throw IoError("cannot write " + out.string());
    }
    os << "src,dst,distance,kept\n";
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            os << g.nodes[i] << ',' << g.nodes[j] << ','
               << detail::format_significant(g.weights(i, j), 9) << ','
               << (g.is_kept(i, j) ? 1 : 0) << '\n';
        }
    }
    if (!os.flush()) {
        throw IoError("cannot write " + out.string());
    }
}

SquareMatrix read_edge_list(const std::filesystem::path& in, bool filtered,
                            std::vector<std::size_t>* nodes) {
    std::ifstream is(in);
    if (!is) {
        throw DataError("edge list not found: " + in.string());
    }
    std::string line;
    if (!std::getline(is, line) || detail::trim(line) != "src,dst,distance,kept") {
        throw DataError("edge list header must be `src,dst,distance,kept`");
    }
    struct Edge {
        std::size_t src, dst;
        double distance;
        bool kept;
    };
    std::vector<Edge> edges;
    std::map<std::size_t, std::size_t> index;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto f = detail::split_fields(detail::trim(line));
        Edge e{};
        double kept = 0.0;
        if (f.size() != 4 || !detail::parse_size(f[0], e.src) || !detail::parse_size(f[1], e.dst) ||
            !detail::parse_double(f[2], e.distance) || !detail::parse_double(f[3], kept) ||
            e.src == e.dst) {
            throw DataError("malformed edge list row at line " + std::to_string(line_no));
        }
        e.kept = kept != 0.0;
        index[e.src] = 0;
        index[e.dst] = 0;
        edges.push_back(e);
    }
    std::size_t k = 0;
    for (auto& [id, pos] : index) {
        pos = k++;
    }
    SquareMatrix m(index.size());
    for (const auto& e : edges) {
        const double v = (!filtered || e.kept) ? e.distance : 0.0;
        m(index[e.src], index[e.dst]) = v;
        m(index[e.dst], index[e.src]) = v;
    }
    if (nodes != nullptr) {
        nodes->clear();
        for (const auto& [id, pos] : index) {
            nodes->push_back(id);
        }
    }
    return m;
}

} // namespace texnet
