#include "texnet/features_csv.hpp"

#include "csv_util.hpp"
#include "texnet/error.hpp"

#include <algorithm>
#include <fstream>

namespace texnet {

void export_features(std::span<const FeatureVector> vectors, std::span<const std::string> names,
                     const std::filesystem::path& out) {
    for (const auto& v : vectors) {
        if (v.size() != names.size()) {
            throw DataError("sample " + std::to_string(v.sample_id) + " has " +
                            std::to_string(v.size()) + " features, expected " +
                            std::to_string(names.size()));
        }
    }
    std::vector<const FeatureVector*> order;
    order.reserve(vectors.size());
    for (const auto& v : vectors) {
        order.push_back(&v);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });

    std::ofstream os(out, std::ios::binary);
    if (!os) {
        throw IoError("cannot write " + out.string());
    }
    os << "sample_id";
    for (const auto& name : names) {
        os << ',' << name;
    }
    os << ",label\n";
    for (const auto* v : order) {
        os << v->sample_id;
        for (double x : v->values) {
            os << ',' << detail::format_fixed(x, 6);
        }
        os << ',' << (v->label == 1 ? "1.0" : "0.0") << '\n';
    }
    if (!os.flush()) {
        throw IoError("cannot write " + out.string());
    }
}

FeatureTable read_features(const std::filesystem::path& in) {
    std::ifstream is(in);
    if (!is) {
        throw DataError("feature table not found: " + in.string());
    }
    std::string line;
    if (!std::getline(is, line)) {
        throw DataError("empty feature table: " + in.string());
    }
    const auto header = detail::split_fields(detail::trim(line));
    if (header.size() < 2 || header.front() != "sample_id" || header.back() != "label") {
        throw DataError("feature table header must start with sample_id and end with label");
    }

    FeatureTable table;
    for (std::size_t k = 1; k + 1 < header.size(); ++k) {
        table.names.emplace_back(header[k]);
    }
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = detail::split_fields(text);
        const auto where = " at line " + std::to_string(line_no) + " of " + in.string();
        if (fields.size() != header.size()) {
            throw DataError("feature row has " + std::to_string(fields.size()) +
                            " columns, expected " + std::to_string(header.size()) + where);
        }
        FeatureVector fv;
        if (!detail::parse_size(fields.front(), fv.sample_id)) {
            throw DataError("bad sample_id" + where);
        }
        double label = 0.0;
        if (!detail::parse_double(fields.back(), label) || (label != 0.0 && label != 1.0)) {
            throw DataError("label must be 0.0 or 1.0" + where);
        }
        fv.label = label == 1.0 ? 1 : 0;
        fv.values.resize(table.names.size());
        for (std::size_t k = 0; k < fv.values.size(); ++k) {
            if (!detail::parse_double(fields[k + 1], fv.values[k])) {
                throw DataError("bad value in column " + table.names[k] + where);
            }
        }
        table.rows.push_back(std::move(fv));
    }
    return table;
}

} // namespace texnet
