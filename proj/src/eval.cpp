#include "tinydense/eval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tinydense/error.hpp"
#include "tinydense/float_text.hpp"
#include "tinydense/inference.hpp"

namespace tinydense {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    for (;;) {
        const auto comma = line.find(',');
        fields.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

int parse_label(std::string_view text, std::size_t line) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "0" || lower == "versicolor" || lower == "iris-versicolor") return 0;
    if (lower == "1" || lower == "virginica" || lower == "iris-virginica") return 1;
    throw ParseError("line " + std::to_string(line) + ": unknown species \"" +
                     std::string(text) + "\" (expected 0/1, versicolor or virginica)");
}

struct RawRow {
    std::size_t line;
    std::vector<std::string_view> fields;
};

std::vector<RawRow> data_rows(std::string_view text) {
    std::vector<RawRow> rows;
    std::size_t line_no = 0;
    bool first = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (first) {
            first = false;
            if (!parse_number(fields.front())) continue;  // header
        }
        rows.push_back({line_no, std::move(fields)});
    }
    return rows;
}

Vector parse_features(const RawRow& row, std::size_t count) {
    Vector out;
    for (std::size_t c = 0; c < count; ++c) {
        auto value = parse_number(row.fields[c]);
        if (!value) {
            throw ParseError("line " + std::to_string(row.line) + ": cannot parse \"" +
                             std::string(row.fields[c]) + "\" as a number");
        }
        out.push_back(*value);
    }
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read data file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

LabeledDataset load_csv(std::string_view text, std::string name) {
    const auto rows = data_rows(text);
    if (rows.empty()) throw ParseError("data file has no samples");
    const std::size_t width = rows.front().fields.size();
    if (width < 2) {
        throw ParseError("line " + std::to_string(rows.front().line) +
                         ": expected features followed by a label");
    }
    std::vector<double> values;
    std::vector<int> labels;
    for (const RawRow& row : rows) {
        if (row.fields.size() != width) {
            throw ParseError("line " + std::to_string(row.line) + ": expected " +
                             std::to_string(width) + " columns, got " +
                             std::to_string(row.fields.size()));
        }
        Vector features = parse_features(row, width - 1);
        values.insert(values.end(), features.begin(), features.end());
        labels.push_back(parse_label(row.fields.back(), row.line));
    }
    return LabeledDataset{std::move(name), Matrix(rows.size(), width - 1, std::move(values)),
                          std::move(labels)};
}

LabeledDataset load_csv_file(const std::string& path) { return load_csv(read_text(path), path); }

FeatureTable load_features_csv(std::string_view text, std::size_t feature_count) {
    const auto rows = data_rows(text);
    if (rows.empty()) throw ParseError("data file has no samples");
    std::vector<double> values;
    std::vector<int> labels;
    bool all_labeled = true;
    for (const RawRow& row : rows) {
        const std::size_t width = row.fields.size();
        if (width != feature_count && width != feature_count + 1) {
            throw ShapeError("line " + std::to_string(row.line) + ": model expects " +
                             std::to_string(feature_count) + " features, row has " +
                             std::to_string(width) + " columns");
        }
        Vector features = parse_features(row, feature_count);
        values.insert(values.end(), features.begin(), features.end());
        if (width == feature_count + 1) {
            labels.push_back(parse_label(row.fields.back(), row.line));
        } else {
            all_labeled = false;
        }
    }
    FeatureTable table{Matrix(rows.size(), feature_count, std::move(values)), std::nullopt};
    if (all_labeled) table.labels = std::move(labels);
    return table;
}

ConfusionMatrix confusion(std::span<const int> actual, std::span<const int> predicted) {
    if (actual.size() != predicted.size()) {
        throw ShapeError("confusion: " + std::to_string(actual.size()) + " actual labels vs " +
                         std::to_string(predicted.size()) + " predictions");
    }
    if (actual.empty()) throw ShapeError("confusion: no samples");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const int a = actual[i];
        const int p = predicted[i];
        if ((a != 0 && a != 1) || (p != 0 && p != 1)) {
            throw ParseError("confusion: non-binary label at index " + std::to_string(i));
        }
        if (a == 1) {
            ++(p == 1 ? cm.tp : cm.fn_);
        } else {
            ++(p == 1 ? cm.fp : cm.tn);
        }
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw ShapeError("accuracy of an empty confusion matrix");
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

std::string_view to_string(Scaling scaling) {
    switch (scaling) {
        case Scaling::none: return "none";
        case Scaling::minmax: return "minmax";
        case Scaling::standard: return "standard";
    }
    return "none";
}

Scaling parse_scaling(std::string_view text) {
    if (text == "none") return Scaling::none;
    if (text == "minmax") return Scaling::minmax;
    if (text == "standard") return Scaling::standard;
    throw ParseError("unknown scaling \"" + std::string(text) +
                     "\" (expected none, minmax or standard)");
}

ScalingParams fit_scaling(const Matrix& features, Scaling mode) {
    ScalingParams params{mode, Vector(features.cols(), 0.0), Vector(features.cols(), 1.0)};
    if (mode == Scaling::none) return params;
    const auto n = static_cast<double>(features.rows());
    for (std::size_t c = 0; c < features.cols(); ++c) {
        const Vector column = features.column(c);
        double scale = 0.0;
        if (mode == Scaling::minmax) {
            const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
            params.offset[c] = *lo;
            scale = *hi - *lo;
        } else {
            double mean = 0.0;
            for (double v : column) mean += v;
            mean /= n;
            double ss = 0.0;
            for (double v : column) ss += (v - mean) * (v - mean);
            params.offset[c] = mean;
            scale = std::sqrt(ss / n);
        }
        params.scale[c] = scale > 0.0 ? scale : 1.0;
    }
    return params;
}

Matrix apply_scaling(const Matrix& features, const ScalingParams& params) {
    if (params.mode == Scaling::none) return features;
    if (params.offset.size() != features.cols() || params.scale.size() != features.cols()) {
        throw ShapeError("scaling parameters do not match the feature count");
    }
    Matrix out = features;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            out(r, c) = (out(r, c) - params.offset[c]) / params.scale[c];
        }
    }
    return out;
}

EvaluationReport evaluate(const NetworkSpec& spec, const LabeledDataset& data, Scaling scaling) {
    return evaluate(spec, data, scaling, spec.dispatch_mode);
}

EvaluationReport evaluate(const NetworkSpec& spec, const LabeledDataset& data, Scaling scaling,
                          DispatchMode mode) {
    if (data.size() == 0) throw ShapeError("cannot evaluate on an empty dataset");
    EvaluationReport report;
    report.model = spec.name;
    report.dataset = data.name;
    report.dispatch_mode = mode;
    report.threshold = spec.threshold;
    report.scaling = fit_scaling(data.features, scaling);
    const auto predicted = predict(spec, apply_scaling(data.features, report.scaling), mode);
    report.confusion = confusion(data.labels, predicted);
    report.accuracy = accuracy(report.confusion);
    return report;
}

std::string to_json(const EvaluationReport& report) {
    auto numbers = [](const Vector& values) {
        std::string out = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i != 0) out += ", ";
            out += shortest_float(values[i]);
        }
        return out + "]";
    };
    const ConfusionMatrix& cm = report.confusion;
    std::ostringstream out;
    out << "{\n";
    out << "  \"model\": " << nlohmann::json(report.model).dump() << ",\n";
    out << "  \"dataset\": " << nlohmann::json(report.dataset).dump() << ",\n";
    out << "  \"dispatch_mode\": \"" << to_string(report.dispatch_mode) << "\",\n";
    out << "  \"threshold\": " << shortest_float(report.threshold) << ",\n";
    out << "  \"positive_class\": \"" << kPositiveClass << "\",\n";
    out << "  \"scaling\": {\n";
    out << "    \"mode\": \"" << to_string(report.scaling.mode) << "\",\n";
    out << "    \"offset\": " << numbers(report.scaling.offset) << ",\n";
    out << "    \"scale\": " << numbers(report.scaling.scale) << "\n";
    out << "  },\n";
    out << "  \"samples\": " << cm.total() << ",\n";
    out << "  \"confusion\": {\"tp\": " << cm.tp << ", \"fn\": " << cm.fn_
        << ", \"fp\": " << cm.fp << ", \"tn\": " << cm.tn << "},\n";
    out << "  \"accuracy\": " << shortest_float(report.accuracy) << "\n";
    out << "}\n";
    return out.str();
}

std::string format_report(const EvaluationReport& report) {
    const ConfusionMatrix& cm = report.confusion;
    char line[128];
    std::ostringstream out;
    out << "Model: " << report.model << " (dispatch: " << to_string(report.dispatch_mode)
        << ", scaling: " << to_string(report.scaling.mode)
        << ", positive class: " << kPositiveClass << ")\n";
    out << "Samples: " << cm.total() << "\n";
    std::snprintf(line, sizeof line, "%-17s %-19s %s\n", "", "Predicted Positive",
                  "Predicted Negative");
    out << line;
    std::snprintf(line, sizeof line, "%-17s %-19zu %zu\n", "Actual Positive", cm.tp, cm.fn_);
    out << line;
    std::snprintf(line, sizeof line, "%-17s %-19zu %zu\n", "Actual Negative", cm.fp, cm.tn);
    out << line;
    std::snprintf(line, sizeof line, "Accuracy: %.1f%%\n", report.accuracy * 100.0);
    out << line;
    return out.str();
}

}  // namespace tinydense
