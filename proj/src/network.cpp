#include "tinydense/network.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tinydense/error.hpp"
#include "tinydense/float_text.hpp"

namespace tinydense {

using nlohmann::json;

std::string_view to_string(DispatchMode mode) {
    return mode == DispatchMode::corrected ? "corrected" : "paper_compat";
}

DispatchMode parse_dispatch_mode(std::string_view text) {
    if (text == "corrected") return DispatchMode::corrected;
    if (text == "paper_compat" || text == "paper-compat") return DispatchMode::paper_compat;
    throw ParseError("unknown dispatch mode \"" + std::string(text) + "\"");
}

std::vector<std::size_t> NetworkSpec::widths() const {
    std::vector<std::size_t> out{input_dim};
    for (const auto& layer : layers) out.push_back(layer.units);
    return out;
}

std::string Violation::describe() const {
    std::string out = layer ? "layer " + std::to_string(*layer) + ": " : std::string{};
    return out + field + " expected " + expected + ", got " + actual;
}

std::string ValidationReport::describe() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += '\n';
        out += v.describe();
    }
    return out;
}

ValidationReport validate(const NetworkSpec& spec) {
    ValidationReport report;
    auto fail = [&](std::optional<std::size_t> layer, std::string field, std::string expected,
                    std::string actual) {
        report.violations.push_back(
            {layer, std::move(field), std::move(expected), std::move(actual)});
    };

    if (spec.input_dim == 0) fail(std::nullopt, "input_dim", ">= 1", "0");
    if (spec.layers.empty()) fail(std::nullopt, "layers", "at least one layer", "none");
    if (!(spec.threshold >= 0.0 && spec.threshold <= 1.0)) {
        fail(std::nullopt, "threshold", "a value in [0, 1]", shortest_float(spec.threshold));
    }

    std::size_t previous = spec.input_dim;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& layer = spec.layers[i];
        if (layer.units == 0) fail(i, "units", ">= 1", "0");
        if (layer.weights.rows() != previous) {
            fail(i, "weights rows", std::to_string(previous),
                 std::to_string(layer.weights.rows()));
        }
        if (layer.weights.cols() != layer.units) {
            fail(i, "weights columns", std::to_string(layer.units),
                 std::to_string(layer.weights.cols()));
        }
        if (layer.biases.size() != layer.units) {
            fail(i, "bias length", std::to_string(layer.units),
                 std::to_string(layer.biases.size()));
        }
        for (double w : layer.weights.data()) {
            if (!std::isfinite(w)) {
                fail(i, "weights", "finite values", shortest_float(w));
                break;
            }
        }
        for (double b : layer.biases) {
            if (!std::isfinite(b)) {
                fail(i, "biases", "finite values", shortest_float(b));
                break;
            }
        }
        if (!std::isfinite(layer.activation.alpha) || layer.activation.alpha < 0.0) {
            fail(i, "alpha", ">= 0", shortest_float(layer.activation.alpha));
        }
        previous = layer.units;
    }
    return report;
}

void require_valid(const NetworkSpec& spec) {
    const auto report = validate(spec);
    if (!report.ok()) {
        throw ValidationError("invalid model \"" + spec.name + "\":\n" + report.describe());
    }
}

// ---------------------------------------------------------------------------
// Model documents

namespace {

const std::set<std::string> kTopLevelFields{"name", "input_dim", "threshold", "dispatch_mode",
                                            "layers"};
const std::set<std::string> kLayerFields{"units", "activation", "alpha", "weights", "biases"};

std::string position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : object.items()) {
        if (!allowed.contains(item.key())) {
            throw ParseError(where + ": unknown field \"" + item.key() + "\"");
        }
    }
}

const json& field(const json& object, const char* key, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

double number(const json& value, const std::string& where) {
    if (!value.is_number()) throw ParseError(where + ": expected a number");
    return value.get<double>();
}

std::size_t count(const json& value, const std::string& where) {
    if (!value.is_number_unsigned()) {
        throw ParseError(where + ": expected a non-negative integer");
    }
    return value.get<std::size_t>();
}

Vector numbers(const json& value, const std::string& where) {
    if (!value.is_array()) throw ParseError(where + ": expected an array of numbers");
    Vector out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(number(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Matrix matrix(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) {
        throw ParseError(where + ": expected a non-empty array of rows");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < value.size(); ++r) {
        rows.push_back(numbers(value[r], where + "[" + std::to_string(r) + "]"));
    }
    try {
        return Matrix::from_rows(rows);
    } catch (const ShapeError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

LayerSpec parse_layer(const json& object, std::size_t index) {
    const std::string where = "layers[" + std::to_string(index) + "]";
    if (!object.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown(object, kLayerFields, where);

    LayerSpec layer;
    layer.units = count(field(object, "units", where), where + ".units");
    const json& name = field(object, "activation", where);
    if (!name.is_string()) throw ParseError(where + ".activation: expected a string");
    layer.activation.kind = parse_activation(name.get<std::string>());
    if (auto it = object.find("alpha"); it != object.end()) {
        layer.activation.alpha = number(*it, where + ".alpha");
    }
    layer.weights = matrix(field(object, "weights", where), where + ".weights");
    layer.biases = numbers(field(object, "biases", where), where + ".biases");
    return layer;
}

void write_numbers(std::ostringstream& out, std::span<const double> values) {
    out << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out << ", ";
        out << shortest_float(values[i]);
    }
    out << ']';
}

}  // namespace

NetworkSpec load(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("model syntax error at " + position_of(text, e.byte - 1) + ": " +
                         e.what());
    }
    if (!doc.is_object()) throw ParseError("model document must be a JSON object");
    reject_unknown(doc, kTopLevelFields, "model");

    NetworkSpec spec;
    const json& name = field(doc, "name", "model");
    if (!name.is_string()) throw ParseError("model.name: expected a string");
    spec.name = name.get<std::string>();
    spec.input_dim = count(field(doc, "input_dim", "model"), "model.input_dim");
    if (auto it = doc.find("threshold"); it != doc.end()) {
        spec.threshold = number(*it, "model.threshold");
    }
    if (auto it = doc.find("dispatch_mode"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("model.dispatch_mode: expected a string");
        spec.dispatch_mode = parse_dispatch_mode(it->get<std::string>());
    }
    const json& layers = field(doc, "layers", "model");
    if (!layers.is_array()) throw ParseError("model.layers: expected an array");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        spec.layers.push_back(parse_layer(layers[i], i));
    }
    require_valid(spec);
    return spec;
}

std::string save(const NetworkSpec& spec) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"name\": " << json(spec.name).dump() << ",\n";
    out << "  \"input_dim\": " << spec.input_dim << ",\n";
    out << "  \"threshold\": " << shortest_float(spec.threshold) << ",\n";
    out << "  \"dispatch_mode\": \"" << to_string(spec.dispatch_mode) << "\",\n";
    out << "  \"layers\": [";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& layer = spec.layers[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\n";
        out << "      \"units\": " << layer.units << ",\n";
        out << "      \"activation\": \"" << to_string(layer.activation.kind) << "\",\n";
        out << "      \"alpha\": " << shortest_float(layer.activation.alpha) << ",\n";
        out << "      \"weights\": [\n";
        for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
            out << "        ";
            write_numbers(out, layer.weights.row(r));
            out << (r + 1 < layer.weights.rows() ? ",\n" : "\n");
        }
        out << "      ],\n";
        out << "      \"biases\": ";
        write_numbers(out, layer.biases);
        out << "\n    }";
    }
    out << (spec.layers.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

NetworkSpec load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read model file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load(buffer.str());
}

NetworkSpec load_model(const std::string& name_or_path) {
    if (is_builtin(name_or_path)) return builtin(name_or_path);
    return load_file(name_or_path);
}

}  // namespace tinydense
