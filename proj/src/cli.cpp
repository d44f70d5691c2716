#include "tinydense/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tinydense/codegen.hpp"
#include "tinydense/error.hpp"
#include "tinydense/eval.hpp"
#include "tinydense/float_text.hpp"
#include "tinydense/inference.hpp"

namespace tinydense::cli {

namespace {

struct DataFlags {
    std::string model;
    std::string data;
    std::string scaling = "none";
    std::string mode;
    std::optional<double> threshold;
    bool json = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Model with --threshold applied; returns the dispatch mode to run under.
DispatchMode prepare(NetworkSpec& spec, const DataFlags& flags) {
    if (flags.threshold) {
        spec.threshold = *flags.threshold;
        require_valid(spec);
    }
    return flags.mode.empty() ? spec.dispatch_mode : parse_dispatch_mode(flags.mode);
}

int cmd_describe(const std::string& model, bool json, std::ostream& out) {
    const NetworkSpec spec = load_model(model);
    out << (json ? to_json(model_card(spec)) : emit_model_card(spec));
    return kOk;
}

int cmd_predict(const DataFlags& flags, std::ostream& out) {
    NetworkSpec spec = load_model(flags.model);
    const DispatchMode mode = prepare(spec, flags);
    const FeatureTable table = load_features_csv(read_file(flags.data), spec.input_dim);
    const ScalingParams scaling = fit_scaling(table.features, parse_scaling(flags.scaling));
    const LayerOutput probabilities = forward(spec, apply_scaling(table.features, scaling), mode);
    if (probabilities.rows() != 1) {
        throw ShapeError("predict needs a single-unit output layer");
    }
    const auto labels = threshold_labels(probabilities.row(0), spec.threshold);

    if (flags.json) {
        std::ostringstream doc;
        doc << "{\n  \"model\": " << nlohmann::json(spec.name).dump() << ",\n";
        doc << "  \"dispatch_mode\": \"" << to_string(mode) << "\",\n";
        doc << "  \"scaling\": \"" << to_string(scaling.mode) << "\",\n";
        doc << "  \"threshold\": " << shortest_float(spec.threshold) << ",\n";
        doc << "  \"predictions\": [";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            doc << (i == 0 ? "\n" : ",\n") << "    {\"probability\": "
                << shortest_float(probabilities(0, i)) << ", \"label\": " << labels[i] << "}";
        }
        doc << "\n  ]\n}\n";
        out << doc.str();
        return kOk;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << shortest_float(probabilities(0, i)) << ' ' << labels[i] << '\n';
    }
    return kOk;
}

int cmd_evaluate(const DataFlags& flags, std::ostream& out) {
    NetworkSpec spec = load_model(flags.model);
    const DispatchMode mode = prepare(spec, flags);
    FeatureTable table = load_features_csv(read_file(flags.data), spec.input_dim);
    if (!table.labels) throw ParseError("evaluate needs a label column on every row");
    const LabeledDataset data{flags.data, std::move(table.features), std::move(*table.labels)};
    const EvaluationReport report = evaluate(spec, data, parse_scaling(flags.scaling), mode);
    out << (flags.json ? to_json(report) : format_report(report));
    return kOk;
}

int cmd_emit(const std::string& model, const std::string& path, const std::string& data_path,
             EmitOptions options, std::ostream& out) {
    const NetworkSpec spec = load_model(model);
    if (!data_path.empty()) {
        FeatureTable table = load_features_csv(read_file(data_path), spec.input_dim);
        options.data = EmbeddedData{std::move(table.features), std::move(table.labels)};
    }
    const std::string program = emit_micropython(spec, options);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open \"" + path + "\" for writing");
    file << program;
    file.close();
    if (!file) throw IoError("failed writing \"" + path + "\"");
    out << "wrote " << program.size() << " bytes to " << path << '\n';
    return kOk;
}

int cmd_selftest(const Hooks& hooks, std::ostream& out, std::ostream& err) {
    const SelftestResult result = run_selftest(hooks.builtins);
    for (const auto& line : result.lines) out << line << '\n';
    if (!result.ok) {
        err << "selftest failed: " << result.failed_check << ": " << result.detail << '\n';
        return kSelftestFailed;
    }
    out << "selftest passed\n";
    return kOk;
}

void add_data_flags(CLI::App& cmd, DataFlags& flags) {
    cmd.add_option("model", flags.model, "Built-in name (iris-8, iris-6) or model file")
        ->required();
    cmd.add_option("data", flags.data, "CSV file of samples")->required();
    cmd.add_option("--scaling", flags.scaling, "Feature scaling fitted on the data")
        ->check(CLI::IsMember({"none", "minmax", "standard"}));
    cmd.add_option("--mode", flags.mode,
                   "Activation dispatch (default: the model's own dispatch_mode)")
        ->check(CLI::IsMember({"paper-compat", "paper_compat", "corrected"}));
    cmd.add_option("--threshold", flags.threshold, "Decision threshold in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_flag("--json", flags.json, "Machine-readable output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
    CLI::App app{"Dense neural-network inference and MicroPython deployment", "tinydense"};
    app.require_subcommand(1);

    std::string describe_model;
    bool describe_json = false;
    auto* describe = app.add_subcommand("describe", "Print a model card");
    describe->add_option("model", describe_model, "Built-in name or model file")->required();
    describe->add_flag("--json", describe_json, "Machine-readable output");

    DataFlags predict_flags;
    auto* predict = app.add_subcommand("predict", "Print probability and label per sample");
    add_data_flags(*predict, predict_flags);

    DataFlags evaluate_flags;
    auto* evaluate = app.add_subcommand("evaluate", "Confusion matrix and accuracy");
    add_data_flags(*evaluate, evaluate_flags);

    std::string emit_model;
    std::string emit_out;
    std::string emit_data;
    EmitOptions emit_options;
    auto* emit = app.add_subcommand("emit", "Write a standalone MicroPython program");
    emit->add_option("model", emit_model, "Built-in name or model file")->required();
    emit->add_option("--out,-o", emit_out, "Output file")->required();
    emit->add_flag("--compat", emit_options.compat, "Reproduce the original activation code");
    emit->add_flag("--include-eval", emit_options.include_eval,
                   "Add confusion-matrix and accuracy code");
    emit->add_option("--data", emit_data, "CSV of samples to embed as Xtest/ytest");

    auto* selftest = app.add_subcommand("selftest", "Run built-in invariant checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*describe) return cmd_describe(describe_model, describe_json, out);
        if (*predict) return cmd_predict(predict_flags, out);
        if (*evaluate) return cmd_evaluate(evaluate_flags, out);
        if (*emit) return cmd_emit(emit_model, emit_out, emit_data, emit_options, out);
        if (*selftest) return cmd_selftest(hooks, out, err);
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << '\n';
        return kDimensionMismatch;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace tinydense::cli
