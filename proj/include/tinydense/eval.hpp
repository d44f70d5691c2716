#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tinydense/linalg.hpp"
#include "tinydense/network.hpp"

namespace tinydense {

/// Binary Iris task: label 0 = Versicolor, label 1 = Virginica (the positive class).
struct LabeledDataset {
    std::string name;
    Matrix features{1, 1};
    std::vector<int> labels;

    std::size_t size() const noexcept { return labels.size(); }
};

/// Features with labels present only when every row carried one.
struct FeatureTable {
    Matrix features{1, 1};
    std::optional<std::vector<int>> labels;
};

/// Rows of N decimal features followed by a label ("0"/"1" or, case-insensitively,
/// "versicolor"/"virginica"). A non-numeric first row is taken as a header. Every
/// row must have the same width. Errors name the 1-based line.
LabeledDataset load_csv(std::string_view text, std::string name = "dataset");
LabeledDataset load_csv_file(const std::string& path);

/// Like load_csv but the label column is optional: rows carry either
/// `feature_count` or `feature_count + 1` fields. Any other width is a ShapeError.
FeatureTable load_features_csv(std::string_view text, std::size_t feature_count);

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fn_ = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fn_ + fp + tn; }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> actual, std::span<const int> predicted);
/// (tp + tn) / total; throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

enum class Scaling { none, minmax, standard };

std::string_view to_string(Scaling scaling);
Scaling parse_scaling(std::string_view text);

/// Per-feature affine map x' = (x - offset) / scale.
struct ScalingParams {
    Scaling mode = Scaling::none;
    Vector offset;
    Vector scale;
};

/// Derives parameters from `features` itself. Constant columns get scale 1.
/// minmax uses the column range; standard uses the population standard deviation.
ScalingParams fit_scaling(const Matrix& features, Scaling mode);
Matrix apply_scaling(const Matrix& features, const ScalingParams& params);

struct EvaluationReport {
    std::string model;
    std::string dataset;
    DispatchMode dispatch_mode = DispatchMode::corrected;
    double threshold = 0.5;
    ScalingParams scaling;
    ConfusionMatrix confusion;
    double accuracy = 0.0;
};

inline constexpr std::string_view kPositiveClass = "virginica";

EvaluationReport evaluate(const NetworkSpec& spec, const LabeledDataset& data,
                          Scaling scaling = Scaling::none);
EvaluationReport evaluate(const NetworkSpec& spec, const LabeledDataset& data, Scaling scaling,
                          DispatchMode mode);

/// Same JSON style as model documents.
std::string to_json(const EvaluationReport& report);

/// The 2x2 scoreboard (actual rows, predicted columns) followed by "Accuracy: xx.x%".
std::string format_report(const EvaluationReport& report);

}  // namespace tinydense
