#pragma once

#include <span>
#include <string>
#include <string_view>

#include "tinydense/linalg.hpp"

namespace tinydense {

enum class Activation { sigmoid, relu, leaky_relu, tanh, softmax };

inline constexpr double kDefaultLeakyAlpha = 0.01;

/// An activation function plus its slope parameter (read by leaky_relu only).
struct ActivationKind {
    Activation kind = Activation::sigmoid;
    double alpha = kDefaultLeakyAlpha;

    friend bool operator==(const ActivationKind&, const ActivationKind&) = default;
};

/// Lowercase wire name: "sigmoid", "relu", "leaky_relu", "tanh", "softmax".
std::string_view to_string(Activation kind);
/// Throws UnknownActivationError for anything but the five wire names.
Activation parse_activation(std::string_view name);

/// Throws ShapeError if alpha is negative or not finite.
ActivationKind make_activation(Activation kind, double alpha = kDefaultLeakyAlpha);

double sigmoid(double x) noexcept;
double relu(double x) noexcept;
double leaky_relu(double x, double alpha) noexcept;
double tanh(double x) noexcept;

Vector sigmoid(std::span<const double> x);
Vector relu(std::span<const double> x);
Vector leaky_relu(std::span<const double> x, double alpha = kDefaultLeakyAlpha);
Vector tanh(std::span<const double> x);
/// Max-shifted softmax; throws ShapeError on an empty input.
Vector softmax(std::span<const double> x);

/// Applies the mathematically correct function named by `kind` to the whole vector.
Vector apply(const ActivationKind& kind, std::span<const double> x);

}  // namespace tinydense
