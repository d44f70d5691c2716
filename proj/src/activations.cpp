#include "tinydense/activations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tinydense/error.hpp"

namespace tinydense {

namespace {

template <typename F>
Vector map(std::span<const double> x, F f) {
    Vector out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), f);
    return out;
}

}  // namespace

std::string_view to_string(Activation kind) {
    switch (kind) {
        case Activation::sigmoid: return "sigmoid";
        case Activation::relu: return "relu";
        case Activation::leaky_relu: return "leaky_relu";
        case Activation::tanh: return "tanh";
        case Activation::softmax: return "softmax";
    }
    return "unknown";
}

Activation parse_activation(std::string_view name) {
    for (auto kind : {Activation::sigmoid, Activation::relu, Activation::leaky_relu,
                      Activation::tanh, Activation::softmax}) {
        if (name == to_string(kind)) return kind;
    }
    throw UnknownActivationError("unknown activation \"" + std::string(name) + "\"");
}

ActivationKind make_activation(Activation kind, double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw ShapeError("leaky_relu alpha must be finite and >= 0, got " +
                         std::to_string(alpha));
    }
    return ActivationKind{kind, alpha};
}

double sigmoid(double x) noexcept {
    // Only ever exponentiate a non-positive number.
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double relu(double x) noexcept { return x >= 0.0 ? x : 0.0; }

double leaky_relu(double x, double alpha) noexcept { return x >= 0.0 ? x : alpha * x; }

double tanh(double x) noexcept { return std::tanh(x); }

Vector sigmoid(std::span<const double> x) { return map(x, [](double v) { return sigmoid(v); }); }

Vector relu(std::span<const double> x) { return map(x, [](double v) { return relu(v); }); }

Vector leaky_relu(std::span<const double> x, double alpha) {
    make_activation(Activation::leaky_relu, alpha);
    return map(x, [alpha](double v) { return leaky_relu(v, alpha); });
}

Vector tanh(std::span<const double> x) { return map(x, [](double v) { return tanh(v); }); }

Vector softmax(std::span<const double> x) {
    if (x.empty()) throw ShapeError("softmax of an empty vector");
    const double peak = *std::max_element(x.begin(), x.end());
    Vector out = map(x, [peak](double v) { return std::exp(v - peak); });
    double total = 0.0;
    for (double v : out) total += v;
    for (double& v : out) v /= total;
    return out;
}

Vector apply(const ActivationKind& kind, std::span<const double> x) {
    switch (kind.kind) {
        case Activation::sigmoid: return sigmoid(x);
        case Activation::relu: return relu(x);
        case Activation::leaky_relu: return leaky_relu(x, kind.alpha);
        case Activation::tanh: return tanh(x);
        case Activation::softmax: return softmax(x);
    }
    throw UnknownActivationError("Function unknown!");
}

}  // namespace tinydense
