#include "tinydense/inference.hpp"

#include <string>

#include "tinydense/error.hpp"

namespace tinydense {

ActivationKind effective_activation(const ActivationKind& kind, DispatchMode mode) {
    if (mode == DispatchMode::corrected) return kind;
    switch (kind.kind) {
        case Activation::softmax: return ActivationKind{Activation::tanh, kind.alpha};
        case Activation::leaky_relu: return ActivationKind{Activation::relu, kind.alpha};
        default: return kind;
    }
}

Vector pre_activation(const LayerOutput& x, std::span<const double> w, double b) {
    if (w.size() != x.rows()) {
        throw ShapeError("neuron has " + std::to_string(w.size()) + " weights but input has " +
                         std::to_string(x.rows()) + " features");
    }
    Vector z = zero_vector(x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) z[j] += w[i] * x(i, j);
    }
    for (double& v : z) v += b;
    return z;
}

Vector neuron(const LayerOutput& x, std::span<const double> w, double b,
              const ActivationKind& kind, DispatchMode mode) {
    const ActivationKind effective = effective_activation(kind, mode);
    if (effective.kind == Activation::softmax) {
        throw Error("softmax normalises across a layer's units; evaluate it with dense()");
    }
    return tinydense::apply(effective, pre_activation(x, w, b));
}

LayerOutput dense(std::size_t nunit, const LayerOutput& x, const Matrix& weights,
                  std::span<const double> biases, const ActivationKind& kind, DispatchMode mode) {
    if (weights.cols() != nunit || biases.size() != nunit) {
        throw ShapeError("dense layer of " + std::to_string(nunit) + " units got " +
                         std::to_string(weights.cols()) + " weight columns and " +
                         std::to_string(biases.size()) + " biases");
    }
    if (weights.rows() != x.rows()) {
        throw ShapeError("dense layer expects " + std::to_string(weights.rows()) +
                         " inputs, got " + std::to_string(x.rows()));
    }

    const ActivationKind effective = effective_activation(kind, mode);
    LayerOutput out(nunit, x.cols());
    if (effective.kind == Activation::softmax) {
        for (std::size_t i = 0; i < nunit; ++i) {
            const Vector z = pre_activation(x, weights.column(i), biases[i]);
            for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = z[j];
        }
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const Vector p = softmax(out.column(j));
            for (std::size_t i = 0; i < nunit; ++i) out(i, j) = p[i];
        }
        return out;
    }
    for (std::size_t i = 0; i < nunit; ++i) {
        const Vector y = neuron(x, weights.column(i), biases[i], effective, mode);
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = y[j];
    }
    return out;
}

LayerOutput forward(const NetworkSpec& spec, const Batch& batch) {
    return forward(spec, batch, spec.dispatch_mode);
}

LayerOutput forward(const NetworkSpec& spec, const Batch& batch, DispatchMode mode) {
    if (batch.cols() != spec.input_dim) {
        throw ShapeError("model \"" + spec.name + "\" expects " + std::to_string(spec.input_dim) +
                         " features per sample, batch has " + std::to_string(batch.cols()));
    }
    if (spec.layers.empty()) throw ShapeError("model \"" + spec.name + "\" has no layers");
    LayerOutput activations = transpose(batch);
    for (const LayerSpec& layer : spec.layers) {
        activations = dense(layer.units, activations, layer.weights, layer.biases,
                            layer.activation, mode);
    }
    return activations;
}

std::vector<int> threshold_labels(std::span<const double> probabilities, double threshold) {
    std::vector<int> labels;
    labels.reserve(probabilities.size());
    for (double p : probabilities) labels.push_back(p >= threshold ? 1 : 0);
    return labels;
}

std::vector<int> predict(const NetworkSpec& spec, const Batch& batch) {
    return predict(spec, batch, spec.dispatch_mode);
}

std::vector<int> predict(const NetworkSpec& spec, const Batch& batch, DispatchMode mode) {
    if (spec.layers.empty() || spec.layers.back().units != 1) {
        throw ShapeError("predict needs a single-unit output layer; multi-class output is not "
                         "supported");
    }
    const LayerOutput out = forward(spec, batch, mode);
    return threshold_labels(out.row(0), spec.threshold);
}

}  // namespace tinydense
