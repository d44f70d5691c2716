#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tinydense/activations.hpp"
#include "tinydense/linalg.hpp"
#include "tinydense/network.hpp"

namespace tinydense {

/// samples x input_dim, one row per sample, in the dataset's native units.
using Batch = Matrix;
/// units x samples: row i holds neuron i's output for every sample.
using LayerOutput = Matrix;

/// The function a layer's activation name actually runs under `mode`.
/// paper_compat maps softmax -> tanh and leaky_relu -> relu.
ActivationKind effective_activation(const ActivationKind& kind, DispatchMode mode);

/// Weighted sum plus bias for every sample: z_j = sum_i w_i * x[i][j] + b.
Vector pre_activation(const LayerOutput& x, std::span<const double> w, double b);

/// One neuron over the whole batch. In corrected mode softmax needs all units of
/// the layer, so it is rejected here; use `dense` for softmax layers.
Vector neuron(const LayerOutput& x, std::span<const double> w, double b,
              const ActivationKind& kind, DispatchMode mode);

/// A fully connected layer; neuron i reads column i of `weights`.
LayerOutput dense(std::size_t nunit, const LayerOutput& x, const Matrix& weights,
                  std::span<const double> biases, const ActivationKind& kind, DispatchMode mode);

/// Runs every layer in order under the spec's own dispatch mode; returns
/// final_units x samples.
LayerOutput forward(const NetworkSpec& spec, const Batch& batch);
LayerOutput forward(const NetworkSpec& spec, const Batch& batch, DispatchMode mode);

/// 1 where probability >= threshold, else 0.
std::vector<int> threshold_labels(std::span<const double> probabilities, double threshold);

/// Binary decisions for a single-output network. Throws ShapeError when the final
/// layer has more than one unit.
std::vector<int> predict(const NetworkSpec& spec, const Batch& batch);
std::vector<int> predict(const NetworkSpec& spec, const Batch& batch, DispatchMode mode);

}  // namespace tinydense
