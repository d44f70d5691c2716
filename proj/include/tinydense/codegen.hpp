#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tinydense/linalg.hpp"
#include "tinydense/network.hpp"

namespace tinydense {

struct EmbeddedData {
    Matrix features{1, 1};
    std::optional<std::vector<int>> labels;
};

struct EmitOptions {
    /// Reproduce the original MicroPython activation code and dispatcher verbatim
    /// (softmax -> tanh, leaky_relu -> relu). Otherwise emit numerically stable
    /// functions with layer-wide softmax.
    bool compat = false;
    /// Add confusion-matrix and accuracy helpers; they run on `data` when it has labels.
    bool include_eval = false;
    /// Samples written into the program as `Xtest` (and `ytest`), followed by a run block.
    std::optional<EmbeddedData> data;
};

/// A standalone MicroPython program that needs nothing beyond `math`. Definitions are
/// ordered: math basics, activations, neuron, dense, weights, pipeline, evaluation,
/// embedded data. The output is LF-terminated and depends only on its inputs.
/// `predict(Xtest)` matches forward() under the dispatch mode the options select.
std::string emit_micropython(const NetworkSpec& spec, const EmitOptions& options = {});

/// The dispatch mode whose semantics a program emitted with `options` follows.
DispatchMode emitted_dispatch_mode(const EmitOptions& options);

struct MemoryBudget {
    std::string device;
    std::size_t sram_bytes;
};

/// SRAM of the Raspberry Pi Pico (RP2040, 264 KB) and Pico 2 (RP2350, 520 KB).
const std::vector<MemoryBudget>& pico_budgets();

struct ModelCard {
    std::string name;
    DispatchMode dispatch_mode = DispatchMode::corrected;
    std::vector<std::size_t> widths;
    std::vector<std::string> activations;
    std::size_t neurons = 0;
    std::size_t weights = 0;
    std::size_t biases = 0;

    std::size_t parameters() const noexcept { return weights + biases; }
    std::size_t bytes_binary64() const noexcept { return parameters() * 8; }
    std::size_t bytes_binary32() const noexcept { return parameters() * 4; }
};

ModelCard model_card(const NetworkSpec& spec);
std::string emit_model_card(const NetworkSpec& spec);
std::string to_json(const ModelCard& card);

}  // namespace tinydense
