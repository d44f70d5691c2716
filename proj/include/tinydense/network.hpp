#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tinydense/activations.hpp"
#include "tinydense/linalg.hpp"

namespace tinydense {

/// How `neuron` routes activation names.
///   corrected    - every name runs its own function; softmax spans the layer's units.
///   paper_compat - the original MicroPython dispatcher: "softmax" runs tanh and
///                  "leaky_relu" runs relu.
enum class DispatchMode { corrected, paper_compat };

std::string_view to_string(DispatchMode mode);
/// Accepts "corrected", "paper_compat" and "paper-compat".
DispatchMode parse_dispatch_mode(std::string_view text);

/// One fully connected layer. `weights` is input_dim x units, so column i holds the
/// incoming weights of neuron i.
struct LayerSpec {
    std::size_t units = 0;
    Matrix weights{1, 1};
    Vector biases;
    ActivationKind activation;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct NetworkSpec {
    std::string name;
    std::size_t input_dim = 0;
    std::vector<LayerSpec> layers;
    double threshold = 0.5;
    DispatchMode dispatch_mode = DispatchMode::corrected;

    std::vector<std::size_t> widths() const;

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct Violation {
    std::optional<std::size_t> layer;
    std::string field;
    std::string expected;
    std::string actual;

    std::string describe() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::string describe() const;
};

ValidationReport validate(const NetworkSpec& spec);

/// Throws ValidationError carrying the report text when `spec` is invalid.
void require_valid(const NetworkSpec& spec);

std::vector<std::string> builtin_names();
/// "iris-8" or "iris-6"; throws UnknownModelError otherwise.
NetworkSpec builtin(std::string_view name);
bool is_builtin(std::string_view name);

/// Parses and validates a model document. Throws ParseError (with line and column),
/// UnknownActivationError or ValidationError.
NetworkSpec load(std::string_view text);

/// Canonical model document. load(save(s)) == s with bit-identical weights and
/// save(load(save(s))) == save(s).
std::string save(const NetworkSpec& spec);

NetworkSpec load_file(const std::string& path);
/// Resolves a built-in name first, then falls back to reading a model file.
NetworkSpec load_model(const std::string& name_or_path);

}  // namespace tinydense
