#include "tinydense/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "tinydense/activations.hpp"
#include "tinydense/inference.hpp"

namespace tinydense {

namespace {

struct CheckFailure {
    std::string detail;
};

void expect(bool condition, const std::string& detail) {
    if (!condition) throw CheckFailure{detail};
}

void check_widths(const BuiltinSource& source) {
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> expected{
        {"iris-8", {4, 2, 3, 2, 1}}, {"iris-6", {4, 3, 2, 1}}};
    for (const auto& [name, widths] : expected) {
        const NetworkSpec spec = source(name);
        const auto report = validate(spec);
        expect(report.ok(), name + ": " + report.describe());
        expect(spec.widths() == widths, name + ": unexpected layer widths");
    }
}

void check_constants(const BuiltinSource& source) {
    struct Spot {
        const char* model;
        std::size_t layer;
        bool bias;
        std::size_t row, col;
        double value;
    };
    // First and last printed literal of each weight table.
    constexpr Spot spots[] = {
        {"iris-8", 0, false, 0, 0, -0.75323504},
        {"iris-8", 3, true, 0, 0, -1.2177287},
        {"iris-6", 0, false, 0, 0, 0.50914556},
        {"iris-6", 2, true, 0, 0, 0.4316521},
    };
    for (const Spot& s : spots) {
        const NetworkSpec spec = source(s.model);
        expect(s.layer < spec.layers.size(), std::string(s.model) + ": missing layer");
        const LayerSpec& layer = spec.layers[s.layer];
        const double actual = s.bias ? layer.biases.at(s.col) : layer.weights.at(s.row, s.col);
        std::ostringstream msg;
        msg.precision(17);
        msg << s.model << " layer " << s.layer << (s.bias ? " bias" : " weight") << " is "
            << actual << ", expected " << s.value;
        expect(actual == s.value, msg.str());
    }
}

void check_activation_identities() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-500.0, 500.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(rng);
        const double s = sigmoid(x) + sigmoid(-x);
        expect(std::fabs(s - 1.0) <= 1e-12, "sigmoid(x) + sigmoid(-x) != 1 at x=" + std::to_string(x));
        expect(std::fabs(tanh(x) - (2.0 * sigmoid(2.0 * x) - 1.0)) <= 1e-12,
               "tanh(x) != 2 sigmoid(2x) - 1 at x=" + std::to_string(x));
    }
    for (int i = 0; i < 200; ++i) {
        Vector v(5);
        for (double& x : v) x = dist(rng);
        const Vector p = softmax(v);
        double total = 0.0;
        for (double x : p) total += x;
        expect(std::fabs(total - 1.0) <= 1e-12, "softmax does not sum to 1");
    }
}

// Per-sample evaluation with explicit loops, kept apart from the batched engine.
Vector reference_forward(const NetworkSpec& spec, std::span<const double> sample) {
    Vector values(sample.begin(), sample.end());
    for (const LayerSpec& layer : spec.layers) {
        Vector z(layer.units);
        for (std::size_t u = 0; u < layer.units; ++u) {
            double sum = 0.0;
            for (std::size_t k = 0; k < values.size(); ++k) sum += layer.weights(k, u) * values[k];
            z[u] = sum + layer.biases[u];
        }
        values = tinydense::apply(layer.activation, z);
    }
    return values;
}

NetworkSpec random_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> width(1, 5);
    std::uniform_int_distribution<std::size_t> depth(1, 3);
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_real_distribution<double> weight(-3.0, 3.0);
    NetworkSpec spec;
    spec.name = "selftest";
    spec.input_dim = width(rng);
    std::size_t previous = spec.input_dim;
    const std::size_t layers = depth(rng);
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t units = width(rng);
        Matrix w(previous, units);
        for (std::size_t r = 0; r < previous; ++r) {
            for (std::size_t c = 0; c < units; ++c) w(r, c) = weight(rng);
        }
        Vector b(units);
        for (double& x : b) x = weight(rng);
        spec.layers.push_back({units, std::move(w), std::move(b),
                               ActivationKind{static_cast<Activation>(kind(rng)), 0.1}});
        previous = units;
    }
    return spec;
}

void check_oracle_equivalence() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> input(-5.0, 5.0);
    for (int n = 0; n < 50; ++n) {
        const NetworkSpec spec = random_spec(rng);
        Matrix batch(4, spec.input_dim);
        for (std::size_t r = 0; r < batch.rows(); ++r) {
            for (std::size_t c = 0; c < batch.cols(); ++c) batch(r, c) = input(rng);
        }
        const LayerOutput out = forward(spec, batch, DispatchMode::corrected);
        for (std::size_t s = 0; s < batch.rows(); ++s) {
            const Vector expected = reference_forward(spec, batch.row(s));
            for (std::size_t u = 0; u < expected.size(); ++u) {
                expect(std::fabs(out(u, s) - expected[u]) <= 1e-9,
                       "forward differs from reference on random network " + std::to_string(n));
            }
        }
    }
}

void check_round_trip(const BuiltinSource& source) {
    for (const auto& name : builtin_names()) {
        const NetworkSpec spec = source(name);
        expect(load(save(spec)) == spec, name + ": save/load changed the model");
    }
}

}  // namespace

SelftestResult run_selftest(const BuiltinSource& source) {
    const std::vector<std::pair<std::string, std::function<void()>>> checks{
        {"builtin-widths", [&] { check_widths(source); }},
        {"builtin-constants", [&] { check_constants(source); }},
        {"activation-identities", check_activation_identities},
        {"oracle-equivalence", check_oracle_equivalence},
        {"serialization-round-trip", [&] { check_round_trip(source); }},
    };
    SelftestResult result;
    for (const auto& [name, run] : checks) {
        try {
            run();
            result.lines.push_back("PASS " + name);
        } catch (const CheckFailure& failure) {
            result.detail = failure.detail;
        } catch (const std::exception& e) {
            result.detail = e.what();
        }
        if (!result.detail.empty()) {
            result.ok = false;
            result.failed_check = name;
            result.lines.push_back("FAIL " + name + ": " + result.detail);
            break;
        }
    }
    return result;
}

}  // namespace tinydense
