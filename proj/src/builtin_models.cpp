// Pre-trained Iris Versicolor/Virginica classifiers. Constants are kept at exactly
// the printed precision; rows are inputs, columns are neurons.

#include <string>

#include "tinydense/error.hpp"
#include "tinydense/network.hpp"

namespace tinydense {

namespace {

LayerSpec layer(std::vector<std::vector<double>> weights, Vector biases, Activation kind) {
    Matrix w = Matrix::from_rows(weights);
    const std::size_t units = w.cols();
    return LayerSpec{units, std::move(w), std::move(biases), ActivationKind{kind}};
}

NetworkSpec iris8() {
    NetworkSpec spec;
    spec.name = "iris-8";
    spec.input_dim = 4;
    spec.dispatch_mode = DispatchMode::paper_compat;
    spec.layers = {
        layer({{-0.75323504, -0.25906014},
               {-0.46379513, -0.5019245},
               {2.1273055, 1.7724446},
               {1.1853403, 0.88468695}},
              {0.53405946, 0.32578036}, Activation::relu),
        layer({{-1.6785783, 2.0158117, 1.2769054},
               {-1.4055765, 0.6828738, 1.5902631}},
              {1.18362, -1.1555661, -1.0966455}, Activation::tanh),
        layer({{0.729278, -1.0240695},
               {-0.80972326, 1.4383037},
               {-0.90892404, 1.6760625}},
              {0.10695826, 0.01635581}, Activation::softmax),
        layer({{-0.2019448},
               {1.5772797}},
              {-1.2177287}, Activation::sigmoid),
    };
    return spec;
}

NetworkSpec iris6() {
    NetworkSpec spec;
    spec.name = "iris-6";
    spec.input_dim = 4;
    spec.dispatch_mode = DispatchMode::paper_compat;
    spec.layers = {
        layer({{0.50914556, -0.18116623, -0.04498423},
               {0.33949652, -0.42303845, -0.37400272},
               {-1.4968083, 1.2034143, 0.95544535},
               {-1.344156, 0.39220142, 1.2244085}},
              {0.83684736, 0.5311056, 0.7652087}, Activation::relu),
        layer({{-2.1645586, 1.3892978},
               {0.43439832, -1.8758974},
               {0.92036045, -1.5745732}},
              {0.9615521, 0.4445824}, Activation::sigmoid),
        layer({{1.6905344},
               {-2.6346245}},
              {0.4316521}, Activation::sigmoid),
    };
    return spec;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"iris-8", "iris-6"}; }

bool is_builtin(std::string_view name) { return name == "iris-8" || name == "iris-6"; }

NetworkSpec builtin(std::string_view name) {
    if (name == "iris-8") return iris8();
    if (name == "iris-6") return iris6();
    throw UnknownModelError("unknown built-in model \"" + std::string(name) +
                            "\" (expected iris-8 or iris-6)");
}

}  // namespace tinydense
