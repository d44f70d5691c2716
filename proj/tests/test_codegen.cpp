#include <doctest.h>

#include <cmath>
#include <random>
#include <regex>

#include "support/oracle.hpp"
#include "tinydense/codegen.hpp"
#include "tinydense/eval.hpp"
#include "tinydense/float_text.hpp"
#include "tinydense/inference.hpp"

using namespace tinydense;

namespace {

std::vector<double> emitted_outputs(const NetworkSpec& spec, const EmitOptions& options,
                                    const Matrix& batch, const std::string& tag) {
    const auto path = testing::scratch_dir("codegen") / (tag + ".py");
    testing::write_text(path, emit_micropython(spec, options));
    return testing::run_emitted_predict(path, batch);
}

void check_matches_engine(const NetworkSpec& spec, const EmitOptions& options, const Matrix& batch,
                          const std::string& tag) {
    const Matrix expected = forward(spec, batch, emitted_dispatch_mode(options));
    const auto actual = emitted_outputs(spec, options, batch, tag);
    REQUIRE(actual.size() == expected.data().size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        CHECK(std::fabs(actual[i] - expected.data()[i]) <= 1e-9);
    }
}

Matrix fixture_batch() {
    return Matrix::from_rows({{7.0, 3.2, 4.7, 1.4},
                              {5.7, 2.8, 4.1, 1.3},
                              {6.3, 3.3, 6.0, 2.5},
                              {4.9, 2.5, 4.5, 1.7},
                              {7.7, 3.0, 6.1, 2.3}});
}

}  // namespace

TEST_CASE("pipeline reads like the hand-written MicroPython") {
    const std::string six = emit_micropython(builtin("iris-6"));
    CHECK(six.find("yout1 = dense(3, transpose(Xtest), w1, b1, 'relu')") != std::string::npos);
    CHECK(six.find("yout2 = dense(2, yout1, w2, b2, 'sigmoid')") != std::string::npos);
    CHECK(six.find("ypred = dense(1, yout2, w3, b3, 'sigmoid')") != std::string::npos);
    CHECK(six.find("b3 = [0.4316521]") != std::string::npos);

    const std::string eight = emit_micropython(builtin("iris-8"));
    const std::regex call(R"(= dense\((\d+), )");
    std::vector<std::string> units;
    for (auto it = std::sregex_iterator(eight.begin(), eight.end(), call);
         it != std::sregex_iterator(); ++it) {
        units.push_back((*it)[1]);
    }
    CHECK(units == std::vector<std::string>{"2", "3", "2", "1"});
    CHECK(eight.find("w1 = [[-0.75323504, -0.25906014],\n      [-0.46379513, -0.5019245],") !=
          std::string::npos);
}

TEST_CASE("only math is imported") {
    for (bool compat : {false, true}) {
        EmitOptions options;
        options.compat = compat;
        options.include_eval = true;
        const std::string program = emit_micropython(builtin("iris-8"), options);
        const std::regex import_line(R"((^|\n)\s*(import|from)\s+(\w+))");
        for (auto it = std::sregex_iterator(program.begin(), program.end(), import_line);
             it != std::sregex_iterator(); ++it) {
            CHECK((*it)[3] == "math");
        }
        CHECK(program.find('\r') == std::string::npos);
    }
}

TEST_CASE("compat mode keeps the original dispatcher") {
    EmitOptions options;
    options.compat = true;
    const std::string program = emit_micropython(builtin("iris-8"), options);
    CHECK(program.find("elif activation == \"softmax\":\n        yp = tanh(") != std::string::npos);
    CHECK(program.find("elif activation == \"leaky_relu\":\n        yp = relu(") !=
          std::string::npos);
    CHECK(program.find("print(\"Function unknown!\")") != std::string::npos);
    CHECK(program.find("# Activation dispatch: paper_compat") != std::string::npos);
}

TEST_CASE("emission is deterministic") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 10; ++n) {
        const NetworkSpec spec = testing::random_spec(rng);
        EmitOptions options;
        options.compat = n % 2 == 0;
        options.include_eval = n % 3 == 0;
        CHECK(emit_micropython(spec, options) == emit_micropython(spec, options));
    }
}

TEST_CASE("weight literals parse back bit-identically") {
    std::mt19937_64 rng(32);
    for (int n = 0; n < 20; ++n) {
        NetworkSpec spec = testing::random_spec(rng);
        const std::string program = emit_micropython(spec);
        for (std::size_t l = 0; l < spec.layers.size(); ++l) {
            for (double w : spec.layers[l].weights.data()) {
                CHECK(program.find(python_float_repr(w)) != std::string::npos);
                CHECK(std::strtod(python_float_repr(w).c_str(), nullptr) == w);
            }
        }
    }
}

TEST_CASE("emitted program reproduces the engine") {
    const Matrix batch = fixture_batch();
    for (const auto& name : builtin_names()) {
        for (bool compat : {false, true}) {
            EmitOptions options;
            options.compat = compat;
            check_matches_engine(builtin(name), options, batch,
                                 name + (compat ? "_compat" : "_stable"));
        }
    }
}

TEST_CASE("leaky_relu alpha and softmax layers survive emission") {
    NetworkSpec spec;
    spec.name = "leaky";
    spec.input_dim = 2;
    spec.layers.push_back({3, Matrix::from_rows({{1, -2, 0.5}, {-1, 1, 2}}), Vector{0.1, -0.2, 0},
                           {Activation::leaky_relu, 0.2}});
    spec.layers.push_back({2, Matrix::from_rows({{1, -1}, {2, 0.5}, {-1, 1}}), Vector{0, 0},
                           {Activation::softmax}});
    const Matrix batch = Matrix::from_rows({{1, 2}, {-3, 0.5}, {0, 0}});
    check_matches_engine(spec, EmitOptions{}, batch, "leaky_stable");
    EmitOptions compat;
    compat.compat = true;
    check_matches_engine(spec, compat, batch, "leaky_compat");
}

TEST_CASE("embedded data runs standalone") {
    const LabeledDataset data = load_csv(
        "7.0,3.2,4.7,1.4,versicolor\n6.3,3.3,6.0,2.5,virginica\n5.8,2.7,5.1,1.9,virginica\n");
    EmitOptions options;
    options.include_eval = true;
    options.data = EmbeddedData{data.features, data.labels};
    const auto path = testing::scratch_dir("codegen") / "embedded.py";
    testing::write_text(path, emit_micropython(builtin("iris-6"), options));
    const auto result = testing::run_command(testing::python_executable() + " " + path.string());
    REQUIRE(result.status == 0);
    CHECK(result.output.find("Actual Positive") != std::string::npos);
    CHECK(result.output.find("Accuracy: ") != std::string::npos);
    // print_matrix output: one row of three rounded probabilities.
    CHECK(result.output.rfind("[0.", 0) == 0);
}

TEST_CASE("model card") {
    const ModelCard eight = model_card(builtin("iris-8"));
    CHECK(eight.neurons == 8);
    CHECK(eight.weights == 4 * 2 + 2 * 3 + 3 * 2 + 2 * 1);
    CHECK(eight.biases == 8);
    CHECK(eight.parameters() == 30);
    CHECK(eight.bytes_binary64() == 240);
    CHECK(eight.bytes_binary32() == 120);

    const ModelCard six = model_card(builtin("iris-6"));
    CHECK(six.neurons == 6);
    CHECK(six.widths.size() - 1 == 3);
    CHECK(six.parameters() == 4 * 3 + 3 * 2 + 2 * 1 + 6);

    std::mt19937_64 rng(33);
    for (int n = 0; n < 20; ++n) {
        const ModelCard card = model_card(testing::random_spec(rng));
        CHECK(card.bytes_binary64() == card.parameters() * 8);
        CHECK(card.bytes_binary32() == card.parameters() * 4);
    }

    const std::string text = emit_model_card(builtin("iris-6"));
    CHECK(text.find("Layers: 3") != std::string::npos);
    CHECK(text.find("Layer widths: 4 -> 3 -> 2 -> 1") != std::string::npos);
    CHECK(text.find("Neurons: 6") != std::string::npos);
    CHECK(text.find("264 KB SRAM") != std::string::npos);
    CHECK(text.find("520 KB SRAM") != std::string::npos);
    CHECK(to_json(eight).find("\"parameters\": 30") != std::string::npos);
}
