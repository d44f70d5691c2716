#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracle.hpp"
#include "tinydense/error.hpp"
#include "tinydense/inference.hpp"

using namespace tinydense;

TEST_CASE("neuron") {
    const Matrix x = Matrix::from_rows({{1, -2}, {0, 3}});
    CHECK(neuron(x, Vector{1, 1}, 0.0, {Activation::relu}, DispatchMode::corrected) ==
          Vector{1, 1});

    std::mt19937_64 rng(8);
    const Matrix any = transpose(testing::random_batch(rng, 6, 3));
    for (double y : neuron(any, Vector{0, 0, 0}, 0.0, {Activation::sigmoid},
                           DispatchMode::corrected)) {
        CHECK(y == 0.5);
    }

    CHECK_THROWS_AS(neuron(x, Vector{1}, 0.0, {Activation::relu}, DispatchMode::corrected),
                    ShapeError);
    CHECK_THROWS_AS(neuron(x, Vector{1, 1}, 0.0, {Activation::softmax}, DispatchMode::corrected),
                    Error);
}

TEST_CASE("paper-compat dispatch substitutes softmax and leaky_relu") {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 20; ++n) {
        const Matrix x = transpose(testing::random_batch(rng, 5, 3));
        const Vector w = testing::random_batch(rng, 1, 3).to_rows()[0];
        const double b = 0.3;
        CHECK(neuron(x, w, b, {Activation::softmax}, DispatchMode::paper_compat) ==
              neuron(x, w, b, {Activation::tanh}, DispatchMode::corrected));
        CHECK(neuron(x, w, b, {Activation::leaky_relu, 0.2}, DispatchMode::paper_compat) ==
              neuron(x, w, b, {Activation::relu}, DispatchMode::corrected));
    }
}

TEST_CASE("dense") {
    const Matrix identity = Matrix::from_rows({{1, 0}, {0, 1}});
    CHECK(dense(2, identity, identity, Vector{0, 0}, {Activation::relu},
                DispatchMode::corrected) == identity);

    const Matrix out = dense(1, Matrix::from_rows({{2}, {3}}), Matrix::from_rows({{0.5}, {0.5}}),
                             Vector{-2.5}, {Activation::sigmoid}, DispatchMode::corrected);
    CHECK(out == Matrix::from_rows({{0.5}}));

    CHECK_THROWS_AS(dense(3, identity, identity, Vector{0, 0}, {Activation::relu},
                          DispatchMode::corrected),
                    ShapeError);
    CHECK_THROWS_AS(dense(2, Matrix(3, 1), identity, Vector{0, 0}, {Activation::relu},
                          DispatchMode::corrected),
                    ShapeError);
}

TEST_CASE("dense first layer matches a naive matmul") {
    const NetworkSpec spec = builtin("iris-8");
    const LayerSpec& layer = spec.layers[0];
    std::mt19937_64 rng(10);
    const Matrix batch = testing::random_batch(rng, 12, 4, 8.0);
    const Matrix out = dense(2, transpose(batch), layer.weights, layer.biases, layer.activation,
                             DispatchMode::paper_compat);
    for (std::size_t s = 0; s < 12; ++s) {
        for (std::size_t u = 0; u < 2; ++u) {
            double z = layer.biases[u];
            for (std::size_t k = 0; k < 4; ++k) z += batch(s, k) * layer.weights(k, u);
            CHECK(std::fabs(out(u, s) - std::max(z, 0.0)) <= 1e-12);
        }
    }
}

TEST_CASE("corrected softmax spans units per sample") {
    const Matrix x = Matrix::from_rows({{1, 2}, {3, -1}});
    const Matrix w = Matrix::from_rows({{1, 0, 2}, {0, 1, -1}});
    const Matrix out = dense(3, x, w, Vector{0, 0, 0}, {Activation::softmax},
                             DispatchMode::corrected);
    for (std::size_t s = 0; s < 2; ++s) {
        const Vector z{x(0, s), x(1, s), 2 * x(0, s) - x(1, s)};
        const Vector p = softmax(z);
        double total = 0;
        for (std::size_t u = 0; u < 3; ++u) {
            CHECK(out(u, s) == doctest::Approx(p[u]).epsilon(1e-15));
            total += out(u, s);
        }
        CHECK(total == doctest::Approx(1.0));
    }
}

TEST_CASE("forward iris-6 on one sample") {
    const NetworkSpec spec = builtin("iris-6");
    const Matrix batch = Matrix::from_rows({{5.0, 3.0, 4.0, 1.0}});
    const Matrix out = forward(spec, batch);
    REQUIRE(out.rows() == 1);
    REQUIRE(out.cols() == 1);

    // Hand-unrolled three layers.
    const double h1[3] = {
        std::max(0.0, 5 * 0.50914556 + 3 * 0.33949652 + 4 * -1.4968083 + 1 * -1.344156 + 0.83684736),
        std::max(0.0, 5 * -0.18116623 + 3 * -0.42303845 + 4 * 1.2034143 + 1 * 0.39220142 + 0.5311056),
        std::max(0.0, 5 * -0.04498423 + 3 * -0.37400272 + 4 * 0.95544535 + 1 * 1.2244085 + 0.7652087)};
    auto sig = [](double z) { return 1 / (1 + std::exp(-z)); };
    const double h2a = sig(h1[0] * -2.1645586 + h1[1] * 0.43439832 + h1[2] * 0.92036045 + 0.9615521);
    const double h2b = sig(h1[0] * 1.3892978 + h1[1] * -1.8758974 + h1[2] * -1.5745732 + 0.4445824);
    const double y = sig(h2a * 1.6905344 + h2b * -2.6346245 + 0.4316521);
    CHECK(std::fabs(out(0, 0) - y) <= 1e-12);
    // 40-digit reference evaluation.
    CHECK(std::fabs(out(0, 0) - 0.89282482933558702) <= 1e-12);
}

TEST_CASE("forward rejects mismatched batches") {
    CHECK_THROWS_AS(forward(builtin("iris-8"), Matrix(2, 3)), ShapeError);
}

TEST_CASE("identical rows give identical outputs") {
    for (const auto& name : builtin_names()) {
        const NetworkSpec spec = builtin(name);
        Matrix batch(7, 4);
        for (std::size_t r = 0; r < 7; ++r) {
            batch(r, 0) = 6.1;
            batch(r, 1) = 2.8;
            batch(r, 2) = 4.9;
            batch(r, 3) = 1.7;
        }
        const Matrix out = forward(spec, batch);
        CHECK(out.rows() == 1);
        for (std::size_t s = 1; s < 7; ++s) CHECK(out(0, s) == out(0, 0));
        for (std::size_t s = 0; s < 7; ++s) {
            CHECK(out(0, s) > 0.0);
            CHECK(out(0, s) < 1.0);
        }
    }
}

TEST_CASE("per-sample independence") {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 50; ++n) {
        const NetworkSpec spec = testing::random_spec(rng);
        const Matrix batch = testing::random_batch(rng, 6, spec.input_dim);
        for (auto mode : {DispatchMode::corrected, DispatchMode::paper_compat}) {
            const Matrix all = forward(spec, batch, mode);
            for (std::size_t s = 0; s < batch.rows(); ++s) {
                const auto row = batch.row(s);
                const Matrix one = forward(spec, Matrix(1, row.size(), Vector(row.begin(), row.end())), mode);
                for (std::size_t u = 0; u < all.rows(); ++u) {
                    CHECK(std::fabs(all(u, s) - one(u, 0)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("forward equals the naive oracle on random networks") {
    std::mt19937_64 rng(13);
    for (int n = 0; n < 200; ++n) {
        const NetworkSpec spec = testing::random_spec(rng);
        const Matrix batch = testing::random_batch(rng, 4, spec.input_dim);
        for (auto mode : {DispatchMode::corrected, DispatchMode::paper_compat}) {
            const Matrix out = forward(spec, batch, mode);
            for (std::size_t s = 0; s < batch.rows(); ++s) {
                const auto row = batch.row(s);
                const auto expected = testing::naive_forward(spec, {row.begin(), row.end()}, mode);
                for (std::size_t u = 0; u < expected.size(); ++u) {
                    CHECK(std::fabs(out(u, s) - expected[u]) <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("modes agree without softmax or leaky_relu") {
    std::mt19937_64 rng(14);
    testing::RandomSpecLimits limits;
    limits.allow_softmax = false;
    limits.allow_leaky = false;
    for (int n = 0; n < 100; ++n) {
        const NetworkSpec spec = testing::random_spec(rng, limits);
        const Matrix batch = testing::random_batch(rng, 5, spec.input_dim);
        CHECK(forward(spec, batch, DispatchMode::corrected) ==
              forward(spec, batch, DispatchMode::paper_compat));
    }
}

TEST_CASE("paper-compat equals corrected with substituted activations") {
    std::mt19937_64 rng(15);
    for (int n = 0; n < 100; ++n) {
        const NetworkSpec spec = testing::random_spec(rng);
        NetworkSpec substituted = spec;
        for (auto& layer : substituted.layers) {
            if (layer.activation.kind == Activation::softmax) layer.activation.kind = Activation::tanh;
            if (layer.activation.kind == Activation::leaky_relu) layer.activation.kind = Activation::relu;
        }
        const Matrix batch = testing::random_batch(rng, 5, spec.input_dim);
        CHECK(forward(spec, batch, DispatchMode::paper_compat) ==
              forward(substituted, batch, DispatchMode::corrected));
    }
}

TEST_CASE("predict") {
    CHECK(threshold_labels(Vector{0.9, 0.1}, 0.5) == std::vector<int>{1, 0});
    CHECK(threshold_labels(Vector{0.5}, 0.5) == std::vector<int>{1});

    // sigmoid(0) sits exactly on the default threshold.
    NetworkSpec spec;
    spec.name = "edge";
    spec.input_dim = 1;
    spec.layers.push_back({1, Matrix::from_rows({{1.0}}), Vector{0.0}, {Activation::sigmoid}});
    CHECK(predict(spec, Matrix::from_rows({{0.0}, {-1.0}})) == std::vector<int>{1, 0});

    NetworkSpec wide = spec;
    wide.layers[0] = {2, Matrix::from_rows({{1.0, 2.0}}), Vector{0.0, 0.0}, {Activation::sigmoid}};
    CHECK_THROWS_AS(predict(wide, Matrix::from_rows({{0.0}})), ShapeError);
}
