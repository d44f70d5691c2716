#include "tinydense/codegen.hpp"

#include <cstdio>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "tinydense/float_text.hpp"

namespace tinydense {

namespace {

constexpr std::string_view kMathBasics = R"PY(# Mathematical basics
def zero_dim(x):
    z = [0 for i in range(len(x))]
    return z


def add_dim(x, y):
    z = [x[i] + y[i] for i in range(len(x))]
    return z


def zeros(rows, cols):
    M = []
    while len(M) < rows:
        M.append([])
        while len(M[-1]) < cols:
            M[-1].append(0.0)
    return M


def transpose(M):
    if not isinstance(M[0], list):
        M = [M]
    rows = len(M)
    cols = len(M[0])
    MT = zeros(cols, rows)
    for i in range(rows):
        for j in range(cols):
            MT[j][i] = M[i][j]
    return MT


def print_matrix(M, decimals=3):
    for row in M:
        print([round(x, decimals) + 0 for x in row])

)PY";

constexpr std::string_view kStableActivations = R"PY(
# Activation functions
def sigmoid(x):
    z = []
    for v in x:
        if v >= 0:
            z.append(1 / (1 + math.exp(-v)))
        else:
            e = math.exp(v)
            z.append(e / (1 + e))
    return z


def relu(x):
    y = []
    for i in range(len(x)):
        if x[i] >= 0:
            y.append(x[i])
        else:
            y.append(0)
    return y


def leaky_relu(x, alpha=0.01):
    p = []
    for i in range(len(x)):
        if x[i] >= 0:
            p.append(x[i])
        else:
            p.append(alpha * x[i])
    return p


def tanh(x):
    t = []
    for v in x:
        e = math.exp(-2 * abs(v))
        r = (1 - e) / (1 + e)
        t.append(r if v >= 0 else -r)
    return t


def softmax(x):
    max_x = max(x)
    exp_x = [math.exp(v - max_x) for v in x]
    sum_exp_x = sum(exp_x)
    s = [j / sum_exp_x for j in exp_x]
    return s

)PY";

constexpr std::string_view kStableNeuron = R"PY(
# Single neuron
def neuron(x, w, b, activation, alpha=0.01):
    tmp = zero_dim(x[0])
    for i in range(len(x)):
        tmp = add_dim(tmp, [(float(w[i]) * float(x[i][j]))
                            for j in range(len(x[0]))])
    z = [tmp[i] + b for i in range(len(tmp))]
    if activation == "linear":
        return z
    elif activation == "sigmoid":
        return sigmoid(z)
    elif activation == "relu":
        return relu(z)
    elif activation == "leaky_relu":
        return leaky_relu(z, alpha)
    elif activation == "tanh":
        return tanh(z)
    raise ValueError("Function unknown! " + str(activation))


# Dense layer: neuron i reads column i of w; softmax normalises across units
def dense(nunit, x, w, b, activation, alpha=0.01):
    res = []
    for i in range(nunit):
        wi = [row[i] for row in w]
        if activation == "softmax":
            res.append(neuron(x, wi, b[i], "linear"))
        else:
            res.append(neuron(x, wi, b[i], activation, alpha))
    if activation == "softmax":
        res = transpose([softmax(col) for col in transpose(res)])
    return res

)PY";

// The original activation code, kept verbatim. softmax() cannot run as written;
// the dispatcher below never calls it.
constexpr std::string_view kCompatActivations = R"PY(
# Activation functions
def sigmoid(x):
    z = [1 / (1 + math.exp(-x[val])) for val in range(len(x))]
    return z


def relu(x):
    y = []
    for i in range(len(x)):
        if x[i] >= 0:
            y.append(x[i])
        else:
            y.append(0)
    return y


def leaky_relu(x, alpha=0.01):
    p = []
    for i in range(len(x)):
        if x[i] >= 0:
            p.append(x[i])
        else:
            p.append(alpha * x[i])
    return p


def tanh(x):
    t = [(math.exp(x[val]) - math.exp(-x[val])) / (math.exp(x[val])
         + math.exp(-x[val])) for val in range(len(x))]
    return t


def softmax(x):
    max_x = max(x[val])
    exp_x = [math.exp(val - max_x) for val in range(len(x))]
    sum_exp_x = sum(exp_x)
    s = [j / sum_exp_x for j in exp_x]
    return s

)PY";

constexpr std::string_view kCompatNeuron = R"PY(
# Single neuron
def neuron(x, w, b, activation):

    tmp = zero_dim(x[0])

    for i in range(len(x)):
        tmp = add_dim(tmp, [(float(w[i]) * float(x[i][j]))
                            for j in range(len(x[0]))])

    if activation == "sigmoid":
        yp = sigmoid([tmp[i] + b for i in range(len(tmp))])
    elif activation == "relu":
        yp = relu([tmp[i] + b for i in range(len(tmp))])
    elif activation == "leaky_relu":
        yp = relu([tmp[i] + b for i in range(len(tmp))])
    elif activation == "tanh":
        yp = tanh([tmp[i] + b for i in range(len(tmp))])
    elif activation == "softmax":
        yp = tanh([tmp[i] + b for i in range(len(tmp))])
    else:
        print("Function unknown!")

    return yp


# Dense layer: neuron i reads column i of w
def dense(nunit, x, w, b, activation):
    res = []
    for i in range(nunit):
        z = neuron(x, [row[i] for row in w], b[i], activation)
        res.append(z)
    return res

)PY";

constexpr std::string_view kEvalHelpers = R"PY(
# Evaluation: rows are actual positive/negative, columns predicted positive/negative
def confusion_matrix(actual, predicted):
    tp = 0
    fn = 0
    fp = 0
    tn = 0
    for i in range(len(actual)):
        if actual[i] == 1:
            if predicted[i] == 1:
                tp += 1
            else:
                fn += 1
        else:
            if predicted[i] == 1:
                fp += 1
            else:
                tn += 1
    return [[tp, fn], [fp, tn]]


def accuracy(cm):
    total = cm[0][0] + cm[0][1] + cm[1][0] + cm[1][1]
    return (cm[0][0] + cm[1][1]) / total


def print_scoreboard(cm):
    print("                 Predicted Positive  Predicted Negative")
    print("Actual Positive  " + str(cm[0][0]) + "  " + str(cm[0][1]))
    print("Actual Negative  " + str(cm[1][0]) + "  " + str(cm[1][1]))
    print("Accuracy: " + str(round(accuracy(cm) * 100, 1)) + "%")

)PY";

std::string literal_row(std::span<const double> values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out += ", ";
        out += python_float_repr(values[i]);
    }
    return out + "]";
}

void write_matrix(std::ostringstream& out, const std::string& name, const Matrix& m) {
    const std::string indent(name.size() + 4, ' ');
    out << name << " = [";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r != 0) out << ",\n" << indent;
        out << literal_row(m.row(r));
    }
    out << "]\n";
}

std::string string_literal(const std::string& text) { return nlohmann::json(text).dump(); }

}  // namespace

DispatchMode emitted_dispatch_mode(const EmitOptions& options) {
    return options.compat ? DispatchMode::paper_compat : DispatchMode::corrected;
}

std::string emit_micropython(const NetworkSpec& spec, const EmitOptions& options) {
    require_valid(spec);
    std::ostringstream out;
    out << "# MicroPython inference program for model " << string_literal(spec.name) << ".\n";
    out << "# Generated by tinydense; do not edit by hand.\n";
    out << "# Activation dispatch: " << to_string(emitted_dispatch_mode(options)) << "\n";
    out << "# Layer widths:";
    for (std::size_t w : spec.widths()) out << ' ' << w;
    out << "\n\nimport math\n\n\n";

    out << kMathBasics;
    out << (options.compat ? kCompatActivations : kStableActivations);
    out << (options.compat ? kCompatNeuron : kStableNeuron);

    out << "\n# Weights (rows: inputs, columns: neurons) and biases\n";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const std::string n = std::to_string(i + 1);
        write_matrix(out, "w" + n, spec.layers[i].weights);
        out << "b" << n << " = " << literal_row(spec.layers[i].biases) << "\n";
    }
    out << "threshold = " << python_float_repr(spec.threshold) << "\n";

    out << "\n\n# Forward pass\ndef predict(Xtest):\n";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& layer = spec.layers[i];
        const bool last = i + 1 == spec.layers.size();
        const std::string target = last ? "ypred" : "yout" + std::to_string(i + 1);
        const std::string source = i == 0 ? "transpose(Xtest)" : "yout" + std::to_string(i);
        const std::string n = std::to_string(i + 1);
        out << "    " << target << " = dense(" << layer.units << ", " << source << ", w" << n
            << ", b" << n << ", '" << to_string(layer.activation.kind) << "'";
        if (!options.compat && layer.activation.kind == Activation::leaky_relu) {
            out << ", " << python_float_repr(layer.activation.alpha);
        }
        out << ")\n";
    }
    out << "    return ypred\n\n\n";
    out << "def classify(ypred):\n";
    out << "    return [1 if p >= threshold else 0 for p in ypred[0]]\n\n";

    if (options.include_eval) out << kEvalHelpers;

    if (options.data) {
        const EmbeddedData& data = *options.data;
        out << "\n# Test data\n";
        write_matrix(out, "Xtest", data.features);
        const bool labelled = data.labels.has_value();
        if (labelled) {
            out << "ytest = [";
            for (std::size_t i = 0; i < data.labels->size(); ++i) {
                out << (i == 0 ? "" : ", ") << (*data.labels)[i];
            }
            out << "]\n";
        }
        out << "\nypred = predict(Xtest)\n";
        out << "print_matrix(ypred)\n";
        if (options.include_eval && labelled) {
            out << "print_scoreboard(confusion_matrix(ytest, classify(ypred)))\n";
        }
    }
    return out.str();
}

const std::vector<MemoryBudget>& pico_budgets() {
    static const std::vector<MemoryBudget> budgets{
        {"Raspberry Pi Pico (RP2040)", 264 * 1024},
        {"Raspberry Pi Pico 2 (RP2350)", 520 * 1024},
    };
    return budgets;
}

ModelCard model_card(const NetworkSpec& spec) {
    ModelCard card;
    card.name = spec.name;
    card.dispatch_mode = spec.dispatch_mode;
    card.widths = spec.widths();
    for (const LayerSpec& layer : spec.layers) {
        card.activations.emplace_back(to_string(layer.activation.kind));
        card.neurons += layer.units;
        card.weights += layer.weights.rows() * layer.weights.cols();
        card.biases += layer.biases.size();
    }
    return card;
}

std::string emit_model_card(const NetworkSpec& spec) {
    const ModelCard card = model_card(spec);
    std::ostringstream out;
    out << "Model: " << card.name << "\n";
    out << "Dispatch mode: " << to_string(card.dispatch_mode) << "\n";
    out << "Layers: " << spec.layers.size() << "\n";
    out << "Layer widths:";
    for (std::size_t i = 0; i < card.widths.size(); ++i) {
        out << (i == 0 ? " " : " -> ") << card.widths[i];
    }
    out << "\n";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& layer = spec.layers[i];
        out << "  layer " << i << ": " << layer.weights.rows() << " -> " << layer.units << "  "
            << to_string(layer.activation.kind);
        if (layer.activation.kind == Activation::leaky_relu) {
            out << " (alpha " << python_float_repr(layer.activation.alpha) << ")";
        }
        out << "\n";
    }
    out << "Neurons: " << card.neurons << "\n";
    out << "Parameters: " << card.parameters() << " (" << card.weights << " weights + "
        << card.biases << " biases)\n";
    out << "Parameter memory: " << card.bytes_binary64() << " bytes as binary64, "
        << card.bytes_binary32() << " bytes as binary32\n";
    for (const MemoryBudget& budget : pico_budgets()) {
        char line[160];
        std::snprintf(line, sizeof line, "  %s, %zu KB SRAM: %.4f%% (binary64), %.4f%% (binary32)\n",
                      budget.device.c_str(), budget.sram_bytes / 1024,
                      100.0 * static_cast<double>(card.bytes_binary64()) /
                          static_cast<double>(budget.sram_bytes),
                      100.0 * static_cast<double>(card.bytes_binary32()) /
                          static_cast<double>(budget.sram_bytes));
        out << line;
    }
    return out.str();
}

std::string to_json(const ModelCard& card) {
    nlohmann::ordered_json doc;
    doc["name"] = card.name;
    doc["dispatch_mode"] = std::string(to_string(card.dispatch_mode));
    doc["widths"] = card.widths;
    doc["activations"] = card.activations;
    doc["neurons"] = card.neurons;
    doc["weights"] = card.weights;
    doc["biases"] = card.biases;
    doc["parameters"] = card.parameters();
    doc["bytes_binary64"] = card.bytes_binary64();
    doc["bytes_binary32"] = card.bytes_binary32();
    auto budgets = nlohmann::ordered_json::array();
    for (const MemoryBudget& budget : pico_budgets()) {
        budgets.push_back({{"device", budget.device}, {"sram_bytes", budget.sram_bytes}});
    }
    doc["budgets"] = budgets;
    return doc.dump(2) + "\n";
}

}  // namespace tinydense
