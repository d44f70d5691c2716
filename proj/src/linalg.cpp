#include "tinydense/linalg.hpp"

#include <sstream>
#include <string>

#include "tinydense/error.hpp"
#include "tinydense/float_text.hpp"

namespace tinydense {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_positive(rows, cols);
    data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_positive(rows, cols);
    if (data_.size() != rows * cols) {
        throw ShapeError("matrix data has " + std::to_string(data_.size()) +
                         " elements, expected " + std::to_string(rows * cols));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw ShapeError("matrix needs at least one row and one column");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw ShapeError("row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " values, expected " +
                             std::to_string(cols));
        }
        data.insert(data.end(), rows[r].begin(), rows[r].end());
    }
    return Matrix(rows.size(), cols, std::move(data));
}

double Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw ShapeError("index (" + std::to_string(r) + ", " + std::to_string(c) +
                         ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    return (*this)(r, c);
}

std::span<const double> Matrix::row(std::size_t r) const {
    if (r >= rows_) throw ShapeError("row " + std::to_string(r) + " out of range");
    return std::span<const double>(data_).subspan(r * cols_, cols_);
}

Vector Matrix::column(std::size_t c) const {
    if (c >= cols_) throw ShapeError("column " + std::to_string(c) + " out of range");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
    std::vector<std::vector<double>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto values = row(r);
        out.emplace_back(values.begin(), values.end());
    }
    return out;
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Vector zero_vector(std::size_t n) {
    if (n == 0) throw ShapeError("vector length must be positive");
    return Vector(n, 0.0);
}

Vector add_vectors(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("cannot add vectors of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
    }
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    }
    return out;
}

Matrix transpose(std::span<const double> flat) {
    return transpose(Matrix(1, flat.size(), Vector(flat.begin(), flat.end())));
}

std::string format_matrix(const Matrix& m, int decimals) {
    if (decimals < 0) throw ShapeError("decimals must be non-negative");
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << '[';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c != 0) out << ", ";
            // "+ 0" folds -0.0 into 0.0
            out << python_float_repr(round_decimal(m(r, c), decimals) + 0.0);
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace tinydense
