#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tinydense {

using Vector = std::vector<double>;

/// Dense row-major matrix with explicit, non-zero dimensions.
class Matrix {
public:
    /// All-zero rows x cols matrix. Throws ShapeError if either dimension is 0.
    Matrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major `data`; its length must equal rows * cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    /// Builds from nested rows; every row must have the same non-zero length.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    /// Bounds-checked access.
    double at(std::size_t r, std::size_t c) const;

    std::span<const double> row(std::size_t r) const;
    Vector column(std::size_t c) const;
    std::span<const double> data() const noexcept { return data_; }

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix zeros(std::size_t rows, std::size_t cols);
Vector zero_vector(std::size_t n);
Vector add_vectors(std::span<const double> a, std::span<const double> b);

Matrix transpose(const Matrix& m);
/// A flat list is treated as a single row, so the result is n x 1.
Matrix transpose(std::span<const double> flat);

/// One bracketed line per row. Values are rounded to `decimals` places from their
/// exact binary value (exact ties go to even) and printed in shortest form, with
/// negative zero shown as zero: [[-0.0004]] -> "[0.0]".
std::string format_matrix(const Matrix& m, int decimals = 3);

}  // namespace tinydense
