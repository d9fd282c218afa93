#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fusion {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Zero-sized dimensions are allowed so that
/// an empty orthonormal completion (L = M) is representable.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Takes ownership of row-major entries; throws on size mismatch or non-finite entries.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    /// Columns given as vectors of equal length `rows`.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const double> values);

    const std::vector<double>& entries() const noexcept { return data_; }

    Matrix transpose() const;
    /// Selects the listed columns in order.
    Matrix select_columns(std::span<const std::size_t> idx) const;
    /// Column range [first, first + count).
    Matrix column_block(std::size_t first, std::size_t count) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    double max_abs() const;
    double trace() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// [a b], same row count.
Matrix hconcat(const Matrix& a, const Matrix& b);

/// ‖a − b‖_max; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
/// ‖QᵀQ − I‖_max
double orthonormality_residual(const Matrix& q);
/// ‖A − Aᵀ‖_max
double symmetry_residual(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> x);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);

} // namespace fusion
