#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rankfd::num {

/// Dense row-major matrix of doubles. The matrices in this library are
/// small (d x d with d rarely above 16), so no effort is spent on blocking
/// or expression templates.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values);

    static Matrix identity(std::size_t n);
    static Matrix ones(std::size_t rows, std::size_t cols);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

    Matrix transposed() const;
    double trace() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
    friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

/// Kronecker product a (x) b.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Matrix-vector product m * x.
std::vector<double> operator*(const Matrix& m, std::span<const double> x);

/// Quadratic/bilinear form x' m y.
double bilinear(std::span<const double> x, const Matrix& m, std::span<const double> y);

} // namespace rankfd::num
