#pragma once

#include <cstddef>
#include <vector>

namespace em {

/// Dense square matrix of doubles, row-major. The model never needs more
/// than 6x6, so there is no attempt at being clever about storage.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
    Matrix(std::size_t dim, std::vector<double> values);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    double& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    const std::vector<double>& data() const { return data_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    std::vector<double> apply(const std::vector<double>& v) const;

    /// Maximum absolute row sum.
    double inf_norm() const;
    double column_sum(std::size_t col) const;
    bool all_finite() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// e^A by scaling-and-squaring around a truncated Taylor series. The series
/// is cut once a term stops moving the partial sum at machine precision.
Matrix matrix_exp(const Matrix& a);

}  // namespace em
