#include "em/matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "em/errors.hpp"

namespace em {

Matrix::Matrix(std::size_t dim, std::vector<double> values) : dim_(dim), data_(std::move(values)) {
    if (data_.size() != dim_ * dim_) {
        throw DimensionMismatch("matrix: expected " + std::to_string(dim_ * dim_) +
                                " values, got " + std::to_string(data_.size()));
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rhs.dim_ != dim_) throw DimensionMismatch("matrix add: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("matrix multiply: dimension mismatch");
    const std::size_t n = a.dim_;
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

std::vector<double> Matrix::apply(const std::vector<double>& v) const {
    if (v.size() != dim_) throw DimensionMismatch("matrix apply: dimension mismatch");
    std::vector<double> out(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double Matrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
        if (row > best) best = row;
    }
    return best;
}

double Matrix::column_sum(std::size_t col) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, col);
    return s;
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Matrix matrix_exp(const Matrix& a) {
    if (!a.all_finite()) throw NonFiniteEntry("matrix_exp: non-finite entry");
    const std::size_t n = a.dim();

    // Scale so the norm is at most 1/2, exponentiate the scaled matrix by
    // Taylor series, then square back up.
    const double norm = a.inf_norm();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    Matrix b = a * std::ldexp(1.0, -squarings);

    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int k = 1; k <= 64; ++k) {
        term = term * b;
        term *= 1.0 / static_cast<double>(k);
        sum += term;
        if (term.inf_norm() <= eps * sum.inf_norm()) break;
    }

    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

}  // namespace em
