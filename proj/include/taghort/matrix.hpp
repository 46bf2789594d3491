#pragma once

#include <cstddef>
#include <vector>

namespace taghort {

// Dense row-major matrix of doubles. The data sets this tool targets are
// desk-scale (hundreds to low thousands of rows), so dense storage is enough.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(const double* a, const double* b, std::size_t m);
double squared_norm(const double* a, std::size_t m);
double squared_distance(const double* a, const double* b, std::size_t m);

} // namespace taghort
