#include "taghort/matrix.hpp"

#include <stdexcept>

namespace taghort {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != out.cols())
            throw std::invalid_argument("from_rows: ragged row lengths");
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = rows[i][j];
    }
    return out;
}

double dot(const double* a, const double* b, std::size_t m) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a[j] * b[j];
    return s;
}

double squared_norm(const double* a, std::size_t m) { return dot(a, a, m); }

double squared_distance(const double* a, const double* b, std::size_t m) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

} // namespace taghort
