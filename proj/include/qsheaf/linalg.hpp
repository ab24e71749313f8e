#pragma once

#include "qsheaf/rational.hpp"

#include <optional>
#include <vector>

namespace qsheaf {

/// Dense row-major matrix over the rationals; sizes here are tiny (≤ 20).
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
    static QMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QMatrix transposed() const;
    QMatrix operator*(const QMatrix& rhs) const;
    RatVec operator*(const RatVec& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(QMatrix m);
Rational determinant(QMatrix m);

/// Unique solution of A x = b for square nonsingular A; nullopt when singular.
std::optional<RatVec> solve_square(QMatrix a, RatVec b);

/// Some solution of A x = b (free variables set to zero), or nullopt when inconsistent.
std::optional<RatVec> solve_any(QMatrix a, RatVec b);

/// Basis of {x : A x = 0}, one vector per free column of the reduced echelon form.
std::vector<RatVec> nullspace(QMatrix a);

}  // namespace qsheaf
