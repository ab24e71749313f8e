#include "qsheaf/linalg.hpp"

#include "qsheaf/error.hpp"

#include <sstream>

namespace qsheaf {

std::int64_t to_int64(const Rational& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(Errc::InvalidInput, "expected a machine integer, got " + q.get_str());
    return q.get_num().get_si();
}

std::string to_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

QMatrix QMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
}

QMatrix QMatrix::transposed() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    QMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (sgn((*this)(i, k)) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += (*this)(i, k) * rhs(k, j);
        }
    return out;
}

RatVec QMatrix::operator*(const RatVec& v) const {
    RatVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns. Optional augmented
// column count is excluded from pivot search.
std::vector<std::size_t> rref(QMatrix& m, std::size_t search_cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < search_cols && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

QMatrix augment(const QMatrix& a, const RatVec& b) {
    QMatrix m(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        m(r, a.cols()) = b[r];
    }
    return m;
}

}  // namespace

std::size_t rank(QMatrix m) { return rref(m, m.cols()).size(); }

Rational determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw Error(Errc::NonSquare, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(m(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m(r, col)) == 0) continue;
            Rational f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

std::optional<RatVec> solve_square(QMatrix a, RatVec b) {
    if (a.rows() != a.cols()) throw Error(Errc::NonSquare, "solve_square on a non-square matrix");
    QMatrix m = augment(a, b);
    auto piv = rref(m, a.cols());
    if (piv.size() != a.cols()) return std::nullopt;
    RatVec x(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) x[i] = m(i, a.cols());
    return x;
}

std::optional<RatVec> solve_any(QMatrix a, RatVec b) {
    QMatrix m = augment(a, b);
    auto piv = rref(m, a.cols());
    for (std::size_t r = piv.size(); r < m.rows(); ++r)
        if (sgn(m(r, a.cols())) != 0) return std::nullopt;
    RatVec x(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m(i, a.cols());
    return x;
}

std::vector<RatVec> nullspace(QMatrix a) {
    auto piv = rref(a, a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qsheaf
