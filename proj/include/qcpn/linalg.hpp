#pragma once
// Dense exact linear algebra over a field (Q(q) or its Gaussian extension):
// reduced row echelon form, nullspace, and linear solving.

#include <optional>
#include <vector>

namespace qcpn {

template <class F>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<F> a;  // row-major

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, F(0)) {}
    F& at(size_t r, size_t c) { return a[r * cols + c]; }
    const F& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

// In-place Gauss-Jordan; returns pivot column indices.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t p = r;
        while (p < m.rows && m.at(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        F inv = m.at(r, c).inverse();
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            F f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
size_t rank(Matrix<F> m) {
    return rref(m).size();
}

// Basis of the right nullspace of m.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> v(m.cols, F(0));
        v[c] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - m.at(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve m x = b; returns one solution if consistent.
template <class F>
std::optional<std::vector<F>> solve(Matrix<F> m, std::vector<F> b) {
    Matrix<F> aug(m.rows, m.cols + 1);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // inconsistent
    std::vector<F> x(m.cols, F(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return x;
}

}  // namespace qcpn
