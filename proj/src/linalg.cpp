#include "parenc/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace parenc {

IntervalVector iv_mat_vec(const IntervalMatrix& m, const IntervalVector& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw std::invalid_argument("iv_mat_vec: dimension mismatch");
    if (box_is_empty(v)) return empty_box(static_cast<size_t>(m.rows));
    IntervalVector out;
    out.reserve(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) {
        Interval s(0.0);
        for (int k = 0; k < m.cols; ++k) s = add(s, mul(m.at(i, k), v[static_cast<size_t>(k)]));
        out.push_back(s);
    }
    return out;
}

IntervalMatrix real_mat_iv_mat(const RealMatrix& c, const IntervalMatrix& m) {
    if (c.cols != m.rows)
        throw std::invalid_argument("real_mat_iv_mat: dimension mismatch");
    IntervalMatrix out(c.rows, m.cols);
    for (int i = 0; i < c.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            Interval s(0.0);
            for (int k = 0; k < c.cols; ++k) s = add(s, mul(Interval(c.at(i, k)), m.at(k, j)));
            out.at(i, j) = s;
        }
    return out;
}

IntervalVector real_mat_iv_vec(const RealMatrix& c, const IntervalVector& v) {
    if (c.cols != static_cast<int>(v.size()))
        throw std::invalid_argument("real_mat_iv_vec: dimension mismatch");
    if (box_is_empty(v)) return empty_box(static_cast<size_t>(c.rows));
    IntervalVector out;
    out.reserve(static_cast<size_t>(c.rows));
    for (int i = 0; i < c.rows; ++i) {
        Interval s(0.0);
        for (int k = 0; k < c.cols; ++k) s = add(s, mul(Interval(c.at(i, k)), v[static_cast<size_t>(k)]));
        out.push_back(s);
    }
    return out;
}

std::optional<RealMatrix> mat_inverse(const RealMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: matrix must be square");
    const int n = m.rows;
    // LU decomposition with partial pivoting on an augmented copy.
    RealMatrix lu = m;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(lu.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(lu.at(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return std::nullopt;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(lu.at(pivot, j), lu.at(col, j));
            std::swap(perm[static_cast<size_t>(pivot)], perm[static_cast<size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = lu.at(r, col) / lu.at(col, col);
            lu.at(r, col) = f;
            for (int j = col + 1; j < n; ++j) lu.at(r, j) -= f * lu.at(col, j);
        }
    }
    // Solve LU x = e_k for each unit vector.
    RealMatrix inv(n, n);
    std::vector<double> y(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            double s = perm[static_cast<size_t>(i)] == k ? 1.0 : 0.0;
            for (int j = 0; j < i; ++j) s -= lu.at(i, j) * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j) s -= lu.at(i, j) * inv.at(j, k);
            inv.at(i, k) = s / lu.at(i, i);
        }
    }
    return inv;
}

}  // namespace parenc
