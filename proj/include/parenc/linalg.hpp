#pragma once

// Interval vectors/matrices and the small amount of approximate real linear
// algebra (midpoints, LU inverse) needed for preconditioning.

#include <optional>
#include <vector>

#include "parenc/interval.hpp"

namespace parenc {

using RealVector = std::vector<double>;
using IntervalVector = std::vector<Interval>;

struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

struct IntervalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Interval> data;

    IntervalMatrix() = default;
    IntervalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    Interval& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Interval& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

// A box is empty iff any component is empty.
inline bool box_is_empty(const IntervalVector& v) {
    for (const Interval& c : v)
        if (c.is_empty()) return true;
    return false;
}

inline bool box_is_bounded(const IntervalVector& v) {
    for (const Interval& c : v)
        if (!c.is_bounded()) return false;
    return true;
}

inline IntervalVector empty_box(size_t n) {
    return IntervalVector(n, Interval::empty());
}

inline IntervalVector whole_box(size_t n) {
    return IntervalVector(n, Interval::whole());
}

inline IntervalVector degenerate_box(const RealVector& pt) {
    IntervalVector out;
    out.reserve(pt.size());
    for (double v : pt) out.emplace_back(v);
    return out;
}

inline bool same_box(const IntervalVector& a, const IntervalVector& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!same_interval(a[i], b[i])) return false;
    return true;
}

inline RealVector mid_vec(const IntervalVector& v) {
    RealVector out;
    out.reserve(v.size());
    for (const Interval& c : v) out.push_back(mid(c));
    return out;
}

inline RealMatrix mid_matrix(const IntervalMatrix& m) {
    RealMatrix out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = mid(m.at(i, j));
    return out;
}

// Componentwise interval dot products, accumulated left to right.
IntervalVector iv_mat_vec(const IntervalMatrix& m, const IntervalVector& v);
IntervalMatrix real_mat_iv_mat(const RealMatrix& c, const IntervalMatrix& m);
IntervalVector real_mat_iv_vec(const RealMatrix& c, const IntervalVector& v);

// Approximate floating-point inverse via LU with partial pivoting; nullopt on
// an exactly zero pivot ("preconditioner singular").  No rigor is required:
// the inverse only preconditions, enclosure correctness never depends on it.
std::optional<RealMatrix> mat_inverse(const RealMatrix& m);

}  // namespace parenc
