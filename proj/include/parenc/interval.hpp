#pragma once

// Outward-rounded interval arithmetic on extended reals.
//
// Endpoints are IEEE-754 doubles computed in round-to-nearest; whenever the
// rounded result is inexact (detected with error-free transformations: TwoSum
// for +/-, an fma residual for *, / ) the endpoint is stepped one ULP outward.
// Exact operations keep their exact endpoints, so e.g. [1,2]+[3,4] is [4,6]
// on the nose.  No FP rounding-mode state is read or written anywhere.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace parenc {

struct Interval {
    double lo;
    double hi;

    // Default: degenerate zero.
    constexpr Interval() : lo(0.0), hi(0.0) {}
    constexpr explicit Interval(double v) : lo(v), hi(v) {}
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    static constexpr Interval empty() {
        return Interval(std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity());
    }
    static constexpr Interval whole() {
        return Interval(-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
    }

    bool is_empty() const { return lo > hi; }
    bool is_bounded() const { return !is_empty() && std::isfinite(lo) && std::isfinite(hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
};

inline bool same_interval(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
    return a.lo == b.lo && a.hi == b.hi;
}

namespace round {

inline double next_up(double x) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double next_down(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

// Exact rounding error of s = RN(a+b), all finite (Knuth TwoSum).
inline double two_sum_err(double a, double b, double s) {
    double bp = s - a;
    double ap = s - bp;
    return (b - bp) + (a - ap);
}

// Lower bound of a+b.  Infinite operands are exact; a finite overflow to
// +inf means the true sum exceeds DBL_MAX, for which DBL_MAX is a valid
// lower bound.
inline double add_down(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (std::isinf(a) || std::isinf(b)) return s;
        return s > 0 ? std::numeric_limits<double>::max() : s;
    }
    return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (std::isinf(a) || std::isinf(b)) return s;
        return s < 0 ? -std::numeric_limits<double>::max() : s;
    }
    return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// The fma residual detects inexactness of a product/quotient reliably except
// deep in the subnormal range, where the residual itself may round to zero;
// there we step unconditionally.
inline bool subnormal_guard(double p) {
    return p != 0.0 && std::fabs(p) < 2.0 * std::numeric_limits<double>::min();
}

inline double mul_down(double a, double b) {
    double p = a * b;
    if (std::isinf(p)) {
        if (std::isinf(a) || std::isinf(b)) return p;
        return p > 0 ? std::numeric_limits<double>::max() : p;
    }
    if (subnormal_guard(p)) return next_down(p);
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (std::isinf(p)) {
        if (std::isinf(a) || std::isinf(b)) return p;
        return p < 0 ? -std::numeric_limits<double>::max() : p;
    }
    if (subnormal_guard(p)) return next_up(p);
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// Directed quotients, b != 0.  Sign of the true (a/b - q) equals the sign of
// (a - q*b)/b = (-r)/b with r = fma(q, b, -a).
inline double div_down(double a, double b) {
    double q = a / b;
    if (std::isinf(q)) {
        if (std::isinf(a)) return q;
        return q > 0 ? std::numeric_limits<double>::max() : q;
    }
    if (subnormal_guard(q) || subnormal_guard(a)) return next_down(q);
    double r = std::fma(q, b, -a);
    if (r != 0.0 && ((r > 0.0) == (b > 0.0))) return next_down(q);
    return q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (std::isinf(q)) {
        if (std::isinf(a)) return q;
        return q < 0 ? -std::numeric_limits<double>::max() : q;
    }
    if (subnormal_guard(q) || subnormal_guard(a)) return next_up(q);
    double r = std::fma(q, b, -a);
    if (r != 0.0 && ((r > 0.0) != (b > 0.0))) return next_up(q);
    return q;
}

// Set-semantics product candidate: the image of {0} under scaling is {0},
// so 0 * inf = 0 here (needed for whole-line operands).
inline double prod0_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return mul_down(a, b);
}

inline double prod0_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return mul_up(a, b);
}

}  // namespace round

inline Interval add(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return Interval(round::add_down(a.lo, b.lo), round::add_up(a.hi, b.hi));
}

inline Interval sub(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return Interval(round::sub_down(a.lo, b.hi), round::sub_up(a.hi, b.lo));
}

inline Interval neg(const Interval& a) {
    if (a.is_empty()) return Interval::empty();
    return Interval(-a.hi, -a.lo);
}

inline Interval mul(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    double lo = round::prod0_down(a.lo, b.lo);
    double hi = round::prod0_up(a.lo, b.lo);
    double c;
    c = round::prod0_down(a.lo, b.hi); if (c < lo) lo = c;
    c = round::prod0_up(a.lo, b.hi);   if (c > hi) hi = c;
    c = round::prod0_down(a.hi, b.lo); if (c < lo) lo = c;
    c = round::prod0_up(a.hi, b.lo);   if (c > hi) hi = c;
    c = round::prod0_down(a.hi, b.hi); if (c < lo) lo = c;
    c = round::prod0_up(a.hi, b.hi);   if (c > hi) hi = c;
    return Interval(lo, hi);
}

// Quotient with 0 not in the divisor; the 0-in-divisor case must go through
// extended_divide, signalled here as a domain error.
inline Interval div(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    if (b.contains_zero())
        throw std::domain_error("interval division by an interval containing zero: use extended division");
    double lo = round::div_down(a.lo, b.lo);
    double hi = round::div_up(a.lo, b.lo);
    double c;
    c = round::div_down(a.lo, b.hi); if (c < lo) lo = c;
    c = round::div_up(a.lo, b.hi);   if (c > hi) hi = c;
    c = round::div_down(a.hi, b.lo); if (c < lo) lo = c;
    c = round::div_up(a.hi, b.lo);   if (c > hi) hi = c;
    c = round::div_down(a.hi, b.hi); if (c < lo) lo = c;
    c = round::div_up(a.hi, b.hi);   if (c > hi) hi = c;
    return Interval(lo, hi);
}

namespace round {

// Directed t^k for t >= 0 by repeated multiplication; monotone in t, so each
// directed step keeps the bound valid.
inline double pow_nonneg_down(double t, int k) {
    double r = t;
    for (int i = 1; i < k; ++i) r = mul_down(r, t);
    return r;
}

inline double pow_nonneg_up(double t, int k) {
    double r = t;
    for (int i = 1; i < k; ++i) r = mul_up(r, t);
    return r;
}

}  // namespace round

// Exact range of t -> t^k over the interval (sharp, not the k-fold product).
inline Interval pow_int(const Interval& x, int k) {
    if (k < 0) throw std::domain_error("pow_int exponent must be non-negative");
    if (x.is_empty()) return Interval::empty();
    if (k == 0) return Interval(1.0);
    if (k == 1) return x;
    if (k % 2 != 0) {
        double lo = x.lo >= 0.0 ? round::pow_nonneg_down(x.lo, k)
                                : -round::pow_nonneg_up(-x.lo, k);
        double hi = x.hi >= 0.0 ? round::pow_nonneg_up(x.hi, k)
                                : -round::pow_nonneg_down(-x.hi, k);
        return Interval(lo, hi);
    }
    if (x.lo >= 0.0)
        return Interval(round::pow_nonneg_down(x.lo, k), round::pow_nonneg_up(x.hi, k));
    if (x.hi <= 0.0)
        return Interval(round::pow_nonneg_down(-x.hi, k), round::pow_nonneg_up(-x.lo, k));
    double mag = std::max(-x.lo, x.hi);
    return Interval(0.0, round::pow_nonneg_up(mag, k));
}

inline Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) return Interval::empty();
    return Interval(lo, hi);
}

// Midpoint rounded to nearest, clamped so the result is a member of the
// interval; undefined (error) for empty or unbounded input.
inline double mid(const Interval& x) {
    if (x.is_empty() || !std::isfinite(x.lo) || !std::isfinite(x.hi))
        throw std::domain_error("mid of empty or unbounded interval");
    double m = 0.5 * (x.lo + x.hi);
    if (!std::isfinite(m)) m = 0.5 * x.lo + 0.5 * x.hi;
    if (m < x.lo) m = x.lo;
    if (m > x.hi) m = x.hi;
    return m;
}

// Width hi - lo, rounded upward; +inf for unbounded intervals.
inline double wid(const Interval& x) {
    if (x.is_empty()) return 0.0;
    if (std::isinf(x.lo) || std::isinf(x.hi)) return std::numeric_limits<double>::infinity();
    return round::sub_up(x.hi, x.lo);
}

// The exact set {b/a : a in [a]\{0}, b in [b]} for 0 in [a]: zero, one or two
// pieces; two pieces are disjoint half-lines, kept sorted.
struct ExtendedDivisionResult {
    int count = 0;
    Interval piece[2];

    void push(const Interval& p) { piece[count++] = p; }
};

ExtendedDivisionResult extended_divide(const Interval& b, const Interval& a);

// Text form "[lo,hi]" with 17 significant digits; "empty" / "[-inf,inf]"
// literals are emitted and accepted.
std::string to_string(const Interval& x);
Interval interval_from_string(const std::string& text);

// Decimal rendering of one endpoint with outward rounding at `digits`
// fractional digits, so a printed box always contains the computed one.
std::string format_decimal_outward(double v, int digits, bool roundup);

}  // namespace parenc
