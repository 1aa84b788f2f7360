#include "parenc/poly.hpp"

#include <cstddef>

namespace parenc {

namespace {

bool is_exact_zero(const Interval& v) { return v.lo == 0.0 && v.hi == 0.0; }

// Pointwise-sound polynomial arithmetic on interval coefficients.

void add_term(Polynomial& poly, const Monomial& m, const Interval& c) {
    auto it = poly.find(m);
    if (it == poly.end()) {
        if (!is_exact_zero(c)) poly.emplace(m, c);
        return;
    }
    Interval s = add(it->second, c);
    if (is_exact_zero(s))
        poly.erase(it);
    else
        it->second = s;
}

std::optional<Polynomial> poly_add(const Polynomial& u, const Polynomial& v, bool subtract) {
    Polynomial r = u;
    for (const auto& [m, c] : v) add_term(r, m, subtract ? neg(c) : c);
    return r;
}

std::optional<Polynomial> poly_mul(const Polynomial& u, const Polynomial& v,
                                   std::size_t max_terms) {
    Polynomial r;
    for (const auto& [mu, cu] : u)
        for (const auto& [mv, cv] : v) {
            Monomial m(mu.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = mu[i] + mv[i];
            add_term(r, m, mul(cu, cv));
            if (r.size() > max_terms) return std::nullopt;
        }
    return r;
}

}  // namespace

std::optional<Polynomial> polynomialize(const ExprPtr& e, int p, int n,
                                        std::size_t max_terms) {
    const std::size_t slots = static_cast<std::size_t>(p + n);
    switch (e->kind) {
        case ExprKind::Constant: {
            Polynomial r;
            if (e->value != 0.0) r.emplace(Monomial(slots, 0), Interval(e->value));
            return r;
        }
        case ExprKind::Param: {
            Polynomial r;
            Monomial m(slots, 0);
            m[static_cast<std::size_t>(e->index)] = 1;
            r.emplace(m, Interval(1.0));
            return r;
        }
        case ExprKind::Var: {
            Polynomial r;
            Monomial m(slots, 0);
            m[static_cast<std::size_t>(p + e->index)] = 1;
            r.emplace(m, Interval(1.0));
            return r;
        }
        case ExprKind::Neg: {
            auto u = polynomialize(e->lhs, p, n, max_terms);
            if (!u) return std::nullopt;
            Polynomial r;
            for (const auto& [m, c] : *u) r.emplace(m, neg(c));
            return r;
        }
        case ExprKind::Add:
        case ExprKind::Sub: {
            auto u = polynomialize(e->lhs, p, n, max_terms);
            if (!u) return std::nullopt;
            auto v = polynomialize(e->rhs, p, n, max_terms);
            if (!v) return std::nullopt;
            return poly_add(*u, *v, e->kind == ExprKind::Sub);
        }
        case ExprKind::Mul: {
            auto u = polynomialize(e->lhs, p, n, max_terms);
            if (!u) return std::nullopt;
            auto v = polynomialize(e->rhs, p, n, max_terms);
            if (!v) return std::nullopt;
            return poly_mul(*u, *v, max_terms);
        }
        case ExprKind::Div:
            return std::nullopt;
        case ExprKind::Pow: {
            auto u = polynomialize(e->lhs, p, n, max_terms);
            if (!u) return std::nullopt;
            Polynomial r = *u;
            for (int k = 1; k < e->exponent; ++k) {
                auto next = poly_mul(r, *u, max_terms);
                if (!next) return std::nullopt;
                r = std::move(*next);
            }
            return r;
        }
    }
    return std::nullopt;
}

void poly_axpy(Polynomial& dst, const Interval& scale, const Polynomial& src) {
    if (is_exact_zero(scale)) return;
    for (const auto& [m, c] : src) add_term(dst, m, mul(scale, c));
}

Interval eval_poly(const Polynomial& poly, const IntervalVector& a_box,
                   const IntervalVector& x_box) {
    const std::size_t p = a_box.size();
    Interval s(0.0);
    for (const auto& [m, c] : poly) {
        Interval term = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            const Interval& base = i < p ? a_box[i] : x_box[i - p];
            term = mul(term, pow_int(base, m[i]));
        }
        s = add(s, term);
    }
    return s;
}

IntervalMatrix preconditioned_jacobian(const RealMatrix& C, const ParametricSystem& sys,
                                       const IntervalVector& a_box,
                                       const IntervalVector& x_box) {
    const int n = sys.n;
    // Polynomial form of each Jacobian entry, when it has one.
    std::vector<std::vector<std::optional<Polynomial>>> polys(
        static_cast<std::size_t>(n), std::vector<std::optional<Polynomial>>(
                                         static_cast<std::size_t>(n)));
    std::vector<bool> column_ok(static_cast<std::size_t>(n), true);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            polys[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                polynomialize(sys.jac_x[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)],
                              sys.p, n);
            if (!polys[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                column_ok[static_cast<std::size_t>(j)] = false;
        }

    IntervalMatrix result(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (column_ok[static_cast<std::size_t>(j)]) {
                Polynomial row;
                for (int k = 0; k < n; ++k)
                    poly_axpy(row, Interval(C.at(i, k)),
                              *polys[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
                result.at(i, j) = eval_poly(row, a_box, x_box);
            } else {
                Interval s(0.0);
                for (int k = 0; k < n; ++k)
                    s = add(s, mul(Interval(C.at(i, k)),
                                   natural_eval(sys.jac_x[static_cast<std::size_t>(k)]
                                                         [static_cast<std::size_t>(j)],
                                                a_box, x_box)));
                result.at(i, j) = s;
            }
        }
    return result;
}

}  // namespace parenc
