#include "parenc/expr.hpp"

#include <cstdio>

namespace parenc {

static bool is_const(const ExprPtr& e, double v) {
    return e->kind == ExprKind::Constant && e->value == v;
}

ExprPtr mk_const(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Constant;
    e->value = v;
    return e;
}

ExprPtr mk_var(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->index = index;
    return e;
}

ExprPtr mk_param(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Param;
    e->index = index;
    return e;
}

ExprPtr mk_neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Neg;
    e->lhs = std::move(a);
    return e;
}

ExprPtr mk_add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Add;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr mk_sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return mk_neg(std::move(b));
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Sub;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr mk_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return mk_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Mul;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr mk_div(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Div;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr mk_pow(ExprPtr base, int k) {
    if (k < 0) throw std::invalid_argument("pow exponent must be non-negative");
    if (k == 0) return mk_const(1.0);
    if (k == 1) return base;
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Pow;
    e->lhs = std::move(base);
    e->exponent = k;
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Constant: return a->value == b->value;
        case ExprKind::Var:
        case ExprKind::Param: return a->index == b->index;
        case ExprKind::Neg: return expr_equal(a->lhs, b->lhs);
        case ExprKind::Pow: return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
        default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

ExprPtr differentiate(const ExprPtr& e, bool wrt_param, int index) {
    switch (e->kind) {
        case ExprKind::Constant:
            return mk_const(0.0);
        case ExprKind::Var:
            return mk_const(!wrt_param && e->index == index ? 1.0 : 0.0);
        case ExprKind::Param:
            return mk_const(wrt_param && e->index == index ? 1.0 : 0.0);
        case ExprKind::Neg:
            return mk_neg(differentiate(e->lhs, wrt_param, index));
        case ExprKind::Add:
            return mk_add(differentiate(e->lhs, wrt_param, index),
                          differentiate(e->rhs, wrt_param, index));
        case ExprKind::Sub:
            return mk_sub(differentiate(e->lhs, wrt_param, index),
                          differentiate(e->rhs, wrt_param, index));
        case ExprKind::Mul:
            return mk_add(mk_mul(differentiate(e->lhs, wrt_param, index), e->rhs),
                          mk_mul(e->lhs, differentiate(e->rhs, wrt_param, index)));
        case ExprKind::Div:
            return mk_div(mk_sub(mk_mul(differentiate(e->lhs, wrt_param, index), e->rhs),
                                 mk_mul(e->lhs, differentiate(e->rhs, wrt_param, index))),
                          mk_pow(e->rhs, 2));
        case ExprKind::Pow:
            // d u^k = k * u^(k-1) * u'
            return mk_mul(mk_mul(mk_const(static_cast<double>(e->exponent)),
                                 mk_pow(e->lhs, e->exponent - 1)),
                          differentiate(e->lhs, wrt_param, index));
    }
    throw std::logic_error("differentiate: unreachable");
}

Interval natural_eval(const ExprPtr& e, const IntervalVector& a_env, const IntervalVector& x_env) {
    switch (e->kind) {
        case ExprKind::Constant:
            return Interval(e->value);
        case ExprKind::Var:
            return x_env[static_cast<size_t>(e->index)];
        case ExprKind::Param:
            return a_env[static_cast<size_t>(e->index)];
        case ExprKind::Neg:
            return neg(natural_eval(e->lhs, a_env, x_env));
        case ExprKind::Add:
            return add(natural_eval(e->lhs, a_env, x_env), natural_eval(e->rhs, a_env, x_env));
        case ExprKind::Sub:
            return sub(natural_eval(e->lhs, a_env, x_env), natural_eval(e->rhs, a_env, x_env));
        case ExprKind::Mul:
            return mul(natural_eval(e->lhs, a_env, x_env), natural_eval(e->rhs, a_env, x_env));
        case ExprKind::Div: {
            Interval num = natural_eval(e->lhs, a_env, x_env);
            Interval den = natural_eval(e->rhs, a_env, x_env);
            if (!den.is_empty() && den.contains_zero())
                throw EvalError("nonsmooth/undefined over box: division by an interval containing zero");
            return div(num, den);
        }
        case ExprKind::Pow:
            return pow_int(natural_eval(e->lhs, a_env, x_env), e->exponent);
    }
    throw std::logic_error("natural_eval: unreachable");
}

static int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

static void print_expr(std::string& out, const ExprPtr& e,
                       const std::vector<std::string>& var_names,
                       const std::vector<std::string>& param_names, int parent_prec,
                       bool right_side) {
    int prec = precedence(e->kind);
    bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (parens) out.push_back('(');
    switch (e->kind) {
        case ExprKind::Constant: {
            if (e->value < 0.0) {
                // Negative literals print as a unary minus application.
                out.push_back('-');
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", -e->value);
                out += buf;
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", e->value);
                out += buf;
            }
            break;
        }
        case ExprKind::Var:
            out += var_names[static_cast<size_t>(e->index)];
            break;
        case ExprKind::Param:
            out += param_names[static_cast<size_t>(e->index)];
            break;
        case ExprKind::Neg:
            out.push_back('-');
            print_expr(out, e->lhs, var_names, param_names, precedence(ExprKind::Neg), true);
            break;
        case ExprKind::Add:
            print_expr(out, e->lhs, var_names, param_names, 1, false);
            out += " + ";
            print_expr(out, e->rhs, var_names, param_names, 1, true);
            break;
        case ExprKind::Sub:
            print_expr(out, e->lhs, var_names, param_names, 1, false);
            out += " - ";
            print_expr(out, e->rhs, var_names, param_names, 1, true);
            break;
        case ExprKind::Mul:
            print_expr(out, e->lhs, var_names, param_names, 2, false);
            out += "*";
            print_expr(out, e->rhs, var_names, param_names, 2, true);
            break;
        case ExprKind::Div:
            print_expr(out, e->lhs, var_names, param_names, 2, false);
            out += "/";
            print_expr(out, e->rhs, var_names, param_names, 2, true);
            break;
        case ExprKind::Pow: {
            print_expr(out, e->lhs, var_names, param_names, 5, false);
            char buf[16];
            std::snprintf(buf, sizeof buf, "^%d", e->exponent);
            out += buf;
            break;
        }
    }
    if (parens) out.push_back(')');
}

std::string expr_to_string(const ExprPtr& e, const std::vector<std::string>& var_names,
                           const std::vector<std::string>& param_names) {
    std::string out;
    print_expr(out, e, var_names, param_names, 0, false);
    return out;
}

ParametricSystem make_system(std::vector<std::string> var_names,
                             std::vector<std::string> param_names,
                             std::vector<ExprPtr> equations) {
    ParametricSystem sys;
    sys.n = static_cast<int>(var_names.size());
    sys.p = static_cast<int>(param_names.size());
    sys.var_names = std::move(var_names);
    sys.param_names = std::move(param_names);
    sys.f = std::move(equations);
    if (static_cast<int>(sys.f.size()) != sys.n)
        throw std::invalid_argument("make_system: need exactly as many equations as variables");
    sys.jac_x.resize(static_cast<size_t>(sys.n));
    sys.jac_a.resize(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i) {
        for (int j = 0; j < sys.n; ++j)
            sys.jac_x[static_cast<size_t>(i)].push_back(
                differentiate(sys.f[static_cast<size_t>(i)], false, j));
        for (int j = 0; j < sys.p; ++j)
            sys.jac_a[static_cast<size_t>(i)].push_back(
                differentiate(sys.f[static_cast<size_t>(i)], true, j));
    }
    return sys;
}

IntervalVector eval_f(const ParametricSystem& sys, const IntervalVector& a_env,
                      const IntervalVector& x_env) {
    IntervalVector out;
    out.reserve(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i)
        out.push_back(natural_eval(sys.f[static_cast<size_t>(i)], a_env, x_env));
    return out;
}

IntervalMatrix eval_jac_x(const ParametricSystem& sys, const IntervalVector& a_env,
                          const IntervalVector& x_env) {
    IntervalMatrix out(sys.n, sys.n);
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j)
            out.at(i, j) = natural_eval(sys.jac_x[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                        a_env, x_env);
    return out;
}

IntervalMatrix eval_jac_a(const ParametricSystem& sys, const IntervalVector& a_env,
                          const IntervalVector& x_env) {
    IntervalMatrix out(sys.n, sys.p);
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.p; ++j)
            out.at(i, j) = natural_eval(sys.jac_a[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                        a_env, x_env);
    return out;
}

}  // namespace parenc
