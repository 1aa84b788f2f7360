#pragma once

// Expression trees for scalar functions of parameters and variables, with
// symbolic differentiation and natural interval evaluation.

#include <memory>
#include <string>
#include <vector>

#include "parenc/linalg.hpp"

namespace parenc {

enum class ExprKind { Constant, Var, Param, Neg, Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double value = 0.0;  // Constant
    int index = -1;      // Var / Param (0-based)
    int exponent = 0;    // Pow (always >= 2 after simplification)
    ExprPtr lhs, rhs;    // children; Neg and Pow use lhs only
};

ExprPtr mk_const(double v);
ExprPtr mk_var(int index);
ExprPtr mk_param(int index);
ExprPtr mk_neg(ExprPtr e);

// The binary factories apply only trivial simplifications (0*e -> 0,
// 1*e -> e, e+0 -> e, e-0 -> e, 0-e -> -e, e^0 -> 1, e^1 -> e); everything
// else is kept verbatim.
ExprPtr mk_add(ExprPtr a, ExprPtr b);
ExprPtr mk_sub(ExprPtr a, ExprPtr b);
ExprPtr mk_mul(ExprPtr a, ExprPtr b);
ExprPtr mk_div(ExprPtr a, ExprPtr b);
ExprPtr mk_pow(ExprPtr base, int k);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string expr_to_string(const ExprPtr& e, const std::vector<std::string>& var_names,
                           const std::vector<std::string>& param_names);

// d e / d(var index) or d e / d(param index) by the standard calculus rules.
ExprPtr differentiate(const ExprPtr& e, bool wrt_param, int index);

// Natural interval extension: every operation replaced by its interval
// version.  A division whose divisor interval contains zero is reported as
// an evaluation error ("nonsmooth/undefined over box").
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Interval natural_eval(const ExprPtr& e, const IntervalVector& a_env, const IntervalVector& x_env);

// n equations, n variables, p parameters, with precomputed symbolic
// Jacobians d f_i / d x_j and d f_i / d a_j.
struct ParametricSystem {
    int n = 0;
    int p = 0;
    std::vector<std::string> var_names;
    std::vector<std::string> param_names;
    std::vector<ExprPtr> f;
    std::vector<std::vector<ExprPtr>> jac_x;
    std::vector<std::vector<ExprPtr>> jac_a;
};

ParametricSystem make_system(std::vector<std::string> var_names,
                             std::vector<std::string> param_names,
                             std::vector<ExprPtr> equations);

IntervalVector eval_f(const ParametricSystem& sys, const IntervalVector& a_env,
                      const IntervalVector& x_env);
IntervalMatrix eval_jac_x(const ParametricSystem& sys, const IntervalVector& a_env,
                          const IntervalVector& x_env);
IntervalMatrix eval_jac_a(const ParametricSystem& sys, const IntervalVector& a_env,
                          const IntervalVector& x_env);

}  // namespace parenc
