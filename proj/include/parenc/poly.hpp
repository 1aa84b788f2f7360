#pragma once

// Sparse multivariate polynomial form of an expression, with interval
// coefficients.  Used to evaluate the preconditioned Jacobian C * [df/dx]:
// collecting the product rows symbolically before interval evaluation
// cancels terms that a literal interval matrix product cannot cancel
// (x - x = 0 symbolically but [x] - [x] = [-w, w] in interval arithmetic),
// which is what makes the preconditioned system quasi-diagonal.

#include <map>
#include <optional>
#include <vector>

#include "parenc/expr.hpp"
#include "parenc/linalg.hpp"

namespace parenc {

// Exponent vector: parameters first (p entries), then variables (n entries).
using Monomial = std::vector<int>;

// Monomial -> interval coefficient.  Interval coefficients keep the
// transformation rigorous even when constant folding is inexact.
using Polynomial = std::map<Monomial, Interval>;

// Expand e into polynomial form over p parameters and n variables.
// Returns nullopt if e contains a division or if the expansion exceeds
// max_terms monomials (callers then fall back to literal evaluation).
std::optional<Polynomial> polynomialize(const ExprPtr& e, int p, int n,
                                        std::size_t max_terms = 512);

// Add scale * src into dst, pruning coefficients that cancel to exactly zero.
void poly_axpy(Polynomial& dst, const Interval& scale, const Polynomial& src);

// Rigorous interval evaluation of the polynomial over the given boxes,
// accumulated in the map's (deterministic) iteration order.
Interval eval_poly(const Polynomial& poly, const IntervalVector& a_box,
                   const IntervalVector& x_box);

// C * [df/dx]([a],[x]) with row entries collected symbolically where
// possible; entries whose column contains a division fall back to the
// literal interval dot product.
IntervalMatrix preconditioned_jacobian(const RealMatrix& C, const ParametricSystem& sys,
                                       const IntervalVector& a_box,
                                       const IntervalVector& x_box);

}  // namespace parenc
