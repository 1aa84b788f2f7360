#pragma once

// The operator layer: one-dimensional gamma, the interval Gauss-Seidel sweep
// with an explicit outer domain [z], the Hansen-Sengupta and Krawczyk
// operators, their preconditioned parametric variants, and the strict-interior
// existence certificate.
//
// The parametric variants contract an enclosure of the united solution set
// { x : exists a in [a], f(a,x) = 0 } restricted to the input box: every such
// solution stays in the output box, and ExistenceProved additionally certifies
// that f(a, .) has a unique zero in the output box for every a in [a].

#include "parenc/expr.hpp"
#include "parenc/linalg.hpp"

namespace parenc {

enum class Status { Empty, Contracted, ExistenceProved, PreconditionerSingular };

struct ContractionOutcome {
    Status status = Status::Contracted;
    IntervalVector box;
};

enum class OperatorKind { HansenSengupta, Krawczyk };

struct OperatorConfig {
    OperatorKind op = OperatorKind::HansenSengupta;
    // The Krawczyk image is not intersected with the input box unless asked:
    // the operator definition has no intersection, and the reported iteration
    // sequences are reproduced without one.
    bool krawczyk_intersect = false;
};

// Hull of { x in dom : a*x = b for some a in [a], b in [b] }.
// For 0 not in a this is (b / a) intersected with dom; otherwise the hull of
// the extended-division pieces clipped to dom.
Interval gamma(const Interval& a, const Interval& b, const Interval& dom);

// One interval Gauss-Seidel sweep: row i solves
//   x'_i = gamma(A_ii, b_i - sum_{j<i} A_ij x'_j - sum_{j>i} A_ij x_j, z_i),
// already-updated components feeding later rows.  Returns an empty box as
// soon as some row comes back empty (remaining rows are skipped).
IntervalVector gauss_seidel(const IntervalMatrix& A, const IntervalVector& b,
                            const IntervalVector& x, const IntervalVector& z);

// Hansen-Sengupta: xt + gauss_seidel(X, -y, x - xt, z - xt).
IntervalVector hansen_sengupta(const IntervalMatrix& X, const IntervalVector& y,
                               const IntervalVector& x, const IntervalVector& z,
                               const RealVector& xt);

// Krawczyk kernel: b + (I - A) * x, evaluated literally.
IntervalVector krawczyk_kernel(const IntervalMatrix& A, const IntervalVector& b,
                               const IntervalVector& x);

// Parametric residual [y] := C*[f](at, xt) + (C*[A])*([a] - at) with
// [A] = [df/da]([a], xt); the left product C*[A] is formed first.
IntervalVector residual_enclosure(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const RealVector& at, const RealVector& xt,
                                  const RealMatrix& C);

// Preconditioned parametric Hansen-Sengupta on (x, z), x subseteq z.
ContractionOutcome parametric_hs(const ParametricSystem& sys, const IntervalVector& a_box,
                                 const IntervalVector& x, const IntervalVector& z);

// Preconditioned parametric Krawczyk: xt + kernel(C*[X], -[y], x - xt).
ContractionOutcome parametric_krawczyk(const ParametricSystem& sys, const IntervalVector& a_box,
                                       const IntervalVector& x, const OperatorConfig& cfg);

// Dispatch on cfg.op with z = the comparison box used for the interior test.
ContractionOutcome apply_operator(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const IntervalVector& x, const IntervalVector& z,
                                  const OperatorConfig& cfg);

// Strict componentwise interior test; false on empty result or any zero-width
// reference component (whose interior is empty).
bool check_existence(const IntervalVector& result, const IntervalVector& reference);

}  // namespace parenc
