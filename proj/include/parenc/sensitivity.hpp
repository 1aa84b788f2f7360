#pragma once

// Iteration drivers built on the parametric operators: refinement traces,
// the Hansen-Sengupta vs Krawczyk width comparison, and the epsilon-inflation
// existence procedure started from an approximate nominal solution.

#include <optional>
#include <vector>

#include "parenc/contractors.hpp"

namespace parenc {

struct TraceStep {
    int k = 0;
    IntervalVector box;
    double width_norm = 0.0;
    bool existence = false;
};

struct IterationTrace {
    std::vector<TraceStep> steps;          // step 0 is the starting box
    std::optional<int> existence_step;     // minimal k whose step has existence
    Status final_status = Status::Contracted;
};

// Max over components of wid; +inf if any component is unbounded; empty
// boxes are a domain error.
double width_norm(const IntervalVector& box);

// Iterate the configured operator from x0, with z = the current box for
// Hansen-Sengupta.  Stops at max_iter, on Empty, on PreconditionerSingular,
// or on a bit-exact fixed point (the repeated box is recorded, then the
// trace ends).
IterationTrace refine(const ParametricSystem& sys, const IntervalVector& a_box,
                      const IntervalVector& x0, const OperatorConfig& cfg, int max_iter);

struct ComparisonRow {
    int k = 0;
    double hs_width = 0.0;
    double kr_width = 0.0;
    double ratio = 0.0;  // (kr_width - hs_width) / hs_width, 0 at k = 0
};

// Both traces from the same x0 (Krawczyk without intersection).  A trace
// that stopped on a bit-exact fixed point stays at that box for all later k,
// so its width column is continued to max_iter; a trace ended by Empty or
// a singular preconditioner stops the table instead.
std::vector<ComparisonRow> compare_operators(const ParametricSystem& sys,
                                             const IntervalVector& a_box,
                                             const IntervalVector& x0, int max_iter);

struct InflationConfig {
    int k_max = 10;
    double delta = 1.01;
    bool freeze_after_success = true;
};

struct InflationResult {
    IterationTrace trace;   // step 0 is the degenerate box at x_star
    IntervalVector result;  // certified enclosure, or the whole space
    bool success = false;
};

// Epsilon-inflation existence procedure: from the degenerate box at x_star,
// each of the k_max iterations inflates about the midpoint by delta, applies
// the operator with z = the whole space, and tests strict interior inclusion
// against the inflated box.  After the first success the inflation step is
// replaced by the identity (when freeze_after_success), making the iteration
// contracting.  Without any success the result is the whole space.  A step
// returning Empty or PreconditionerSingular is recorded and the loop
// continues with the inflated box.
InflationResult inflate_and_prove(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const RealVector& x_star, const InflationConfig& cfg,
                                  const OperatorConfig& op_cfg);

}  // namespace parenc
