#pragma once

// Problem-file parsing: variables, parameter box, optional initial box and
// nominal point, equations.  Grammar (line comments with '#'):
//
//   vars x1, x2;
//   params a1 in [0.475,0.525], a2 in [-0.025,0.025], a3 in [0.975,1.025];
//   box x1 in [-0.2,0.2], x2 in [-0.7,1.1];        (optional)
//   nominal x1 = 0.01, x2 = 0.85;                  (optional)
//   eq (x1+a1)^2 + (x2-a2)^2 - 1;
//
// Expressions: + - * / ^ with ^ binding tightest, parentheses, unary minus,
// decimal literals; pow exponents are literal non-negative integers.

#include <optional>
#include <stdexcept>
#include <string>

#include "parenc/expr.hpp"

namespace parenc {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg), line(l), col(c) {}
};

struct ProblemInstance {
    ParametricSystem system;
    IntervalVector param_box;
    std::optional<IntervalVector> initial_box;
    std::optional<RealVector> nominal_point;
};

ProblemInstance parse_problem(const std::string& text);

// Canonical text form; re-parsing yields a structurally identical instance.
std::string pretty_print(const ProblemInstance& prob);

}  // namespace parenc
