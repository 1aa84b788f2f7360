// Drivers: refinement traces, operator comparison, epsilon-inflation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "parenc/parser.hpp"
#include "parenc/sensitivity.hpp"

using namespace parenc;

namespace {

const char* CIRCLES = R"(
vars x1, x2;
params a1 in [0.475,0.525], a2 in [-0.025,0.025], a3 in [0.975,1.025];
box x1 in [-0.22,0.22], x2 in [0.8,0.91];
nominal x1 = 0.01, x2 = 0.85;
eq (x1+a1)^2 + (x2-a2)^2 - 1;
eq (x1-a1)^2 + (x2+a2)^2 - a3^2;
)";

const char* LINEAR = "vars x; params a in [0.4,0.6]; eq x - a;";

bool subset(const IntervalVector& inner, const IntervalVector& outer) {
    for (size_t i = 0; i < inner.size(); ++i)
        if (inner[i].lo < outer[i].lo || inner[i].hi > outer[i].hi) return false;
    return true;
}

}  // namespace

TEST_CASE("width_norm: examples and errors") {
    CHECK(width_norm({Interval(-0.2, 0.2), Interval(-0.7, 1.1)}) == doctest::Approx(1.8).epsilon(1e-14));
    CHECK(width_norm({Interval(0.5), Interval(-3.0)}) == 0.0);
    CHECK(width_norm({Interval(0, 1), Interval::whole()}) ==
          std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(width_norm(empty_box(2)), std::domain_error);
}

TEST_CASE("refine: linear system reaches its fixed box immediately") {
    ProblemInstance prob = parse_problem(LINEAR);
    OperatorConfig cfg;
    IterationTrace t = refine(prob.system, prob.param_box, {Interval(-1, 1)}, cfg, 20);
    REQUIRE(t.existence_step.has_value());
    CHECK(*t.existence_step == 1);
    CHECK(t.final_status == Status::ExistenceProved);
    const IntervalVector& fin = t.steps.back().box;
    CHECK(fin[0].lo == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(fin[0].hi == doctest::Approx(0.6).epsilon(1e-12));
    // Fixed point stop, not max_iter exhaustion.
    CHECK(t.steps.size() < 21);
    CHECK(same_box(t.steps.back().box, t.steps[t.steps.size() - 2].box));
    // k = 0 row is the starting box.
    CHECK(t.steps[0].k == 0);
    CHECK(same_box(t.steps[0].box, {Interval(-1, 1)}));
    CHECK(t.steps[0].width_norm == 2.0);
}

TEST_CASE("refine: published pattern on the circle system") {
    ProblemInstance prob = parse_problem(CIRCLES);
    OperatorConfig hs_cfg, kr_cfg;
    kr_cfg.op = OperatorKind::Krawczyk;

    IterationTrace hs = refine(prob.system, prob.param_box, *prob.initial_box, hs_cfg, 30);
    IterationTrace kr = refine(prob.system, prob.param_box, *prob.initial_box, kr_cfg, 30);

    REQUIRE(hs.existence_step.has_value());
    REQUIRE(kr.existence_step.has_value());
    CHECK(*hs.existence_step == 3);
    CHECK(*kr.existence_step == 2);
    CHECK(hs.final_status == Status::ExistenceProved);
    CHECK(kr.final_status == Status::ExistenceProved);

    const double ref[4] = {-0.074, 0.075, 0.831, 0.901};
    for (const IterationTrace* t : {&hs, &kr}) {
        const IntervalVector& fin = t->steps.back().box;
        CHECK(std::fabs(fin[0].lo - ref[0]) < 5e-3);
        CHECK(std::fabs(fin[0].hi - ref[1]) < 5e-3);
        CHECK(std::fabs(fin[1].lo - ref[2]) < 5e-3);
        CHECK(std::fabs(fin[1].hi - ref[3]) < 5e-3);
    }

    // Monotone refinement for Hansen-Sengupta: each iterate nests in its
    // input box.
    for (size_t k = 1; k < hs.steps.size(); ++k)
        CHECK(subset(hs.steps[k].box, hs.steps[k - 1].box));

    // Determinism: bit-identical traces on a second run.
    IterationTrace hs2 = refine(prob.system, prob.param_box, *prob.initial_box, hs_cfg, 30);
    REQUIRE(hs2.steps.size() == hs.steps.size());
    for (size_t k = 0; k < hs.steps.size(); ++k) {
        CHECK(same_box(hs2.steps[k].box, hs.steps[k].box));
        CHECK(hs2.steps[k].existence == hs.steps[k].existence);
    }
}

TEST_CASE("refine: empty and singular stops") {
    ProblemInstance prob = parse_problem("vars x; params a in [0,1]; eq x - a;");
    OperatorConfig cfg;
    IterationTrace t = refine(prob.system, prob.param_box, {Interval(5, 6)}, cfg, 20);
    CHECK(t.final_status == Status::Empty);
    CHECK_FALSE(t.existence_step.has_value());
    CHECK(box_is_empty(t.steps.back().box));
    CHECK(t.steps.size() == 2);  // start + the emptying step

    ProblemInstance sq = parse_problem("vars x; params a in [1,2]; eq x^2 - a;");
    t = refine(sq.system, sq.param_box, {Interval(-2, 2)}, cfg, 20);
    CHECK(t.final_status == Status::PreconditionerSingular);
    CHECK(t.steps.size() == 2);
    CHECK(same_box(t.steps.back().box, {Interval(-2, 2)}));
}

TEST_CASE("compare_operators: circle system ratio series") {
    ProblemInstance prob = parse_problem(CIRCLES);
    auto rows = compare_operators(prob.system, prob.param_box, *prob.initial_box, 20);
    REQUIRE(rows.size() == 21);  // k = 0..20 (fixed-point traces extended)
    CHECK(rows[0].k == 0);
    CHECK(rows[0].ratio == 0.0);
    CHECK(rows[0].hs_width == rows[0].kr_width);

    double peak = -1.0;
    int peak_k = -1;
    for (const auto& r : rows) {
        if (r.k == 0) continue;
        CHECK(r.ratio >= -1e-12);                    // Krawczyk never sharper
        CHECK(r.hs_width <= r.kr_width + 1e-300);    // same fact, width form
        CHECK(r.ratio <= 12.0 * std::exp(-0.46 * r.k) + 0.05);
        if (r.ratio > peak) {
            peak = r.ratio;
            peak_k = r.k;
        }
    }
    CHECK(peak >= 0.15);
    CHECK(peak <= 0.25);
    CHECK(peak_k >= 1);
    CHECK(rows[15].ratio < 0.02);
}

TEST_CASE("compare_operators: trivial linear problem has a flat ratio") {
    ProblemInstance prob = parse_problem(LINEAR);
    auto rows = compare_operators(prob.system, prob.param_box, {Interval(-1, 1)}, 10);
    REQUIRE(rows.size() == 11);
    for (const auto& r : rows)
        if (r.k >= 1) CHECK(std::fabs(r.ratio) <= 1e-12);
}

TEST_CASE("inflate_and_prove: circle system certifies at iteration 4") {
    ProblemInstance prob = parse_problem(CIRCLES);
    InflationConfig cfg;
    OperatorConfig op;
    InflationResult r = inflate_and_prove(prob.system, prob.param_box, *prob.nominal_point,
                                          cfg, op);
    CHECK(r.success);
    CHECK(r.trace.final_status == Status::ExistenceProved);
    REQUIRE(r.trace.existence_step.has_value());
    CHECK(*r.trace.existence_step == 4);
    CHECK(r.trace.steps.size() == 11);  // k = 0..k_max, loop always runs out
    // Sanity bounds on the certified enclosure.
    CHECK(r.result[0].lo > -0.08);
    CHECK(r.result[0].hi < 0.08);
    CHECK(r.result[1].lo > 0.82);
    CHECK(r.result[1].hi < 0.91);

    // Freeze correctness: post-success iterates nest.
    for (size_t k = static_cast<size_t>(*r.trace.existence_step) + 1; k < r.trace.steps.size(); ++k)
        CHECK(subset(r.trace.steps[k].box, r.trace.steps[k - 1].box));
}

TEST_CASE("inflate_and_prove: linear system certifies at iteration 2") {
    // Iteration 1 starts from the degenerate nominal box, whose interior is
    // empty - strict inclusion can first fire at iteration 2.
    ProblemInstance prob = parse_problem(LINEAR);
    InflationConfig cfg;
    OperatorConfig op;
    InflationResult r = inflate_and_prove(prob.system, prob.param_box, {0.5}, cfg, op);
    CHECK(r.success);
    REQUIRE(r.trace.existence_step.has_value());
    CHECK(*r.trace.existence_step == 2);
    CHECK(r.result[0].lo <= 0.4);
    CHECK(r.result[0].hi >= 0.6);
    CHECK(r.result[0].lo > 0.35);
    CHECK(r.result[0].hi < 0.65);
}

TEST_CASE("inflate_and_prove: absurd parameter widths fall back to the whole space") {
    ProblemInstance prob = parse_problem(
        "vars x1, x2; params a1 in [-4.5,5.5], a2 in [-5.025,4.975], a3 in [-4,6];"
        "nominal x1 = 0.01, x2 = 0.85;"
        "eq (x1+a1)^2 + (x2-a2)^2 - 1;"
        "eq (x1-a1)^2 + (x2+a2)^2 - a3^2;");
    InflationConfig cfg;
    OperatorConfig op;
    InflationResult r = inflate_and_prove(prob.system, prob.param_box, *prob.nominal_point,
                                          cfg, op);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.trace.existence_step.has_value());
    CHECK(r.trace.steps.size() == 11);  // exactly k_max iterations + start row
    CHECK(same_box(r.result, whole_box(2)));
}

TEST_CASE("inflate_and_prove: respects a reduced k_max") {
    ProblemInstance prob = parse_problem(CIRCLES);
    InflationConfig cfg;
    cfg.k_max = 2;
    OperatorConfig op;
    InflationResult r = inflate_and_prove(prob.system, prob.param_box, *prob.nominal_point,
                                          cfg, op);
    CHECK_FALSE(r.success);  // needs 4 iterations
    CHECK(r.trace.steps.size() == 3);
    CHECK(same_box(r.result, whole_box(2)));
}
