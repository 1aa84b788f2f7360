#include "parenc/sensitivity.hpp"

#include <stdexcept>

namespace parenc {

double width_norm(const IntervalVector& box) {
    if (box_is_empty(box)) throw std::domain_error("width_norm of an empty box");
    double m = 0.0;
    for (const Interval& c : box) {
        double w = wid(c);
        if (w > m) m = w;
    }
    return m;
}

namespace {

double step_width(const IntervalVector& box) {
    return box_is_empty(box) ? 0.0 : width_norm(box);
}

void record(IterationTrace& trace, int k, const IntervalVector& box, bool existence) {
    trace.steps.push_back({k, box, step_width(box), existence});
    if (existence && !trace.existence_step) trace.existence_step = k;
}

Status trace_wrapup(const IterationTrace& trace) {
    return trace.existence_step ? Status::ExistenceProved : Status::Contracted;
}

}  // namespace

IterationTrace refine(const ParametricSystem& sys, const IntervalVector& a_box,
                      const IntervalVector& x0, const OperatorConfig& cfg, int max_iter) {
    IterationTrace trace;
    record(trace, 0, x0, false);
    IntervalVector x = x0;
    for (int k = 1; k <= max_iter; ++k) {
        ContractionOutcome o = apply_operator(sys, a_box, x, x, cfg);
        if (o.status == Status::Empty) {
            record(trace, k, o.box, false);
            trace.final_status = Status::Empty;
            return trace;
        }
        if (o.status == Status::PreconditionerSingular) {
            record(trace, k, o.box, false);
            trace.final_status = Status::PreconditionerSingular;
            return trace;
        }
        bool fixed = same_box(o.box, x);
        record(trace, k, o.box, o.status == Status::ExistenceProved);
        x = o.box;
        if (fixed) break;
    }
    trace.final_status = trace_wrapup(trace);
    return trace;
}

std::vector<ComparisonRow> compare_operators(const ParametricSystem& sys,
                                             const IntervalVector& a_box,
                                             const IntervalVector& x0, int max_iter) {
    OperatorConfig hs_cfg;
    OperatorConfig kr_cfg;
    kr_cfg.op = OperatorKind::Krawczyk;
    IterationTrace hs = refine(sys, a_box, x0, hs_cfg, max_iter);
    IterationTrace kr = refine(sys, a_box, x0, kr_cfg, max_iter);

    // A fixed-point-terminated trace defines every later step (the box no
    // longer moves); a failed trace does not.
    auto extendable = [](const IterationTrace& t) {
        return t.final_status != Status::Empty && t.final_status != Status::PreconditionerSingular;
    };
    auto last_k = [&](const IterationTrace& t) {
        return extendable(t) ? max_iter : static_cast<int>(t.steps.size()) - 1;
    };
    auto width_at = [](const IterationTrace& t, int k) {
        const std::size_t last = t.steps.size() - 1;
        const std::size_t idx = static_cast<std::size_t>(k) < last ? static_cast<std::size_t>(k) : last;
        return t.steps[idx].width_norm;
    };

    const int kmax = std::min(last_k(hs), last_k(kr));
    std::vector<ComparisonRow> rows;
    rows.reserve(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
        ComparisonRow row;
        row.k = k;
        row.hs_width = width_at(hs, k);
        row.kr_width = width_at(kr, k);
        row.ratio = k == 0 ? 0.0 : (row.kr_width - row.hs_width) / row.hs_width;
        rows.push_back(row);
    }
    return rows;
}

InflationResult inflate_and_prove(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const RealVector& x_star, const InflationConfig& cfg,
                                  const OperatorConfig& op_cfg) {
    const std::size_t n = x_star.size();
    InflationResult res;
    IntervalVector x = degenerate_box(x_star);
    record(res.trace, 0, x, false);

    const Interval delta(cfg.delta);
    for (int k = 1; k <= cfg.k_max; ++k) {
        IntervalVector xp(n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((res.success && cfg.freeze_after_success) || !x[i].is_bounded()) {
                xp[i] = x[i];
                continue;
            }
            Interval c(mid(x[i]));
            xp[i] = add(c, mul(delta, sub(x[i], c)));
        }
        ContractionOutcome o = apply_operator(sys, a_box, xp, whole_box(n), op_cfg);
        if (o.status == Status::Empty || o.status == Status::PreconditionerSingular) {
            // Recorded, then the iteration carries on from the inflated box.
            record(res.trace, k, o.status == Status::Empty ? o.box : xp, false);
            x = xp;
            continue;
        }
        bool included = o.status == Status::ExistenceProved;
        record(res.trace, k, o.box, included);
        if (included) res.success = true;
        x = o.box;
    }

    if (res.success) {
        res.result = x;
        res.trace.final_status = Status::ExistenceProved;
    } else {
        res.result = whole_box(n);
        res.trace.final_status = Status::Contracted;
    }
    return res;
}

}  // namespace parenc
