#include "parenc/contractors.hpp"

#include "parenc/poly.hpp"

namespace parenc {

Interval gamma(const Interval& a, const Interval& b, const Interval& dom) {
    if (a.is_empty() || b.is_empty() || dom.is_empty()) return Interval::empty();
    if (!a.contains_zero()) return intersect(div(b, a), dom);
    ExtendedDivisionResult pieces = extended_divide(b, a);
    Interval r = Interval::empty();
    for (int i = 0; i < pieces.count; ++i) r = hull(r, intersect(pieces.piece[i], dom));
    return r;
}

IntervalVector gauss_seidel(const IntervalMatrix& A, const IntervalVector& b,
                            const IntervalVector& x, const IntervalVector& z) {
    const std::size_t n = x.size();
    IntervalVector xp = x;  // row i reads updated components for j < i
    for (std::size_t i = 0; i < n; ++i) {
        Interval s = b[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            s = sub(s, mul(A.at(static_cast<int>(i), static_cast<int>(j)), xp[j]));
        }
        Interval xi = gamma(A.at(static_cast<int>(i), static_cast<int>(i)), s, z[i]);
        if (xi.is_empty()) return empty_box(n);
        xp[i] = xi;
    }
    return xp;
}

IntervalVector hansen_sengupta(const IntervalMatrix& X, const IntervalVector& y,
                               const IntervalVector& x, const IntervalVector& z,
                               const RealVector& xt) {
    const std::size_t n = x.size();
    IntervalVector b(n), xs(n), zs(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = neg(y[i]);
        xs[i] = sub(x[i], Interval(xt[i]));
        zs[i] = sub(z[i], Interval(xt[i]));
    }
    IntervalVector g = gauss_seidel(X, b, xs, zs);
    if (box_is_empty(g)) return empty_box(n);
    IntervalVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Translating back rounds outward, which can poke past [z] by an ULP;
        // the exact result lies in [z], so clipping keeps the enclosure sound
        // and the operator a true contraction onto its domain.
        out[i] = intersect(add(Interval(xt[i]), g[i]), z[i]);
        if (out[i].is_empty()) return empty_box(n);
    }
    return out;
}

IntervalVector krawczyk_kernel(const IntervalMatrix& A, const IntervalVector& b,
                               const IntervalVector& x) {
    const std::size_t n = x.size();
    IntervalVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Interval s = b[i];
        for (std::size_t j = 0; j < n; ++j) {
            Interval ima = sub(Interval(i == j ? 1.0 : 0.0),
                               A.at(static_cast<int>(i), static_cast<int>(j)));
            s = add(s, mul(ima, x[j]));
        }
        out[i] = s;
    }
    return out;
}

IntervalVector residual_enclosure(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const RealVector& at, const RealVector& xt,
                                  const RealMatrix& C) {
    IntervalVector fv = eval_f(sys, degenerate_box(at), degenerate_box(xt));
    IntervalVector cf = real_mat_iv_vec(C, fv);
    IntervalMatrix A = eval_jac_a(sys, a_box, degenerate_box(xt));
    IntervalMatrix CA = real_mat_iv_mat(C, A);
    IntervalVector da(a_box.size());
    for (std::size_t j = 0; j < a_box.size(); ++j) da[j] = sub(a_box[j], Interval(at[j]));
    IntervalVector corr = iv_mat_vec(CA, da);
    IntervalVector out(static_cast<std::size_t>(sys.n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(cf[i], corr[i]);
    return out;
}

namespace {

Status classify(const IntervalVector& out, const IntervalVector& x) {
    if (box_is_empty(out)) return Status::Empty;
    if (check_existence(out, x)) return Status::ExistenceProved;
    return Status::Contracted;
}

// Shared preamble of both parametric operators: [X], C = (mid[X])^-1,
// [y], and the collected product C*[X].
struct Preconditioned {
    bool singular = false;
    RealVector xt, at;
    IntervalVector y;
    IntervalMatrix CX;
};

Preconditioned precondition(const ParametricSystem& sys, const IntervalVector& a_box,
                            const IntervalVector& x) {
    Preconditioned pre;
    IntervalMatrix X = eval_jac_x(sys, a_box, x);
    std::optional<RealMatrix> C = mat_inverse(mid_matrix(X));
    if (!C) {
        pre.singular = true;
        return pre;
    }
    pre.xt = mid_vec(x);
    pre.at = mid_vec(a_box);
    pre.y = residual_enclosure(sys, a_box, pre.at, pre.xt, *C);
    pre.CX = preconditioned_jacobian(*C, sys, a_box, x);
    return pre;
}

}  // namespace

ContractionOutcome parametric_hs(const ParametricSystem& sys, const IntervalVector& a_box,
                                 const IntervalVector& x, const IntervalVector& z) {
    if (box_is_empty(x)) return {Status::Empty, empty_box(x.size())};
    if (!box_is_bounded(x)) return {Status::PreconditionerSingular, x};
    Preconditioned pre = precondition(sys, a_box, x);
    if (pre.singular) return {Status::PreconditionerSingular, x};
    IntervalVector out = hansen_sengupta(pre.CX, pre.y, x, z, pre.xt);
    Status st = classify(out, x);
    if (st == Status::Empty) return {st, empty_box(x.size())};
    return {st, out};
}

ContractionOutcome parametric_krawczyk(const ParametricSystem& sys, const IntervalVector& a_box,
                                       const IntervalVector& x, const OperatorConfig& cfg) {
    if (box_is_empty(x)) return {Status::Empty, empty_box(x.size())};
    if (!box_is_bounded(x)) return {Status::PreconditionerSingular, x};
    Preconditioned pre = precondition(sys, a_box, x);
    if (pre.singular) return {Status::PreconditionerSingular, x};
    const std::size_t n = x.size();
    IntervalVector b(n), xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = neg(pre.y[i]);
        xs[i] = sub(x[i], Interval(pre.xt[i]));
    }
    IntervalVector k = krawczyk_kernel(pre.CX, b, xs);
    IntervalVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = add(Interval(pre.xt[i]), k[i]);
    if (cfg.krawczyk_intersect)
        for (std::size_t i = 0; i < n; ++i) out[i] = intersect(out[i], x[i]);
    Status st = classify(out, x);
    if (st == Status::Empty) return {st, empty_box(n)};
    return {st, out};
}

ContractionOutcome apply_operator(const ParametricSystem& sys, const IntervalVector& a_box,
                                  const IntervalVector& x, const IntervalVector& z,
                                  const OperatorConfig& cfg) {
    if (cfg.op == OperatorKind::HansenSengupta) return parametric_hs(sys, a_box, x, z);
    return parametric_krawczyk(sys, a_box, x, cfg);
}

bool check_existence(const IntervalVector& result, const IntervalVector& reference) {
    if (result.size() != reference.size() || result.empty()) return false;
    if (box_is_empty(result)) return false;
    for (std::size_t i = 0; i < result.size(); ++i)
        if (!(result[i].lo > reference[i].lo && result[i].hi < reference[i].hi)) return false;
    return true;
}

}  // namespace parenc
