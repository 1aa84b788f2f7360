// parenc: verified enclosure of solutions of parametric nonlinear systems.
//
//   parenc contract    refine an initial box with a parametric operator
//   parenc compare     Hansen-Sengupta vs Krawczyk width-ratio table
//   parenc sensitivity epsilon-inflation certificate from a nominal solution
//   parenc check       parse and echo a problem (system, Jacobians, box)
//
// Exit codes: 0 success / existence proved; 1 no certificate; 2 proved empty;
// 64 problem-file diagnostics.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "parenc/parser.hpp"
#include "parenc/sensitivity.hpp"

namespace {

using namespace parenc;

constexpr int kExitDiagnostics = 64;

struct Options {
    std::string problem;
    std::string op = "hs";
    bool kr_intersect = false;
    int max_iter = 20;
    double delta = 1.01;
    int kmax = 10;
    std::string csv;
    int precision = 3;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

OperatorConfig operator_config(const Options& opt) {
    OperatorConfig cfg;
    cfg.op = opt.op == "krawczyk" ? OperatorKind::Krawczyk : OperatorKind::HansenSengupta;
    cfg.krawczyk_intersect = opt.kr_intersect;
    return cfg;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Empty: return "empty";
        case Status::Contracted: return "contracted";
        case Status::ExistenceProved: return "existence proved";
        case Status::PreconditionerSingular: return "preconditioner singular";
    }
    return "?";
}

// Human-facing boxes are printed with outward decimal rounding so the printed
// certificate contains the computed one.
std::string fmt_box(const IntervalVector& box, int prec) {
    std::string s = "(";
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (i) s += ", ";
        if (box[i].is_empty()) {
            s += "empty";
            continue;
        }
        s += "[" + format_decimal_outward(box[i].lo, prec, false) + "," +
             format_decimal_outward(box[i].hi, prec, true) + "]";
    }
    return s + ")";
}

// Shortest round-trip form, for echoing parsed data back.
std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::FILE* open_csv(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open CSV output file: " + path);
    return f;
}

void write_trace_csv(const std::string& path, const IterationTrace& trace,
                     const std::vector<std::string>& var_names) {
    std::FILE* f = open_csv(path);
    std::fprintf(f, "k");
    for (const auto& name : var_names) std::fprintf(f, ",%s_lo,%s_hi", name.c_str(), name.c_str());
    std::fprintf(f, ",width_norm,existence\n");
    for (const TraceStep& s : trace.steps) {
        std::fprintf(f, "%d", s.k);
        for (const Interval& c : s.box) std::fprintf(f, ",%.17g,%.17g", c.lo, c.hi);
        std::fprintf(f, ",%.17g,%d\n", s.width_norm, s.existence ? 1 : 0);
    }
    std::fclose(f);
}

int cmd_contract(const Options& opt) {
    ProblemInstance prob = parse_problem(read_file(opt.problem));
    if (!prob.initial_box) {
        std::fprintf(stderr, "error: problem has no box declaration\n");
        return kExitDiagnostics;
    }
    IterationTrace t = refine(prob.system, prob.param_box, *prob.initial_box,
                              operator_config(opt), opt.max_iter);
    for (const TraceStep& s : t.steps)
        std::printf("k=%-2d  box=%s  width=%.6e  existence=%s\n", s.k,
                    fmt_box(s.box, opt.precision).c_str(), s.width_norm,
                    s.existence ? "yes" : "no");
    if (t.existence_step)
        std::printf("existence step: %d\n", *t.existence_step);
    else
        std::printf("existence step: none\n");
    std::printf("final enclosure: %s\n", fmt_box(t.steps.back().box, opt.precision).c_str());
    std::printf("status: %s\n", status_name(t.final_status));
    if (!opt.csv.empty()) write_trace_csv(opt.csv, t, prob.system.var_names);
    switch (t.final_status) {
        case Status::ExistenceProved: return 0;
        case Status::Empty: return 2;
        default: return 1;
    }
}

int cmd_compare(const Options& opt) {
    ProblemInstance prob = parse_problem(read_file(opt.problem));
    if (!prob.initial_box) {
        std::fprintf(stderr, "error: problem has no box declaration\n");
        return kExitDiagnostics;
    }
    auto rows = compare_operators(prob.system, prob.param_box, *prob.initial_box, opt.max_iter);
    std::FILE* f = opt.csv.empty() ? stdout : open_csv(opt.csv);
    std::fprintf(f, "k,hs_width,kr_width,ratio\n");
    for (const ComparisonRow& r : rows)
        std::fprintf(f, "%d,%.17g,%.17g,%.17g\n", r.k, r.hs_width, r.kr_width, r.ratio);
    if (f != stdout) std::fclose(f);
    double peak = 0.0;
    int peak_k = 0;
    for (const ComparisonRow& r : rows)
        if (r.k >= 1 && r.ratio > peak) {
            peak = r.ratio;
            peak_k = r.k;
        }
    std::printf("peak ratio %.6g at step %d\n", peak, peak_k);
    return 0;
}

int cmd_sensitivity(const Options& opt) {
    ProblemInstance prob = parse_problem(read_file(opt.problem));
    if (!prob.nominal_point) {
        std::fprintf(stderr, "error: problem has no nominal declaration\n");
        return kExitDiagnostics;
    }
    InflationConfig icfg;
    icfg.k_max = opt.kmax;
    icfg.delta = opt.delta;
    InflationResult r = inflate_and_prove(prob.system, prob.param_box, *prob.nominal_point,
                                          icfg, operator_config(opt));
    for (const TraceStep& s : r.trace.steps)
        std::printf("k=%-2d  box=%s  included=%s\n", s.k, fmt_box(s.box, opt.precision).c_str(),
                    s.existence ? "yes" : "no");
    if (!opt.csv.empty()) write_trace_csv(opt.csv, r.trace, prob.system.var_names);
    if (!r.success) {
        std::printf("FAILED (returned whole space)\n");
        return 1;
    }
    std::printf("existence first proved at iteration %d\n", *r.trace.existence_step);
    std::printf("certified enclosure: %s\n", fmt_box(r.result, opt.precision).c_str());
    return 0;
}

int cmd_check(const Options& opt) {
    ProblemInstance prob = parse_problem(read_file(opt.problem));
    const ParametricSystem& sys = prob.system;
    std::printf("system: %d equations, %d variables, %d parameters\n", sys.n, sys.n, sys.p);
    for (int i = 0; i < sys.n; ++i)
        std::printf("f%d = %s\n", i + 1,
                    expr_to_string(sys.f[static_cast<std::size_t>(i)], sys.var_names,
                                   sys.param_names)
                        .c_str());
    std::printf("df/dx (%dx%d):\n", sys.n, sys.n);
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j)
            std::printf("  df%d/d%s = %s\n", i + 1, sys.var_names[static_cast<std::size_t>(j)].c_str(),
                        expr_to_string(sys.jac_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                       sys.var_names, sys.param_names)
                            .c_str());
    std::printf("df/da (%dx%d):\n", sys.n, sys.p);
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.p; ++j)
            std::printf("  df%d/d%s = %s\n", i + 1, sys.param_names[static_cast<std::size_t>(j)].c_str(),
                        expr_to_string(sys.jac_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                       sys.var_names, sys.param_names)
                            .c_str());
    std::printf("parameter box:\n");
    for (int j = 0; j < sys.p; ++j)
        std::printf("  %s in [%s,%s]\n", sys.param_names[static_cast<std::size_t>(j)].c_str(),
                    shortest(prob.param_box[static_cast<std::size_t>(j)].lo).c_str(),
                    shortest(prob.param_box[static_cast<std::size_t>(j)].hi).c_str());
    if (prob.initial_box) {
        std::printf("initial box:\n");
        for (int i = 0; i < sys.n; ++i)
            std::printf("  %s in [%s,%s]\n", sys.var_names[static_cast<std::size_t>(i)].c_str(),
                        shortest(prob.initial_box->at(static_cast<std::size_t>(i)).lo).c_str(),
                        shortest(prob.initial_box->at(static_cast<std::size_t>(i)).hi).c_str());
    }
    if (prob.nominal_point) {
        std::printf("nominal point:\n");
        for (int i = 0; i < sys.n; ++i)
            std::printf("  %s = %s\n", sys.var_names[static_cast<std::size_t>(i)].c_str(),
                        shortest(prob.nominal_point->at(static_cast<std::size_t>(i))).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verified enclosures for solutions of parametric nonlinear systems"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--problem", opt.problem, "Problem description file")->required();
        sub->add_option("--operator", opt.op, "Contracting operator")
            ->check(CLI::IsMember({"hs", "krawczyk"}))
            ->default_val("hs");
        sub->add_flag("--krawczyk-intersect", opt.kr_intersect,
                      "Intersect the Krawczyk image with the input box");
        sub->add_option("--max-iter", opt.max_iter, "Refinement iteration budget")
            ->check(CLI::PositiveNumber)
            ->default_val(20);
        sub->add_option("--delta", opt.delta, "Inter-step inflation ratio")
            ->check(CLI::Range(1.0 + 1e-12, 10.0))
            ->default_val(1.01);
        sub->add_option("--kmax", opt.kmax, "Maximum inflation iterations")
            ->check(CLI::PositiveNumber)
            ->default_val(10);
        sub->add_option("--csv", opt.csv, "Write the per-step table to this CSV file");
        sub->add_option("--precision", opt.precision, "Printed decimal digits (outward)")
            ->check(CLI::Range(0, 17))
            ->default_val(3);
    };

    CLI::App* contract = app.add_subcommand("contract", "Refine an initial box");
    CLI::App* compare = app.add_subcommand("compare", "Operator width-ratio table");
    CLI::App* sensitivity = app.add_subcommand("sensitivity", "Epsilon-inflation certificate");
    CLI::App* check = app.add_subcommand("check", "Parse and echo a problem file");
    for (CLI::App* sub : {contract, compare, sensitivity, check}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (contract->parsed()) return cmd_contract(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (sensitivity->parsed()) return cmd_sensitivity(opt);
        return cmd_check(opt);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s (line %d, column %d)\n", e.what(), e.line, e.col);
        return kExitDiagnostics;
    } catch (const EvalError& e) {
        // The system is not evaluable over the given boxes: no certificate.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDiagnostics;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
