#include "parenc/parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace parenc {

namespace {

enum class TokKind { Ident, Number, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 0;
    int col = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

  private:
    void advance() {
        skip_ws_and_comments();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = TokKind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            if (pos_ < src_.size() && src_[pos_] == '.') {
                bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    bump();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t mark = pos_;
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        bump();
                } else {
                    pos_ = mark;  // 'e' belongs to something else
                }
            }
            tok_.kind = TokKind::Number;
            tok_.text = src_.substr(start, pos_ - start);
            tok_.number = std::strtod(tok_.text.c_str(), nullptr);
            return;
        }
        tok_.kind = TokKind::Punct;
        tok_.text = std::string(1, c);
        bump();
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ProblemInstance parse() {
        while (lex_.peek().kind != TokKind::End) statement();
        if (equations_.empty()) throw ParseError("no equations declared", 1, 1);
        if (equations_.size() != vars_.size())
            throw ParseError("declared " + std::to_string(vars_.size()) + " variable(s) but " +
                                 std::to_string(equations_.size()) + " equation(s)",
                             1, 1);
        ProblemInstance out;
        out.system = make_system(vars_, params_, equations_);
        out.param_box = param_box_;
        if (!box_.empty()) {
            IntervalVector b;
            for (const std::string& v : vars_) {
                auto it = box_.find(v);
                if (it == box_.end())
                    throw ParseError("box declaration missing variable '" + v + "'", 1, 1);
                b.push_back(it->second);
            }
            out.initial_box = b;
        }
        if (!nominal_.empty()) {
            RealVector nv;
            for (const std::string& v : vars_) {
                auto it = nominal_.find(v);
                if (it == nominal_.end())
                    throw ParseError("nominal declaration missing variable '" + v + "'", 1, 1);
                nv.push_back(it->second);
            }
            out.nominal_point = nv;
        }
        return out;
    }

  private:
    void statement() {
        Token t = lex_.peek();
        if (t.kind != TokKind::Ident)
            throw ParseError("expected a declaration (vars/params/box/nominal/eq)", t.line, t.col);
        if (t.text == "vars")
            parse_vars();
        else if (t.text == "params")
            parse_params();
        else if (t.text == "box")
            parse_box();
        else if (t.text == "nominal")
            parse_nominal();
        else if (t.text == "eq")
            parse_eq();
        else
            throw ParseError("unknown declaration '" + t.text + "'", t.line, t.col);
    }

    void expect_punct(const char* p) {
        Token t = lex_.peek();
        if (t.kind != TokKind::Punct || t.text != p)
            throw ParseError(std::string("expected '") + p + "'", t.line, t.col);
        lex_.take();
    }

    bool try_punct(const char* p) {
        const Token& t = lex_.peek();
        if (t.kind == TokKind::Punct && t.text == p) {
            lex_.take();
            return true;
        }
        return false;
    }

    std::string expect_ident() {
        Token t = lex_.peek();
        if (t.kind != TokKind::Ident)
            throw ParseError("expected an identifier", t.line, t.col);
        return lex_.take().text;
    }

    double expect_signed_number() {
        bool negative = false;
        while (true) {
            if (try_punct("-"))
                negative = !negative;
            else if (try_punct("+"))
                ;
            else
                break;
        }
        Token t = lex_.peek();
        if (t.kind != TokKind::Number) throw ParseError("expected a number", t.line, t.col);
        lex_.take();
        return negative ? -t.number : t.number;
    }

    Interval expect_interval() {
        expect_punct("[");
        double lo = expect_signed_number();
        expect_punct(",");
        double hi = expect_signed_number();
        expect_punct("]");
        if (lo > hi) {
            Token t = lex_.peek();
            throw ParseError("interval with lower bound above upper bound", t.line, t.col);
        }
        return Interval(lo, hi);
    }

    void check_fresh(const Token& at, const std::string& name) {
        if (var_index_.count(name) || param_index_.count(name))
            throw ParseError("duplicate declaration of '" + name + "'", at.line, at.col);
    }

    void parse_vars() {
        Token kw = lex_.take();
        if (!vars_.empty()) throw ParseError("duplicate vars declaration", kw.line, kw.col);
        do {
            Token at = lex_.peek();
            std::string name = expect_ident();
            check_fresh(at, name);
            var_index_[name] = static_cast<int>(vars_.size());
            vars_.push_back(name);
        } while (try_punct(","));
        expect_punct(";");
    }

    void parse_params() {
        Token kw = lex_.take();
        if (!params_.empty()) throw ParseError("duplicate params declaration", kw.line, kw.col);
        do {
            Token at = lex_.peek();
            std::string name = expect_ident();
            check_fresh(at, name);
            Token in = lex_.peek();
            if (in.kind != TokKind::Ident || in.text != "in")
                throw ParseError("expected 'in' after parameter name", in.line, in.col);
            lex_.take();
            Interval range = expect_interval();
            param_index_[name] = static_cast<int>(params_.size());
            params_.push_back(name);
            param_box_.push_back(range);
        } while (try_punct(","));
        expect_punct(";");
    }

    void parse_box() {
        Token kw = lex_.take();
        if (!box_.empty()) throw ParseError("duplicate box declaration", kw.line, kw.col);
        do {
            Token at = lex_.peek();
            std::string name = expect_ident();
            if (!var_index_.count(name))
                throw ParseError("box entry for unknown variable '" + name + "'", at.line, at.col);
            if (box_.count(name))
                throw ParseError("duplicate box entry for '" + name + "'", at.line, at.col);
            Token in = lex_.peek();
            if (in.kind != TokKind::Ident || in.text != "in")
                throw ParseError("expected 'in' after variable name", in.line, in.col);
            lex_.take();
            box_[name] = expect_interval();
        } while (try_punct(","));
        expect_punct(";");
    }

    void parse_nominal() {
        Token kw = lex_.take();
        if (!nominal_.empty()) throw ParseError("duplicate nominal declaration", kw.line, kw.col);
        do {
            Token at = lex_.peek();
            std::string name = expect_ident();
            if (!var_index_.count(name))
                throw ParseError("nominal entry for unknown variable '" + name + "'", at.line,
                                 at.col);
            if (nominal_.count(name))
                throw ParseError("duplicate nominal entry for '" + name + "'", at.line, at.col);
            expect_punct("=");
            nominal_[name] = expect_signed_number();
        } while (try_punct(","));
        expect_punct(";");
    }

    void parse_eq() {
        lex_.take();
        equations_.push_back(parse_expr());
        expect_punct(";");
    }

    // expr := term (('+'|'-') term)*
    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (true) {
            if (try_punct("+"))
                e = mk_add(e, parse_term());
            else if (try_punct("-"))
                e = mk_sub(e, parse_term());
            else
                return e;
        }
    }

    // term := factor (('*'|'/') factor)*
    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (true) {
            if (try_punct("*"))
                e = mk_mul(e, parse_factor());
            else if (try_punct("/"))
                e = mk_div(e, parse_factor());
            else
                return e;
        }
    }

    // factor := '-' factor | primary ('^' INT)?
    ExprPtr parse_factor() {
        if (try_punct("-")) return mk_neg(parse_factor());
        ExprPtr base = parse_primary();
        if (try_punct("^")) {
            Token t = lex_.peek();
            if (t.kind != TokKind::Number || t.text.find('.') != std::string::npos ||
                t.text.find('e') != std::string::npos || t.text.find('E') != std::string::npos)
                throw ParseError("exponent must be a non-negative integer literal", t.line, t.col);
            lex_.take();
            return mk_pow(base, static_cast<int>(t.number));
        }
        return base;
    }

    ExprPtr parse_primary() {
        Token t = lex_.peek();
        if (t.kind == TokKind::Number) {
            lex_.take();
            return mk_const(t.number);
        }
        if (t.kind == TokKind::Ident) {
            lex_.take();
            auto vi = var_index_.find(t.text);
            if (vi != var_index_.end()) return mk_var(vi->second);
            auto pi = param_index_.find(t.text);
            if (pi != param_index_.end()) return mk_param(pi->second);
            throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
        }
        if (t.kind == TokKind::Punct && t.text == "(") {
            lex_.take();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        throw ParseError("expected a number, identifier or '('", t.line, t.col);
    }

    Lexer lex_;
    std::vector<std::string> vars_, params_;
    std::map<std::string, int> var_index_, param_index_;
    IntervalVector param_box_;
    std::map<std::string, Interval> box_;
    std::map<std::string, double> nominal_;
    std::vector<ExprPtr> equations_;
};

std::string number_literal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ProblemInstance parse_problem(const std::string& text) { return Parser(text).parse(); }

std::string pretty_print(const ProblemInstance& prob) {
    const ParametricSystem& sys = prob.system;
    std::string out = "vars ";
    for (int i = 0; i < sys.n; ++i) {
        if (i) out += ", ";
        out += sys.var_names[static_cast<size_t>(i)];
    }
    out += ";\n";
    if (sys.p > 0) {
        out += "params ";
        for (int j = 0; j < sys.p; ++j) {
            if (j) out += ", ";
            const Interval& r = prob.param_box[static_cast<size_t>(j)];
            out += sys.param_names[static_cast<size_t>(j)] + " in [" + number_literal(r.lo) + "," +
                   number_literal(r.hi) + "]";
        }
        out += ";\n";
    }
    if (prob.initial_box) {
        out += "box ";
        for (int i = 0; i < sys.n; ++i) {
            if (i) out += ", ";
            const Interval& r = (*prob.initial_box)[static_cast<size_t>(i)];
            out += sys.var_names[static_cast<size_t>(i)] + " in [" + number_literal(r.lo) + "," +
                   number_literal(r.hi) + "]";
        }
        out += ";\n";
    }
    if (prob.nominal_point) {
        out += "nominal ";
        for (int i = 0; i < sys.n; ++i) {
            if (i) out += ", ";
            out += sys.var_names[static_cast<size_t>(i)] + " = " +
                   number_literal((*prob.nominal_point)[static_cast<size_t>(i)]);
        }
        out += ";\n";
    }
    for (int i = 0; i < sys.n; ++i)
        out += "eq " + expr_to_string(sys.f[static_cast<size_t>(i)], sys.var_names, sys.param_names) +
               ";\n";
    return out;
}

}  // namespace parenc
