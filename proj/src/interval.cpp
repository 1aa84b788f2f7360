#include "parenc/interval.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace parenc {

// Case table for 0 in [a] (endpoints use directed rounding so every piece
// encloses its exact half-line):
//   0 in [b]            -> whole line
//   [a] = [0,0], 0 not in [b] -> empty
//   hi(b) < 0           -> (-inf, hi(b)/hi(a)] u [hi(b)/lo(a), +inf)
//   lo(b) > 0           -> (-inf, lo(b)/lo(a)] u [lo(b)/hi(a), +inf)
// with a zero endpoint of [a] dropping the corresponding half-line.
ExtendedDivisionResult extended_divide(const Interval& b, const Interval& a) {
    if (a.is_empty() || b.is_empty())
        throw std::domain_error("extended_divide of empty interval");
    if (!a.contains_zero())
        throw std::domain_error("extended_divide requires 0 in the divisor");
    ExtendedDivisionResult out;
    const double inf = std::numeric_limits<double>::infinity();
    if (b.contains_zero()) {
        out.push(Interval::whole());
        return out;
    }
    if (a.lo == 0.0 && a.hi == 0.0) return out;
    if (b.hi < 0.0) {
        if (a.hi != 0.0) out.push(Interval(-inf, round::div_up(b.hi, a.hi)));
        if (a.lo != 0.0) out.push(Interval(round::div_down(b.hi, a.lo), inf));
    } else {  // b.lo > 0
        if (a.lo != 0.0) out.push(Interval(-inf, round::div_up(b.lo, a.lo)));
        if (a.hi != 0.0) out.push(Interval(round::div_down(b.lo, a.hi), inf));
    }
    return out;
}

static std::string endpoint_to_string(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(const Interval& x) {
    if (x.is_empty()) return "empty";
    return "[" + endpoint_to_string(x.lo) + "," + endpoint_to_string(x.hi) + "]";
}

static const char* skip_ws(const char* s) {
    while (*s && std::isspace(static_cast<unsigned char>(*s))) ++s;
    return s;
}

static bool parse_endpoint(const char*& s, double& out) {
    s = skip_ws(s);
    const char* p = s;
    bool negative = false;
    if (*p == '+' || *p == '-') {
        negative = (*p == '-');
        ++p;
    }
    if (std::strncmp(p, "inf", 3) == 0) {
        out = negative ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
        s = p + 3;
        return true;
    }
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || std::isnan(v)) return false;
    out = v;
    s = end;
    return true;
}

static bool match_word_ci(const char* s, const char* word) {
    size_t n = std::strlen(word);
    for (size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
    return *skip_ws(s + n) == '\0';
}

Interval interval_from_string(const std::string& text) {
    const char* s = skip_ws(text.c_str());
    if (match_word_ci(s, "empty")) return Interval::empty();
    if (*s != '[') throw std::invalid_argument("interval literal must start with '[' or be 'empty'");
    ++s;
    double lo, hi;
    if (!parse_endpoint(s, lo)) throw std::invalid_argument("bad lower endpoint in interval literal");
    s = skip_ws(s);
    if (*s != ',') throw std::invalid_argument("expected ',' in interval literal");
    ++s;
    if (!parse_endpoint(s, hi)) throw std::invalid_argument("bad upper endpoint in interval literal");
    s = skip_ws(s);
    if (*s != ']') throw std::invalid_argument("expected ']' in interval literal");
    s = skip_ws(s + 1);
    if (*s != '\0') throw std::invalid_argument("trailing characters after interval literal");
    if (lo > hi) throw std::invalid_argument("interval literal with lo > hi");
    return Interval(lo, hi);
}

// True iff v is exactly an integer multiple of 10^-digits.  The fma residual
// makes the scaled product exact as a double pair; values at or beyond 2^53
// are integral anyway.
static bool exact_at_decimals(double v, int digits) {
    double scale = std::pow(10.0, digits);
    double y = v * scale;
    if (std::fabs(y) >= 9007199254740992.0) return true;
    double r = std::fma(v, scale, -y);
    return r == 0.0 && y == std::trunc(y);
}

// Step the decimal string s (format [-]ddd.ddd with exactly `digits`
// fractional digits) one unit in the last place toward -inf (dir<0) or +inf
// (dir>0), via a scaled 128-bit integer.
static std::string decimal_step(const std::string& s, int digits, int dir) {
    bool negative = !s.empty() && s[0] == '-';
    __int128 n = 0;
    for (char c : s)
        if (c >= '0' && c <= '9') n = n * 10 + (c - '0');
    if (negative) n = -n;
    n += dir;
    bool out_neg = n < 0;
    unsigned __int128 m = out_neg ? static_cast<unsigned __int128>(-n)
                                  : static_cast<unsigned __int128>(n);
    std::string rev;
    do {
        rev.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    } while (m != 0);
    while (static_cast<int>(rev.size()) < digits + 1) rev.push_back('0');
    std::string out;
    if (out_neg) out.push_back('-');
    for (int i = static_cast<int>(rev.size()) - 1; i >= 0; --i) {
        out.push_back(rev[static_cast<size_t>(i)]);
        if (i == digits && digits > 0) out.push_back('.');
    }
    return out;
}

std::string format_decimal_outward(double v, int digits, bool roundup) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    if (digits < 0) digits = 0;
    if (digits > 17) digits = 17;  // keeps the 10^digits scale exact below
    if (std::fabs(v) >= 1e15) {
        // Exactly representable territory; shortest exact form is rigorous.
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s(buf);
    double back = std::strtod(s.c_str(), nullptr);
    // The printed decimal d satisfies |d - v| <= 0.5 ulp(10^-digits); RN
    // monotonicity gives: strtod(s) < v implies d <= v, and symmetrically.
    // On the ambiguous strtod(s) == v case we step outward unless v is an
    // exact `digits`-decimal (one extra decimal ULP of slack is still sound).
    bool need_step;
    if (roundup)
        need_step = back < v || (back == v && !exact_at_decimals(v, digits));
    else
        need_step = back > v || (back == v && !exact_at_decimals(v, digits));
    if (need_step) s = decimal_step(s, digits, roundup ? +1 : -1);
    return s;
}

}  // namespace parenc
