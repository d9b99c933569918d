// Recursive-descent parser for polynomial and curve literals; grammar in
// docs/formats.md.  Parentheses enclose numeric coefficients only; '/'
// between digits is a rational coefficient; the curve form "(num)/(den)"
// is recognized structurally before polynomial parsing.

#include "amoebascope/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace amoebascope {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos;
    int line, col;

    explicit Cursor(const std::string& text, std::size_t start = 0, int l = 1,
                    int c = 1)
        : s(text), pos(start), line(l), col(c) {}

    bool end() const { return pos >= s.size(); }
    char peek() const { return end() ? '\0' : s[pos]; }
    char peek2() const { return pos + 1 < s.size() ? s[pos + 1] : '\0'; }

    void advance() {
        if (end()) return;
        if (s[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }

    void skip_ws() {
        while (!end() && std::isspace((unsigned char)s[pos])) advance();
    }

    [[noreturn]] void error(const std::string& msg) const {
        throw ParseError(msg, line, col);
    }
};

// position (line, col) of an absolute offset in text
std::pair<int, int> position_of(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return {line, col};
}

double parse_unsigned_decimal(Cursor& c) {
    if (!std::isdigit((unsigned char)c.peek()))
        c.error("expected a digit");
    std::string tok;
    while (std::isdigit((unsigned char)c.peek())) { tok += c.peek(); c.advance(); }
    if (c.peek() == '.') {
        tok += '.';
        c.advance();
        if (!std::isdigit((unsigned char)c.peek()))
            c.error("expected digits after decimal point");
        while (std::isdigit((unsigned char)c.peek())) { tok += c.peek(); c.advance(); }
    }
    if (c.peek() == 'e' || c.peek() == 'E') {
        // scientific suffix; only when followed by [sign]digits
        std::size_t save = c.pos;
        int sl = c.line, sc = c.col;
        std::string suffix;
        suffix += c.peek();
        c.advance();
        if (c.peek() == '+' || c.peek() == '-') { suffix += c.peek(); c.advance(); }
        if (std::isdigit((unsigned char)c.peek())) {
            while (std::isdigit((unsigned char)c.peek())) {
                suffix += c.peek();
                c.advance();
            }
            tok += suffix;
        } else {
            c.pos = save; c.line = sl; c.col = sc;
        }
    }
    return std::strtod(tok.c_str(), nullptr);
}

// unsigned rational/decimal with optional 'i' suffix: 3, 1/6, 0.25, 2i, i
cplx parse_bare_number(Cursor& c) {
    if (c.peek() == 'i' && !std::isalnum((unsigned char)c.peek2())) {
        c.advance();
        return {0.0, 1.0};
    }
    double v = parse_unsigned_decimal(c);
    if (c.peek() == '/' && std::isdigit((unsigned char)c.peek2())) {
        c.advance();
        double den = parse_unsigned_decimal(c);
        if (den == 0.0) c.error("zero denominator in rational coefficient");
        v /= den;
    }
    if (c.peek() == 'i' && !std::isalnum((unsigned char)c.peek2())) {
        c.advance();
        return {0.0, v};
    }
    return {v, 0.0};
}

// signed real (no imaginary suffix handling at this level)
double parse_signed_real(Cursor& c) {
    c.skip_ws();
    double sign = 1.0;
    if (c.peek() == '+' || c.peek() == '-') {
        if (c.peek() == '-') sign = -1.0;
        c.advance();
        c.skip_ws();
    }
    double v = parse_unsigned_decimal(c);
    if (c.peek() == '/' && std::isdigit((unsigned char)c.peek2())) {
        c.advance();
        double den = parse_unsigned_decimal(c);
        if (den == 0.0) c.error("zero denominator in rational coefficient");
        v /= den;
    }
    return sign * v;
}

// '(' real [('+'|'-') [real] 'i'] ')'  |  '(' [sign] [real] 'i' ')'
cplx parse_paren_number(Cursor& c) {
    c.advance();  // '('
    c.skip_ws();
    // pure imaginary with optional sign: (i), (-i), (2i), (-2i)
    {
        std::size_t save = c.pos;
        int sl = c.line, sc = c.col;
        double sign = 1.0;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-') sign = -1.0;
            c.advance();
            c.skip_ws();
        }
        if (c.peek() == 'i' && !std::isalnum((unsigned char)c.peek2())) {
            c.advance();
            c.skip_ws();
            if (c.peek() != ')') c.error("expected ')' after imaginary unit");
            c.advance();
            return {0.0, sign};
        }
        if (std::isdigit((unsigned char)c.peek())) {
            double v = parse_unsigned_decimal(c);
            if (c.peek() == '/' && std::isdigit((unsigned char)c.peek2())) {
                c.advance();
                double den = parse_unsigned_decimal(c);
                if (den == 0.0) c.error("zero denominator in rational coefficient");
                v /= den;
            }
            if (c.peek() == 'i' && !std::isalnum((unsigned char)c.peek2())) {
                c.advance();
                c.skip_ws();
                if (c.peek() != ')') c.error("expected ')' after imaginary part");
                c.advance();
                return {0.0, sign * v};
            }
            // real head; fall through with value
            double re = sign * v;
            c.skip_ws();
            if (c.peek() == ')') { c.advance(); return {re, 0.0}; }
            if (c.peek() == '+' || c.peek() == '-') {
                double isign = c.peek() == '-' ? -1.0 : 1.0;
                c.advance();
                c.skip_ws();
                double iv = 1.0;
                if (std::isdigit((unsigned char)c.peek())) {
                    iv = parse_unsigned_decimal(c);
                    if (c.peek() == '/' && std::isdigit((unsigned char)c.peek2())) {
                        c.advance();
                        double den = parse_unsigned_decimal(c);
                        if (den == 0.0)
                            c.error("zero denominator in rational coefficient");
                        iv /= den;
                    }
                }
                if (c.peek() != 'i') c.error("expected 'i' in imaginary part");
                c.advance();
                c.skip_ws();
                if (c.peek() != ')') c.error("expected ')' to close coefficient");
                c.advance();
                return {re, isign * iv};
            }
            c.error("expected ')', '+' or '-' inside coefficient");
        }
        c.pos = save; c.line = sl; c.col = sc;
    }
    c.error("expected a numeric coefficient after '('");
}

// variable -> 0-based axis index; mode: 0 = multivariate (z/w/zK), 1 = t only
int parse_variable(Cursor& c, int mode) {
    char v = c.peek();
    if (mode == 1) {
        if (v != 't') c.error("expected the curve parameter 't'");
        c.advance();
        return 0;
    }
    if (v == 'w' && !std::isalnum((unsigned char)c.peek2())) {
        c.advance();
        return 1;
    }
    if (v != 'z') c.error("expected a variable (z, w, or z<k>)");
    c.advance();
    if (std::isdigit((unsigned char)c.peek())) {
        int idx = 0;
        while (std::isdigit((unsigned char)c.peek())) {
            idx = idx * 10 + (c.peek() - '0');
            c.advance();
            if (idx > 9) c.error("variable index out of range (z1..z9)");
        }
        if (idx < 1) c.error("variable index must be >= 1");
        return idx - 1;
    }
    return 0;  // bare z = z1
}

int parse_exponent(Cursor& c) {
    c.advance();  // '^'
    c.skip_ws();
    int sign = 1;
    if (c.peek() == '-') { sign = -1; c.advance(); }
    else if (c.peek() == '+') c.advance();
    if (!std::isdigit((unsigned char)c.peek()))
        c.error("expected an integer exponent after '^'");
    long v = 0;
    while (std::isdigit((unsigned char)c.peek())) {
        v = v * 10 + (c.peek() - '0');
        if (v > 64) c.error("exponent magnitude limited to 64");
        c.advance();
    }
    return sign * (int)v;
}

struct RawTerm {
    cplx coeff{1.0, 0.0};
    std::map<int, int> exponents;
};

RawTerm parse_term(Cursor& c, int mode, int& max_axis) {
    RawTerm t;
    bool first = true;
    while (true) {
        c.skip_ws();
        char ch = c.peek();
        if (ch == '(') {
            t.coeff *= parse_paren_number(c);
        } else if (std::isdigit((unsigned char)ch) ||
                   (ch == 'i' && !std::isalnum((unsigned char)c.peek2()))) {
            t.coeff *= parse_bare_number(c);
        } else if (std::isalpha((unsigned char)ch)) {
            int axis = parse_variable(c, mode);
            max_axis = std::max(max_axis, axis);
            int e = 1;
            c.skip_ws();
            if (c.peek() == '^') e = parse_exponent(c);
            t.exponents[axis] += e;
        } else if (first) {
            c.error("expected a term");
        } else {
            c.error("expected a factor after '*'");
        }
        first = false;
        c.skip_ws();
        if (c.peek() == '*') { c.advance(); continue; }
        break;
    }
    return t;
}

std::vector<RawTerm> parse_poly_expr(Cursor& c, int mode, int& max_axis) {
    std::vector<RawTerm> terms;
    c.skip_ws();
    double sign = 1.0;
    if (c.peek() == '+' || c.peek() == '-') {
        if (c.peek() == '-') sign = -1.0;
        c.advance();
    }
    while (true) {
        RawTerm t = parse_term(c, mode, max_axis);
        t.coeff *= sign;
        terms.push_back(std::move(t));
        c.skip_ws();
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.peek() == '-' ? -1.0 : 1.0;
            c.advance();
            continue;
        }
        break;
    }
    return terms;
}

LaurentPolynomial build_poly(const std::vector<RawTerm>& raw, int dim) {
    std::vector<Monomial> monos;
    for (const auto& t : raw) {
        Monomial m;
        m.coeff = t.coeff;
        m.exponents.assign(dim, 0);
        for (auto [axis, e] : t.exponents) m.exponents[axis] = e;
        monos.push_back(std::move(m));
    }
    return LaurentPolynomial(dim, std::move(monos));
}

UniPoly to_unipoly(const std::vector<RawTerm>& raw, Cursor& at) {
    int deg = 0;
    for (const auto& t : raw)
        for (auto [axis, e] : t.exponents) {
            (void)axis;
            if (e < 0) at.error("negative powers of t are not allowed in curves");
            deg = std::max(deg, e);
        }
    UniPoly p;
    p.coeffs.assign(deg + 1, cplx{0.0, 0.0});
    for (const auto& t : raw) {
        int e = 0;
        for (auto [axis, ee] : t.exponents) { (void)axis; e = ee; }
        p.coeffs[e] += t.coeff;
    }
    return p;
}

} // namespace

LaurentPolynomial parse_polynomial(const std::string& text, int ambient_dim) {
    Cursor c(text);
    int max_axis = -1;
    auto raw = parse_poly_expr(c, 0, max_axis);
    c.skip_ws();
    if (!c.end()) c.error("unexpected trailing input");
    int dim = ambient_dim > 0 ? ambient_dim : std::max(max_axis + 1, 1);
    if (max_axis + 1 > dim)
        throw ParseError("variable index exceeds ambient dimension " +
                             std::to_string(dim),
                         1, 1);
    return build_poly(raw, dim);
}

RationalCurve parse_curve(const std::string& text) {
    // split on ';' (parentheses never contain ';')
    std::vector<std::pair<std::size_t, std::string>> fields;  // (offset, text)
    {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == ';') {
                fields.emplace_back(start, text.substr(start, i - start));
                start = i + 1;
            }
        }
    }
    if (fields.size() < 2) {
        auto [l, cc] = position_of(text, text.size());
        throw ParseError("curve literal needs 'n; comp1; ...; compn'", l, cc);
    }
    int dim = 0;
    {
        Cursor c(text, fields[0].first, 1, 1);
        c.skip_ws();
        if (!std::isdigit((unsigned char)c.peek()))
            c.error("expected the ambient dimension before the first ';'");
        while (std::isdigit((unsigned char)c.peek())) {
            dim = dim * 10 + (c.peek() - '0');
            c.advance();
        }
        c.skip_ws();
        if (c.pos < fields[0].first + fields[0].second.size())
            c.error("unexpected input after the ambient dimension");
    }
    if ((int)fields.size() - 1 != dim) {
        auto [l, cc] = position_of(text, text.size());
        throw ParseError("expected " + std::to_string(dim) +
                             " components, found " +
                             std::to_string(fields.size() - 1),
                         l, cc);
    }

    std::vector<UniPoly> nums, dens;
    for (int k = 1; k <= dim; ++k) {
        const std::string& comp = fields[k].second;
        std::size_t base = fields[k].first;
        // structural "(num)/(den)" split
        std::string num_text = comp, den_text;
        std::size_t num_off = 0, den_off = 0;
        {
            std::size_t i = 0;
            while (i < comp.size() && std::isspace((unsigned char)comp[i])) ++i;
            if (i < comp.size() && comp[i] == '(') {
                int depth = 0;
                std::size_t close = std::string::npos;
                for (std::size_t j = i; j < comp.size(); ++j) {
                    if (comp[j] == '(') ++depth;
                    else if (comp[j] == ')') {
                        if (--depth == 0) { close = j; break; }
                    }
                }
                if (close != std::string::npos) {
                    std::size_t j = close + 1;
                    while (j < comp.size() && std::isspace((unsigned char)comp[j]))
                        ++j;
                    if (j < comp.size() && comp[j] == '/') {
                        std::size_t m = j + 1;
                        while (m < comp.size() &&
                               std::isspace((unsigned char)comp[m]))
                            ++m;
                        if (m < comp.size() && comp[m] == '(') {
                            num_text = comp.substr(i + 1, close - i - 1);
                            num_off = i + 1;
                            // denominator: inside the matching parens
                            int d2 = 0;
                            std::size_t close2 = std::string::npos;
                            for (std::size_t q = m; q < comp.size(); ++q) {
                                if (comp[q] == '(') ++d2;
                                else if (comp[q] == ')') {
                                    if (--d2 == 0) { close2 = q; break; }
                                }
                            }
                            if (close2 == std::string::npos) {
                                auto [l, cc] = position_of(text, base + m);
                                throw ParseError("unclosed denominator", l, cc);
                            }
                            std::size_t q = close2 + 1;
                            while (q < comp.size() &&
                                   std::isspace((unsigned char)comp[q]))
                                ++q;
                            if (q < comp.size()) {
                                auto [l, cc] = position_of(text, base + q);
                                throw ParseError(
                                    "unexpected input after denominator", l, cc);
                            }
                            den_text = comp.substr(m + 1, close2 - m - 1);
                            den_off = m + 1;
                        }
                    }
                }
            }
        }

        auto parse_side = [&](const std::string& side, std::size_t off) {
            // parse the component substring; errors report the position of the
            // component's start plus the local offset
            auto [l, cc] = position_of(text, base + off);
            std::string local = side;
            Cursor lc(local);
            lc.line = l;
            lc.col = cc;
            int max_axis = -1;
            auto raw = parse_poly_expr(lc, 1, max_axis);
            lc.skip_ws();
            if (!lc.end()) lc.error("unexpected trailing input in curve component");
            return to_unipoly(raw, lc);
        };
        nums.push_back(parse_side(num_text, num_off));
        if (den_text.empty()) {
            UniPoly one;
            one.coeffs = {cplx{1.0, 0.0}};
            dens.push_back(one);
        } else {
            dens.push_back(parse_side(den_text, den_off));
        }
    }
    return RationalCurve(dim, std::move(nums), std::move(dens));
}

std::string format_polynomial(const LaurentPolynomial& f) {
    auto fmt_d = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (f.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : f.terms()) {
        cplx c = m.coeff;
        std::string coeff;
        bool negated = false;
        if (c.imag() == 0.0) {
            double re = c.real();
            if (!first && re < 0) { negated = true; re = -re; }
            coeff = fmt_d(re);
        } else if (c.real() == 0.0) {
            double im = c.imag();
            if (!first && im < 0) { negated = true; im = -im; }
            coeff = "(" + fmt_d(im) + "i)";
        } else {
            coeff = "(" + fmt_d(c.real()) +
                    (c.imag() >= 0 ? "+" : "-") + fmt_d(std::abs(c.imag())) + "i)";
        }
        if (!first) out += negated ? " - " : " + ";
        out += coeff;
        for (int j = 0; j < f.ambient_dim(); ++j) {
            if (m.exponents[j] == 0) continue;
            out += "*z" + std::to_string(j + 1);
            if (m.exponents[j] != 1)
                out += "^" + std::to_string(m.exponents[j]);
        }
        first = false;
    }
    return out;
}

} // namespace amoebascope
