#include "phasekit/transfer_matrix.hpp"

#include "phasekit/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace phasekit {

namespace {

struct Scanner {
    std::string_view text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }

    void advance() {
        if (eof()) return;
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, line, col);
    }
};

bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

double scan_number(Scanner& sc) {
    const size_t start = sc.pos;
    while (!sc.eof() && (std::isdigit(static_cast<unsigned char>(sc.peek())) || sc.peek() == '.')) {
        sc.advance();
    }
    if (!sc.eof() && (sc.peek() == 'e' || sc.peek() == 'E')) {
        const size_t mark = sc.pos;
        const int mline = sc.line, mcol = sc.col;
        sc.advance();
        if (!sc.eof() && (sc.peek() == '+' || sc.peek() == '-')) sc.advance();
        if (!sc.eof() && std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            while (!sc.eof() && std::isdigit(static_cast<unsigned char>(sc.peek()))) sc.advance();
        } else {
            sc.pos = mark;
            sc.line = mline;
            sc.col = mcol;
        }
    }
    const std::string token(sc.text.substr(start, sc.pos - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') sc.fail("invalid number '" + token + "'");
    return v;
}

int scan_power(Scanner& sc) {
    sc.skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(sc.peek()))) sc.fail("expected integer power after '^'");
    int k = 0;
    while (!sc.eof() && std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        k = 10 * k + (sc.peek() - '0');
        sc.advance();
    }
    return k;
}

// term := number ['*'] ['s' ['^' int]] | 's' ['^' int]
void scan_term(Scanner& sc, double sign, std::vector<double>& coeffs) {
    sc.skip_ws();
    double coeff = 1.0;
    bool have_coeff = false;
    if (starts_number(sc.peek())) {
        coeff = scan_number(sc);
        have_coeff = true;
        sc.skip_ws();
        if (sc.peek() == '*') {
            sc.advance();
            sc.skip_ws();
            if (sc.peek() != 's') sc.fail("expected 's' after '*'");
        }
    }
    int power = 0;
    if (sc.peek() == 's') {
        sc.advance();
        power = 1;
        sc.skip_ws();
        if (sc.peek() == '^') {
            sc.advance();
            power = scan_power(sc);
        }
    } else if (!have_coeff) {
        sc.fail("expected a term (number or 's')");
    }
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, 0.0);
    coeffs[power] += sign * coeff;
}

bool at_poly_end(const Scanner& sc, bool in_parens) {
    if (sc.eof()) return true;
    const char c = sc.peek();
    if (in_parens) return c == ')';
    return c == ',' || c == ';' || c == '/' || c == ')';
}

Polynomial scan_poly(Scanner& sc, bool in_parens) {
    std::vector<double> coeffs;
    sc.skip_ws();
    bool first = true;
    while (true) {
        sc.skip_ws();
        double sign = 1.0;
        if (sc.peek() == '+' || sc.peek() == '-') {
            sign = sc.peek() == '-' ? -1.0 : 1.0;
            sc.advance();
        } else if (!first) {
            break;
        }
        scan_term(sc, sign, coeffs);
        first = false;
        sc.skip_ws();
        if (at_poly_end(sc, in_parens)) break;
        if (sc.peek() != '+' && sc.peek() != '-') {
            sc.fail(std::string("unexpected character '") + sc.peek() + "' in polynomial");
        }
    }
    return Polynomial(std::move(coeffs));
}

Polynomial scan_operand(Scanner& sc) {
    sc.skip_ws();
    if (sc.peek() == '(') {
        sc.advance();
        Polynomial p = scan_poly(sc, true);
        sc.skip_ws();
        if (sc.peek() != ')') sc.fail("expected ')'");
        sc.advance();
        return p;
    }
    return scan_poly(sc, false);
}

RationalEntry scan_entry(Scanner& sc) {
    RationalEntry e;
    e.num = scan_operand(sc);
    sc.skip_ws();
    if (sc.peek() == '/') {
        sc.advance();
        e.den = scan_operand(sc);
        sc.skip_ws();
        if (sc.peek() == '/') sc.fail("nested '/' is not allowed");
        if (e.den.is_zero()) sc.fail("denominator is the zero polynomial");
    } else {
        e.den = Polynomial::one();
    }
    return e;
}

std::string format_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    char buf[64];
    for (int k = p.degree(); k >= 0; --k) {
        const double c = p.coefficient(k);
        if (c == 0.0) continue;
        if (!out.empty() && c >= 0.0) out += "+";
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        out += buf;
        if (k == 1) {
            out += "*s";
        } else if (k > 1) {
            out += "*s^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace

RationalTransferMatrix parse_transfer_matrix(std::string_view text) {
    Scanner sc{text};
    std::vector<std::vector<RationalEntry>> rows;
    sc.skip_ws();
    if (sc.eof()) sc.fail("empty input");
    while (true) {
        std::vector<RationalEntry> row;
        while (true) {
            row.push_back(scan_entry(sc));
            sc.skip_ws();
            if (sc.peek() == ',') {
                sc.advance();
                continue;
            }
            break;
        }
        rows.push_back(std::move(row));
        sc.skip_ws();
        if (sc.peek() == ';') {
            sc.advance();
            sc.skip_ws();
            if (sc.eof()) break;  // trailing separator tolerated
            continue;
        }
        if (sc.eof()) break;
        sc.fail(std::string("unexpected character '") + sc.peek() + "'");
    }

    const int m = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m) {
            throw NonSquare("transfer matrix must be square: got " + std::to_string(m) +
                            " row(s) with a row of " + std::to_string(row.size()) +
                            " entries");
        }
    }
    std::vector<RationalEntry> flat;
    flat.reserve(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const RationalEntry& e = rows[i][j];
            if (!e.num.is_zero() && e.num.degree() > e.den.degree()) {
                throw NonProperEntry("entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is not proper");
            }
            flat.push_back(e);
        }
    }
    return RationalTransferMatrix(m, std::move(flat));
}

std::string print_transfer_matrix(const RationalTransferMatrix& tfm) {
    std::string out;
    for (int i = 0; i < tfm.size(); ++i) {
        if (i > 0) out += "; ";
        for (int j = 0; j < tfm.size(); ++j) {
            if (j > 0) out += ", ";
            const RationalEntry& e = tfm.entry(i, j);
            if (e.den == Polynomial::one()) {
                out += format_poly(e.num);
            } else {
                out += "(" + format_poly(e.num) + ")/(" + format_poly(e.den) + ")";
            }
        }
    }
    return out;
}

ComplexMatrix eval_tfm(const RationalTransferMatrix& tfm, Complex s) {
    const int m = tfm.size();
    ComplexMatrix G(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const RationalEntry& e = tfm.entry(i, j);
            const Complex d = e.den.eval(s);
            double scale = 0.0;
            double sp = 1.0;
            for (double c : e.den.coefficients()) {
                scale += std::abs(c) * sp;
                sp *= std::abs(s);
            }
            if (std::abs(d) <= 1e-14 * (scale + 1e-300)) {
                throw PoleHit("eval_tfm: denominator of entry (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ") vanishes at the given point");
            }
            G(i, j) = e.num.eval(s) / d;
        }
    }
    return G;
}

}  // namespace phasekit
