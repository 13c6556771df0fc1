#include "birk/quadext.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace birk {

namespace {

int g_context_d = 5;

bool squarefree(int d) {
    for (int p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0)
            return false;
    }
    return true;
}

} // namespace

int QuadExt::context_d() { return g_context_d; }

void QuadExt::set_context_d(int d) {
    if (d < 2 || !squarefree(d))
        throw UsageError("field parameter d must be squarefree and >= 2, got " + std::to_string(d));
    g_context_d = d;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    if (sgn(quad_) == 0 && sgn(o.quad_) == 0) { // rational fast path
        rat_ *= o.rat_;
        return *this;
    }
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + d b1 b2 + (a1 b2 + a2 b1) s
    Rational a = rat_ * o.rat_ + Rational(g_context_d) * quad_ * o.quad_;
    Rational b = rat_ * o.quad_ + o.rat_ * quad_;
    rat_ = std::move(a);
    quad_ = std::move(b);
    return *this;
}

QuadExt QuadExt::inverse() const {
    if (is_zero())
        throw DivisionByZeroError("inverse of zero field element");
    if (sgn(quad_) == 0)
        return QuadExt(1 / rat_);
    // 1/(a + b s) = (a - b s) / (a^2 - d b^2); the norm is nonzero because
    // sqrt(d) is irrational.
    Rational norm = rat_ * rat_ - Rational(g_context_d) * quad_ * quad_;
    return QuadExt(rat_ / norm, -quad_ / norm);
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.is_zero())
        throw DivisionByZeroError("division by zero field element");
    if (sgn(quad_) == 0 && sgn(o.quad_) == 0) {
        rat_ /= o.rat_;
        return *this;
    }
    return *this *= o.inverse();
}

int QuadExt::sign() const {
    int sa = sgn(rat_);
    int sb = sgn(quad_);
    if (sb == 0)
        return sa;
    if (sa == 0)
        return sb;
    if (sa == sb)
        return sa;
    // Opposite strict signs. a and -b now agree in sign, so a - b*sqrt(d)
    // has sign sa, and sign(a + b sqrt(d)) = sign(a - b sqrt(d)) * sign(a^2 - d b^2).
    Rational norm = rat_ * rat_ - Rational(g_context_d) * quad_ * quad_;
    return sa * sgn(norm);
}

int compare(const QuadExt& a, const QuadExt& b) {
    if (a == b)
        return 0;
    return (a - b).sign();
}

double QuadExt::to_double() const {
    return rat_.get_d() + quad_.get_d() * std::sqrt(static_cast<double>(g_context_d));
}

std::string rational_str(const Rational& r) {
    return r.get_str();
}

std::string QuadExt::str() const {
    const bool has_quad = sgn(quad_) != 0;
    const std::string sq = "*sqrt(" + std::to_string(g_context_d) + ")";
    if (!has_quad)
        return rational_str(rat_);
    std::string quad_term = rational_str(quad_) + sq;
    if (sgn(rat_) == 0)
        return quad_term;
    if (sgn(quad_) > 0)
        return rational_str(rat_) + "+" + quad_term;
    return rational_str(rat_) + quad_term; // the minus sign comes with the coefficient
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    return os << x.str();
}

namespace {

// Cursor over a whitespace-stripped copy of the input.
struct Scanner {
    std::string s;
    size_t pos = 0;

    explicit Scanner(std::string_view text) {
        s.reserve(text.size());
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c)))
                s.push_back(c);
        }
    }

    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool consume_str(std::string_view lit) {
        if (s.compare(pos, lit.size(), lit) == 0) {
            pos += lit.size();
            return true;
        }
        return false;
    }

    std::string digits() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        return s.substr(start, pos - start);
    }
};

// unsigned-rational := digits [ '/' digits ]
Rational scan_unsigned_rational(Scanner& sc, std::string_view ctx) {
    std::string num = sc.digits();
    if (num.empty())
        throw ParseError("expected a number in \"" + std::string(ctx) + "\"");
    if (!sc.consume('/'))
        return Rational(Integer(num, 10));
    std::string den = sc.digits();
    if (den.empty())
        throw ParseError("expected a denominator in \"" + std::string(ctx) + "\"");
    Integer den_z(den, 10);
    if (sgn(den_z) == 0)
        throw ParseError("zero denominator in \"" + std::string(ctx) + "\"");
    Rational r(Integer(num, 10), den_z);
    r.canonicalize();
    return r;
}

} // namespace

Rational parse_rational(std::string_view text) {
    Scanner sc(text);
    int sign = 1;
    if (sc.consume('-'))
        sign = -1;
    else
        sc.consume('+');
    Rational r = scan_unsigned_rational(sc, text);
    if (!sc.done())
        throw ParseError("trailing characters in rational \"" + std::string(text) + "\"");
    return sign < 0 ? Rational(-r) : r;
}

QuadExt QuadExt::parse(std::string_view text) {
    Scanner sc(text);
    const std::string ctx(text);
    if (sc.done())
        throw ParseError("empty field element");

    bool have_rat = false, have_quad = false;
    Rational rat(0), quad(0);

    for (int term = 0; term < 2; ++term) {
        int sign = 1;
        if (sc.consume('-'))
            sign = -1;
        else
            sc.consume('+');
        if (sc.done()) {
            if (term == 0)
                throw ParseError("expected a term in \"" + ctx + "\"");
            throw ParseError("dangling sign in \"" + ctx + "\"");
        }
        // Coefficient form is mandatory: every term starts with a number.
        Rational coeff = scan_unsigned_rational(sc, ctx);
        if (sc.consume('*')) {
            if (!sc.consume_str("sqrt("))
                throw ParseError("expected sqrt( after '*' in \"" + ctx + "\"");
            std::string d = sc.digits();
            if (!sc.consume(')'))
                throw ParseError("unterminated sqrt(...) in \"" + ctx + "\"");
            if (d != std::to_string(g_context_d))
                throw ParseError("sqrt(" + d + ") does not match the field context sqrt(" +
                                 std::to_string(g_context_d) + ") in \"" + ctx + "\"");
            if (have_quad)
                throw ParseError("duplicate sqrt term in \"" + ctx + "\"");
            have_quad = true;
            quad = sign < 0 ? Rational(-coeff) : coeff;
        } else {
            if (have_rat)
                throw ParseError("duplicate rational term in \"" + ctx + "\"");
            have_rat = true;
            rat = sign < 0 ? Rational(-coeff) : coeff;
        }
        if (sc.done())
            break;
        if (sc.peek() != '+' && sc.peek() != '-')
            throw ParseError("unexpected character '" + std::string(1, sc.peek()) + "' in \"" + ctx + "\"");
        if (term == 1)
            throw ParseError("too many terms in \"" + ctx + "\"");
    }
    if (!sc.done())
        throw ParseError("trailing characters in \"" + ctx + "\"");
    return QuadExt(std::move(rat), std::move(quad));
}

} // namespace birk
