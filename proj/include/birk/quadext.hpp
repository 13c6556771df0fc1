#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "birk/error.hpp"

namespace birk {

using Integer = mpz_class;
using Rational = mpq_class;

/**
 * Element of the real quadratic field Q[sqrt(d)], stored as rat + quad*sqrt(d)
 * with exact rational components. The representation is unique because d is
 * squarefree and >= 2, so sqrt(d) is irrational.
 *
 * d is a process-wide context constant (default 5). Values do not carry it;
 * mixing values built under different contexts is a programming error that
 * surfaces at container boundaries (parsers check the context). The context
 * must be set before any arithmetic starts and never changed while values
 * are alive; values themselves are immutable and freely shared across
 * threads.
 */
class QuadExt {
public:
    QuadExt() : rat_(0), quad_(0) {}
    QuadExt(int v) : rat_(v), quad_(0) {}
    QuadExt(long v) : rat_(v), quad_(0) {}
    QuadExt(Rational r) : rat_(std::move(r)), quad_(0) { rat_.canonicalize(); }
    QuadExt(Rational r, Rational q) : rat_(std::move(r)), quad_(std::move(q)) {
        rat_.canonicalize();
        quad_.canonicalize();
    }

    static QuadExt sqrt_d() { return QuadExt(Rational(0), Rational(1)); }

    const Rational& rat() const { return rat_; }
    const Rational& quad() const { return quad_; }

    static int context_d();
    // d must be squarefree and >= 2. Call before computing; never during.
    static void set_context_d(int d);

    bool is_zero() const { return sgn(rat_) == 0 && sgn(quad_) == 0; }
    bool is_rational() const { return sgn(quad_) == 0; }

    QuadExt operator-() const { return QuadExt(-rat_, -quad_); }

    QuadExt& operator+=(const QuadExt& o) {
        rat_ += o.rat_;
        quad_ += o.quad_;
        return *this;
    }
    QuadExt& operator-=(const QuadExt& o) {
        rat_ -= o.rat_;
        quad_ -= o.quad_;
        return *this;
    }
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }

    // Sign of the real number rat + quad*sqrt(d): -1, 0 or +1.
    int sign() const;

    QuadExt inverse() const;

    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.rat_ == b.rat_ && a.quad_ == b.quad_;
    }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

    // Approximate value, for diagnostics and randomized cross-checks only.
    double to_double() const;

    // Canonical text form: reduced fractions, rational term then quad term,
    // no spaces, zero terms omitted ("0" when both vanish), e.g.
    // "-2+1*sqrt(5)", "1/2-3*sqrt(5)", "-1".
    std::string str() const;

    // Grammar: [+|-]p[/q] [(+|-) r[/s]*sqrt(d)], either term optional, both
    // orders accepted, whitespace ignored. The quad term requires an explicit
    // coefficient: "sqrt(5)" and "sqrt(5)/2" are rejected. The d inside
    // sqrt(...) must match the context.
    static QuadExt parse(std::string_view text);

private:
    Rational rat_;
    Rational quad_;
};

// Total order on field elements as real numbers: sign(x - y).
int compare(const QuadExt& a, const QuadExt& b);

inline bool operator<(const QuadExt& a, const QuadExt& b) { return compare(a, b) < 0; }
inline bool operator>(const QuadExt& a, const QuadExt& b) { return compare(a, b) > 0; }
inline bool operator<=(const QuadExt& a, const QuadExt& b) { return compare(a, b) <= 0; }
inline bool operator>=(const QuadExt& a, const QuadExt& b) { return compare(a, b) >= 0; }

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

// Canonical reduced form of a rational, "p" or "p/q".
std::string rational_str(const Rational& r);
Rational parse_rational(std::string_view text);

} // namespace birk
