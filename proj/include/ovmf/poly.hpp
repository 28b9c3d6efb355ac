#pragma once

#include <utility>
#include <vector>

#include "ovmf/padic.hpp"

namespace ovmf {

/// Reduced fraction with positive denominator; used for Newton slopes.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    std::string str() const;
};

/// Polynomial c_0 + c_1 X + ... + c_deg X^deg over PadicScalar.
class PadicPoly {
public:
    PadicPoly() = default;
    PadicPoly(long p, int N) : p_(p), N_(N), c_{PadicScalar::zero(p, N)} {}
    PadicPoly(long p, int N, std::vector<PadicScalar> c);

    static PadicPoly constant(const PadicScalar& a);
    /// X - a.
    static PadicPoly linear(const PadicScalar& a);

    long prime() const { return p_; }
    int rel_prec() const { return N_; }
    int degree() const { return (int)c_.size() - 1; }
    const PadicScalar& operator[](int i) const { return c_[i]; }
    PadicScalar& operator[](int i) { return c_[i]; }
    const PadicScalar& leading() const { return c_.back(); }

    bool is_zero() const;
    bool is_monic() const;
    /// Drop high coefficients that are zero at working precision.
    PadicPoly trimmed() const;

    PadicPoly operator+(const PadicPoly& o) const;
    PadicPoly operator-(const PadicPoly& o) const;
    PadicPoly operator-() const;
    PadicPoly operator*(const PadicPoly& o) const;
    PadicPoly operator*(const PadicScalar& s) const;

    PadicScalar eval(const PadicScalar& x) const;

    /// All coefficients agree at the smaller absolute precision.
    bool eq(const PadicPoly& o) const;

    /// Minimum valuation over coefficients (kExact for the zero polynomial).
    long long min_valuation() const;

    std::string str() const;

private:
    long p_ = 0;
    int N_ = 0;
    std::vector<PadicScalar> c_;
};

/// Quotient and remainder; divisor must have an invertible leading coefficient.
std::pair<PadicPoly, PadicPoly> poly_divmod(const PadicPoly& a, const PadicPoly& b);

/// Bezout pair for coprime a, b: s a + t b = 1.  Throws when the gcd fails to
/// be a nonzero constant at working precision.
std::pair<PadicPoly, PadicPoly> poly_bezout(const PadicPoly& a, const PadicPoly& b);

/// One segment of the Newton polygon: a root-valuation and its multiplicity.
struct NewtonSlope {
    Rational slope;
    int length = 0;
};

/// Root valuations of P with multiplicities, nondecreasing: negated slopes of
/// the lower convex hull of the points (i, v(c_i)).
std::vector<NewtonSlope> newton_polygon(const PadicPoly& P);

/// Factor P = P_le * P_gt with P_le monic collecting every root of valuation
/// <= h (Hensel lifting from the Newton-polygon split).  The leading
/// coefficient of P stays on P_gt.
std::pair<PadicPoly, PadicPoly> slope_factor(const PadicPoly& P, const Rational& h);

}  // namespace ovmf
