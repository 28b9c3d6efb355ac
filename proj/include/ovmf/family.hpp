#pragma once

#include <vector>

#include "ovmf/padic.hpp"

namespace ovmf {

/// Truncated polynomial in the family variable T over PadicScalar;
/// T is nilpotent of order M.
class FamilyElement {
public:
    FamilyElement() = default;
    FamilyElement(long p, int N, int M);
    /// Constant n.
    FamilyElement(long p, int N, int M, const mpz_class& n);
    FamilyElement(long p, int N, int M, long n) : FamilyElement(p, N, M, mpz_class(n)) {}
    explicit FamilyElement(int M, const PadicScalar& c);

    static FamilyElement zero(long p, int N, int M) { return FamilyElement(p, N, M); }
    static FamilyElement one(long p, int N, int M) { return FamilyElement(p, N, M, 1); }
    /// The family variable T itself.
    static FamilyElement var(long p, int N, int M);

    long prime() const { return p_; }
    int rel_prec() const { return N_; }
    int trunc() const { return M_; }
    const PadicScalar& operator[](int i) const { return c_[i]; }
    PadicScalar& operator[](int i) { return c_[i]; }
    const PadicScalar& constant_term() const { return c_[0]; }

    bool is_zero() const;

    FamilyElement operator-() const;
    FamilyElement operator+(const FamilyElement& o) const;
    FamilyElement operator-(const FamilyElement& o) const;
    FamilyElement operator*(const FamilyElement& o) const;
    FamilyElement operator*(const PadicScalar& s) const;
    FamilyElement operator/(const FamilyElement& o) const { return *this * o.inv(); }
    FamilyElement operator+(long n) const { return *this + FamilyElement(p_, N_, M_, n); }
    FamilyElement operator-(long n) const { return *this - FamilyElement(p_, N_, M_, n); }
    FamilyElement& operator+=(const FamilyElement& o) { return *this = *this + o; }
    FamilyElement& operator-=(const FamilyElement& o) { return *this = *this - o; }
    FamilyElement& operator*=(const FamilyElement& o) { return *this = *this * o; }

    /// Inverse; requires the constant term to be nonzero (T-part is nilpotent).
    FamilyElement inv() const;
    FamilyElement div_scalar(const PadicScalar& s) const;
    FamilyElement div_integer(const mpz_class& n) const;
    FamilyElement ring_one() const { return one(p_, N_, M_); }

    /// Evaluation at T = t0 with v(t0) >= 1; a ring homomorphism to PadicScalar.
    PadicScalar eval(const PadicScalar& t0) const;

    bool eq(const FamilyElement& o) const;
    bool operator==(const FamilyElement& o) const { return eq(o); }

    /// Minimum valuation over all coefficients (kExact when zero).
    long long min_valuation() const;

    std::string str() const;

private:
    long p_ = 0;
    int N_ = 0, M_ = 0;
    std::vector<PadicScalar> c_;
};

/// plog on families of 1-units: constant term a 1-unit, T-coefficients of
/// valuation >= 1 (>= 2 for p = 2).
FamilyElement plog(const FamilyElement& x);

/// pexp on families: every coefficient of valuation >= 1 (>= 2 for p = 2).
FamilyElement pexp(const FamilyElement& x);

/// A tame character omega^e of conductor p (the sign character on (Z/4)^* for
/// p = 2), extended by chi(n) = 0 when p | n.
struct TameChar {
    long p = 5;
    int N = 12;
    int e = 0;  // exponent of omega, mod p-1 (mod 2 for p = 2)

    long modulus() const { return p == 2 ? 2 : p - 1; }
    bool is_trivial() const { return ((e % modulus()) + modulus()) % modulus() == 0; }
    bool is_even() const { return e % 2 == 0; }
    /// chi(n) as a scalar; exact zero when p | n.
    PadicScalar value(const mpz_class& n) const;
    PadicScalar value(long n) const { return value(mpz_class(n)); }
};

/// Continuous character of Z_p^*: kappa(t) = omega(t)^tame * exp(u*log<t>).
struct Weight {
    int tame = 0;      // Teichmueller exponent, mod p-1 (mod 2 for p = 2)
    FamilyElement u;   // analytic parameter

    long prime() const { return u.prime(); }
    long tame_modulus() const { return prime() == 2 ? 2 : prime() - 1; }

    /// Integral classical weight [m].
    static Weight classical(long p, int N, int M, long m);

    /// tame = 0 and every coefficient of u has valuation >= 1 (>= 2 for p = 2).
    bool is_strict() const;

    std::string str() const;
};

/// kappa(n) in the family ring; zero when p | n.
FamilyElement weight_eval(const Weight& k, const mpz_class& n);
inline FamilyElement weight_eval(const Weight& k, long n) { return weight_eval(k, mpz_class(n)); }

/// Character product k1 * k2^c.
Weight weight_combine(const Weight& k1, const Weight& k2, long c);

/// Shift a weight by the classical weight [m]: k * [m].
Weight weight_shift(const Weight& k, long m);

/// Decomposition report for the admissibility condition on a pair of weights:
/// k = omega^i [a] v and s = omega^{i'} [b] w with v, w strict.
struct Assumption51Report {
    bool admissible = false;
    std::string reason;
    long a = 0, b = 0;     // integer parts
    int i = 0, i2 = 0;     // tame exponents of the finite characters
    bool chi_even = false;
    bool a_even_mod_p = false;
    long alpha = 0, beta = 0;  // shift integers: p | (a + 2 alpha), q | beta
};

Assumption51Report check_assumption_5_1(const Weight& k, const Weight& s);

}  // namespace ovmf
