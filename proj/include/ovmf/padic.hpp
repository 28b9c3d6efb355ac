#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace ovmf {

/// Thrown when an operation cannot deliver a result at the working precision
/// (division by an apparent zero, exhausted absolute precision, ...).
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an argument is outside the domain of a p-adic special function.
class padic_domain_error : public std::runtime_error {
public:
    explicit padic_domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Global parameters shared by every object of a computation.
struct Context {
    long p = 5;   // prime
    int N = 12;   // relative p-adic precision, in p-digits
    int M = 4;    // truncation order of the family variable T
    int Q = 200;  // q-expansion precision
    int J = 0;    // tail order for fractional connection iterates; 0 = 2p^2+8

    int tail_order() const { return J > 0 ? J : int(2 * p * p + 8); }
};

/// A p-adic number at fixed relative precision: u * p^v with u a unit residue
/// known modulo p^N.  An apparent zero carries only an absolute precision:
/// the value is O(p^abs).  Exact zero has abs = kExact.
class PadicScalar {
public:
    static constexpr long long kExact = (1LL << 62);

    PadicScalar() : p_(0), N_(0), zero_(true), v_(kExact), u_(0) {}

    /// The integer n at relative precision N.
    PadicScalar(long p, int N, const mpz_class& n);
    PadicScalar(long p, int N, long n) : PadicScalar(p, N, mpz_class(n)) {}

    static PadicScalar zero(long p, int N) { return PadicScalar(p, N); }
    static PadicScalar one(long p, int N) { return PadicScalar(p, N, 1); }
    /// Apparent zero of absolute precision abs: the value O(p^abs).
    static PadicScalar o_of(long p, int N, long long abs);
    /// u * p^v with u given mod p^N (u need not be reduced).
    static PadicScalar from_unit(long p, int N, long long v, const mpz_class& u);
    /// a/b as a p-adic number (b nonzero).
    static PadicScalar rational(long p, int N, const mpz_class& a, const mpz_class& b);

    long prime() const { return p_; }
    int rel_prec() const { return N_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ >= kExact; }
    /// Valuation; kExact for an (apparent or exact) zero.
    long long valuation() const { return zero_ ? kExact : v_; }
    /// Unit residue in [1, p^N); only meaningful when nonzero.
    const mpz_class& unit() const { return u_; }
    /// Absolute precision: the value is known modulo p^abs_prec().
    long long abs_prec() const { return zero_ ? v_ : v_ + N_; }
    bool is_unit() const { return !zero_ && v_ == 0; }

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator/(const PadicScalar& o) const;
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
    PadicScalar& operator/=(const PadicScalar& o) { return *this = *this / o; }

    PadicScalar inv() const;
    PadicScalar pow(long long e) const;  // negative e allowed for units

    /// True when the two values agree modulo the smaller absolute precision.
    bool eq(const PadicScalar& o) const;
    bool operator==(const PadicScalar& o) const { return eq(o); }

    /// Residue modulo p^k as an integer in [0, p^k); requires v >= 0 or zero.
    mpz_class residue(int k) const;

    std::string str() const;

private:
    PadicScalar(long p, int N) : p_(p), N_(N), zero_(true), v_(kExact), u_(0) {}
    void normalize_unit();

    long p_;
    int N_;
    bool zero_;
    long long v_;   // valuation, or absolute precision when zero_
    mpz_class u_;
};

mpz_class pow_p(long p, long long e);

/// Teichmueller lift: the (p-1)-st root of unity congruent to n mod p
/// (the sign character on (Z/4)^* when p = 2).
PadicScalar teichmuller(long p, int N, const mpz_class& n);
inline PadicScalar teichmuller(long p, int N, long n) { return teichmuller(p, N, mpz_class(n)); }

/// One-unit part <n> = n / omega(n).
PadicScalar one_unit_part(long p, int N, const mpz_class& n);
inline PadicScalar one_unit_part(long p, int N, long n) { return one_unit_part(p, N, mpz_class(n)); }

/// p-adic logarithm of a 1-unit (1 + pZ_p, resp. 1 + 4Z_2).
PadicScalar plog(const PadicScalar& x);

/// p-adic exponential; requires v(x) >= 1 (>= 2 for p = 2).
PadicScalar pexp(const PadicScalar& x);

/// Binomial coefficient C(u, j) = u(u-1)...(u-j+1)/j! in any ring with
/// subtraction of integers and division by the scalar j!.
template <typename Ring>
Ring binomial(const Ring& u, int j) {
    Ring acc = u.ring_one();
    mpz_class fact = 1;
    for (int i = 0; i < j; ++i) {
        acc = acc * (u - i);
        fact *= (i + 1);
    }
    return acc.div_integer(fact);
}

PadicScalar binomial(const PadicScalar& u, int j);

/// Square root by Hensel lifting; canonical root has residue mod p in [1, p/2]
/// (residue 1 mod 4 when p = 2).
PadicScalar hensel_sqrt(const PadicScalar& a);

}  // namespace ovmf
