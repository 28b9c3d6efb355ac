#include "ovmf/family.hpp"

#include <sstream>

namespace ovmf {

FamilyElement::FamilyElement(long p, int N, int M)
    : p_(p), N_(N), M_(M), c_(M, PadicScalar::zero(p, N)) {}

FamilyElement::FamilyElement(long p, int N, int M, const mpz_class& n) : FamilyElement(p, N, M) {
    c_[0] = PadicScalar(p, N, n);
}

FamilyElement::FamilyElement(int M, const PadicScalar& c)
    : FamilyElement(c.prime(), c.rel_prec(), M) {
    c_[0] = c;
}

FamilyElement FamilyElement::var(long p, int N, int M) {
    FamilyElement r(p, N, M);
    if (M < 2) throw padic_domain_error("family truncation too small for T");
    r.c_[1] = PadicScalar::one(p, N);
    return r;
}

bool FamilyElement::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

FamilyElement FamilyElement::operator-() const {
    FamilyElement r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FamilyElement FamilyElement::operator+(const FamilyElement& o) const {
    FamilyElement r = *this;
    for (int i = 0; i < M_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

FamilyElement FamilyElement::operator-(const FamilyElement& o) const { return *this + (-o); }

FamilyElement FamilyElement::operator*(const FamilyElement& o) const {
    FamilyElement r(p_, N_, M_);
    for (int i = 0; i < M_; ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (int j = 0; i + j < M_; ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    return r;
}

FamilyElement FamilyElement::operator*(const PadicScalar& s) const {
    FamilyElement r = *this;
    for (auto& c : r.c_) c = c * s;
    return r;
}

FamilyElement FamilyElement::inv() const {
    const PadicScalar& c0 = c_[0];
    if (c0.is_zero()) throw precision_error("precision-exhausted divisor");
    // write x = c0 (1 + h) with h nilpotent; invert by a finite geometric series
    FamilyElement h = div_scalar(c0);
    h.c_[0] = PadicScalar::zero(p_, N_);
    FamilyElement acc = one(p_, N_, M_);
    FamilyElement pw = one(p_, N_, M_);
    for (int i = 1; i < M_; ++i) {
        pw = pw * h;
        if (i % 2 == 1) acc -= pw;
        else acc += pw;
    }
    return acc.div_scalar(c0);
}

FamilyElement FamilyElement::div_scalar(const PadicScalar& s) const {
    FamilyElement r = *this;
    PadicScalar si = s.inv();
    for (auto& c : r.c_) c = c * si;
    return r;
}

FamilyElement FamilyElement::div_integer(const mpz_class& n) const {
    return div_scalar(PadicScalar(p_, N_, n));
}

PadicScalar FamilyElement::eval(const PadicScalar& t0) const {
    if (!t0.is_zero() && t0.valuation() < 1)
        throw padic_domain_error("specialization point must have valuation >= 1");
    PadicScalar acc = PadicScalar::zero(p_, N_);
    for (int i = M_ - 1; i >= 0; --i) acc = acc * t0 + c_[i];
    return acc;
}

bool FamilyElement::eq(const FamilyElement& o) const {
    for (int i = 0; i < M_; ++i)
        if (!c_[i].eq(o.c_[i])) return false;
    return true;
}

long long FamilyElement::min_valuation() const {
    long long v = PadicScalar::kExact;
    for (const auto& c : c_) v = std::min(v, c.valuation());
    return v;
}

std::string FamilyElement::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < M_; ++i) os << (i ? ", " : "") << c_[i].str();
    os << "]";
    return os.str();
}

FamilyElement plog(const FamilyElement& x) {
    long p = x.prime();
    int N = x.rel_prec(), M = x.trunc();
    long long minv = (p == 2) ? 2 : 1;
    FamilyElement y = x - 1;
    if (!y.constant_term().is_zero() && y.constant_term().valuation() < minv)
        throw padic_domain_error("plog argument is not a family of 1-units");
    FamilyElement acc = FamilyElement::zero(p, N, M);
    FamilyElement term = y;
    long cap = 64L * (N + 4) + M;
    for (long m = 1; m <= cap; ++m) {
        FamilyElement c = term.div_integer(m);
        if (m % 2 == 0) c = -c;
        if (c.is_zero()) break;
        acc += c;
        term = term * y;
        if (term.is_zero()) break;
    }
    return acc;
}

FamilyElement pexp(const FamilyElement& x) {
    long p = x.prime();
    int N = x.rel_prec(), M = x.trunc();
    long long minv = (p == 2) ? 2 : 1;
    if (!x.is_zero() && x.min_valuation() < minv)
        throw padic_domain_error("exp-divergent argument");
    FamilyElement acc = FamilyElement::one(p, N, M);
    FamilyElement term = FamilyElement::one(p, N, M);
    mpz_class fact = 1;
    long cap = 64L * (N + 4) + M;
    for (long m = 1; m <= cap; ++m) {
        term = term * x;
        fact *= m;
        if (term.is_zero()) break;
        FamilyElement c = term.div_integer(fact);
        if (c.is_zero()) break;
        acc += c;
    }
    return acc;
}

PadicScalar TameChar::value(const mpz_class& n) const {
    if (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p))
        return PadicScalar::zero(p, N);
    return teichmuller(p, N, n).pow(((e % modulus()) + modulus()) % modulus());
}

Weight Weight::classical(long p, int N, int M, long m) {
    Weight k;
    long mod = (p == 2) ? 2 : p - 1;
    k.tame = (int)(((m % mod) + mod) % mod);
    k.u = FamilyElement(p, N, M, m);
    return k;
}

bool Weight::is_strict() const {
    long p = prime();
    long long minv = (p == 2) ? 2 : 1;
    if (tame % tame_modulus() != 0) return false;
    return u.is_zero() || u.min_valuation() >= minv;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "omega^" << tame << " * exp(" << u.str() << " * log<.>)";
    return os.str();
}

FamilyElement weight_eval(const Weight& k, const mpz_class& n) {
    long p = k.prime();
    int N = k.u.rel_prec(), M = k.u.trunc();
    if (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p))
        return FamilyElement::zero(p, N, M);
    long mod = k.tame_modulus();
    int e = (int)(((k.tame % mod) + mod) % mod);
    PadicScalar tame_part = teichmuller(p, N, n).pow(e);
    PadicScalar lg = plog(one_unit_part(p, N, n));
    FamilyElement r = pexp(k.u * lg);
    return r * tame_part;
}

Weight weight_combine(const Weight& k1, const Weight& k2, long c) {
    Weight r;
    long mod = k1.tame_modulus();
    r.tame = (int)((((k1.tame + c * k2.tame) % mod) + mod) % mod);
    FamilyElement cu = k2.u * PadicScalar(k1.prime(), k1.u.rel_prec(), c);
    r.u = k1.u + cu;
    return r;
}

Weight weight_shift(const Weight& k, long m) {
    return weight_combine(k, Weight::classical(k.prime(), k.u.rel_prec(), k.u.trunc(), m), 1);
}

Assumption51Report check_assumption_5_1(const Weight& k, const Weight& s) {
    Assumption51Report rep;
    long p = k.prime();
    long q = (p == 2) ? 4 : p;
    long mod = k.tame_modulus();
    long long minv = (p == 2) ? 2 : 1;

    // the T-coefficients must already be strict; only the constant term is
    // absorbed into the integer part
    for (int i = 1; i < k.u.trunc(); ++i) {
        if (!k.u[i].is_zero() && k.u[i].valuation() < minv) {
            rep.reason = "analytic part of k is not p-adically close to an integer weight";
            return rep;
        }
        if (!s.u[i].is_zero() && s.u[i].valuation() < minv) {
            rep.reason = "analytic part of s is not p-adically close to an integer weight";
            return rep;
        }
    }
    auto residue_int = [&](const PadicScalar& c) -> long {
        if (c.is_zero()) return 0;
        if (c.valuation() >= minv) return 0;
        if (c.valuation() < 0) return -1;
        return (long)mpz_fdiv_ui(c.residue((int)minv).get_mpz_t(), (unsigned long)q);
    };
    long a = residue_int(k.u.constant_term());
    long b = residue_int(s.u.constant_term());
    if (a < 0 || b < 0) {
        rep.reason = "weight parameter has negative valuation";
        return rep;
    }
    rep.a = a;
    rep.b = b;
    rep.i = (int)((((k.tame - a) % mod) + mod) % mod);
    rep.i2 = (int)((((s.tame - b) % mod) + mod) % mod);
    rep.chi_even = (rep.i % 2 == 0);
    rep.a_even_mod_p = (a % 2 == 0);
    if (!rep.chi_even) {
        rep.reason = "square root of character unavailable";
        return rep;
    }
    // smallest alpha >= 0 with p | (a + 2 alpha)
    long alpha = 0;
    while ((a + 2 * alpha) % p != 0) {
        ++alpha;
        if (alpha > p) {
            rep.reason = "no shift alpha with p | (a + 2 alpha)";  // p = 2, a odd
            return rep;
        }
    }
    rep.alpha = alpha;
    long beta = 0;
    while (!(beta % q == 0 && beta - alpha + b >= 0)) beta += 1;
    rep.beta = beta;
    rep.admissible = true;
    return rep;
}

}  // namespace ovmf
