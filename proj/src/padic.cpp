#include "ovmf/padic.hpp"

#include <algorithm>
#include <sstream>

namespace ovmf {

mpz_class pow_p(long p, long long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

PadicScalar::PadicScalar(long p, int N, const mpz_class& n) : p_(p), N_(N), zero_(false), v_(0), u_(n) {
    if (p < 2) throw padic_domain_error("prime must be >= 2");
    if (n == 0) {
        zero_ = true;
        v_ = kExact;
        u_ = 0;
        return;
    }
    mpz_class m = n;
    while (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), (unsigned long)p);
        ++v_;
    }
    u_ = m;
    normalize_unit();
}

PadicScalar PadicScalar::o_of(long p, int N, long long abs) {
    PadicScalar r(p, N);
    r.v_ = abs;
    return r;
}

PadicScalar PadicScalar::from_unit(long p, int N, long long v, const mpz_class& u) {
    PadicScalar r(p, N);
    mpz_class m = u % pow_p(p, N);
    if (m < 0) m += pow_p(p, N);
    if (m == 0) return o_of(p, N, v + N);
    r.zero_ = false;
    r.v_ = v;
    r.u_ = m;
    // shift any p-part of u into the valuation
    while (mpz_divisible_ui_p(r.u_.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(r.u_.get_mpz_t(), r.u_.get_mpz_t(), (unsigned long)p);
        ++r.v_;
        --r.N_;
        if (r.N_ <= 0) return o_of(p, N, r.v_ + r.N_ + 1);
    }
    return r;
}

PadicScalar PadicScalar::rational(long p, int N, const mpz_class& a, const mpz_class& b) {
    return PadicScalar(p, N, a) / PadicScalar(p, N, b);
}

void PadicScalar::normalize_unit() {
    mpz_class mod = pow_p(p_, N_);
    u_ %= mod;
    if (u_ < 0) u_ += mod;
    if (u_ == 0) {  // cannot happen for a true unit
        zero_ = true;
        v_ = v_ + N_;
        u_ = 0;
    }
}

PadicScalar PadicScalar::operator-() const {
    if (zero_) return *this;
    PadicScalar r = *this;
    r.u_ = pow_p(p_, N_) - r.u_;
    return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    if (zero_ && v_ >= kExact) return o;
    if (o.zero_ && o.v_ >= kExact) return *this;
    long p = zero_ ? o.p_ : p_;
    int N = zero_ ? o.N_ : (o.zero_ ? N_ : std::min(N_, o.N_));
    long long A = std::min(abs_prec(), o.abs_prec());
    if (zero_ || o.zero_) {
        const PadicScalar& nz = zero_ ? o : *this;
        if (nz.zero_) return o_of(p, N, A);
        if (nz.v_ >= A) return o_of(p, N, A);
        long long newN = A - nz.v_;
        PadicScalar r(p, (int)std::min<long long>(newN, nz.N_));
        r.zero_ = false;
        r.v_ = nz.v_;
        r.u_ = nz.u_;
        r.normalize_unit();
        return r;
    }
    // a term with valuation at or above the joint absolute precision is
    // invisible; dropping it keeps the power-of-p exponents bounded
    if (v_ >= A || o.v_ >= A) {
        const PadicScalar& nz = (v_ >= A) ? o : *this;
        if (nz.v_ >= A) return o_of(p, N, A);
        PadicScalar r(p, (int)std::min<long long>(A - nz.v_, nz.N_));
        r.zero_ = false;
        r.v_ = nz.v_;
        r.u_ = nz.u_;
        r.normalize_unit();
        return r;
    }
    long long w = std::min(v_, o.v_);
    mpz_class mod = pow_p(p, A - w);
    mpz_class s = u_ * pow_p(p, v_ - w) + o.u_ * pow_p(p, o.v_ - w);
    s %= mod;
    if (s < 0) s += mod;
    if (s == 0) return o_of(p, N, A);
    long long t = 0;
    while (mpz_divisible_ui_p(s.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), (unsigned long)p);
        ++t;
    }
    long long v = w + t;
    // the sum is known modulo p^A whatever the summands' relative precisions
    // were individually, so its relative precision is A - v, which can exceed
    // both inputs' when a high-valuation low-precision term is absorbed
    long long newN = A - v;
    if (newN <= 0) return o_of(p, N, A);
    PadicScalar r(p, (int)newN);
    r.zero_ = false;
    r.v_ = v;
    r.u_ = s;
    r.normalize_unit();
    return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    if (is_exact_zero()) return *this;
    if (o.is_exact_zero()) return o;
    long p = zero_ ? o.p_ : p_;
    if (zero_ || o.zero_) {
        // O(p^a) * u p^v = O(p^(a+v)); O * O = O(p^(a+a'))
        long long abs = (zero_ ? v_ : v_) + (o.zero_ ? o.v_ : o.v_);
        int N = zero_ ? (o.zero_ ? std::min(N_, o.N_) : o.N_) : N_;
        return o_of(p, N, abs);
    }
    int N = std::min(N_, o.N_);
    PadicScalar r(p, N);
    r.zero_ = false;
    r.v_ = v_ + o.v_;
    r.u_ = u_ * o.u_;
    r.normalize_unit();
    return r;
}

PadicScalar PadicScalar::inv() const {
    if (zero_) throw precision_error("precision-exhausted divisor");
    PadicScalar r(p_, N_);
    r.zero_ = false;
    r.v_ = -v_;
    mpz_class mod = pow_p(p_, N_);
    if (mpz_invert(r.u_.get_mpz_t(), u_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw precision_error("precision-exhausted divisor");
    return r;
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const { return *this * o.inv(); }

PadicScalar PadicScalar::pow(long long e) const {
    if (zero_) {
        if (e == 0) throw padic_domain_error("0^0 at exhausted precision");
        return is_exact_zero() ? *this : o_of(p_, N_, v_ * e);
    }
    if (e < 0) return inv().pow(-e);
    PadicScalar acc = one(p_, N_), base = *this;
    long long k = e;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool PadicScalar::eq(const PadicScalar& o) const {
    PadicScalar d = *this - o;
    return d.is_zero();
}

mpz_class PadicScalar::residue(int k) const {
    if (zero_) {
        if (v_ < k) throw precision_error("residue below absolute precision");
        return 0;
    }
    if (v_ < 0) throw padic_domain_error("negative valuation has no integer residue");
    if (v_ + N_ < k) throw precision_error("residue below absolute precision");
    mpz_class r = u_ * pow_p(p_, v_);
    return r % pow_p(p_, k);
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (zero_) {
        if (v_ >= kExact) os << "0";
        else os << "O(" << p_ << "^" << v_ << ")";
        return os.str();
    }
    os << u_.get_str() << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << (v_ + N_) << ")";
    return os.str();
}

PadicScalar teichmuller(long p, int N, const mpz_class& n) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p))
        throw padic_domain_error("non-unit argument");
    if (p == 2) {
        long r = mpz_fdiv_ui(n.get_mpz_t(), 4);
        return PadicScalar(p, N, r == 1 ? 1 : -1);
    }
    mpz_class mod = pow_p(p, N);
    mpz_class x = n % mod;
    if (x < 0) x += mod;
    for (int i = 0; i < 2 * N + 4; ++i) {
        mpz_class y;
        mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), (unsigned long)p, mod.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return PadicScalar::from_unit(p, N, 0, x);
}

PadicScalar one_unit_part(long p, int N, const mpz_class& n) {
    return PadicScalar(p, N, n) / teichmuller(p, N, n);
}

PadicScalar plog(const PadicScalar& x) {
    long p = x.prime();
    int N = x.rel_prec();
    PadicScalar y = x - PadicScalar::one(p, N);
    long long minv = (p == 2) ? 2 : 1;
    if (!y.is_zero() && y.valuation() < minv)
        throw padic_domain_error("plog argument is not a 1-unit");
    if (y.is_zero()) return PadicScalar::zero(p, N);
    // target absolute precision of the sum
    long long A = y.abs_prec();
    PadicScalar acc = PadicScalar::o_of(p, N, A);
    PadicScalar term = y;  // y^m, m = 1...
    long long m = 1;
    while (!term.is_zero() && term.valuation() < A + 2 * N) {
        PadicScalar c = term / PadicScalar(p, N, mpz_class((long)m));
        if (m % 2 == 0) c = -c;
        acc += c;
        term = term * y;
        ++m;
        long long vm = 0;
        { long long t = m; while (t % p == 0) { ++vm; t /= p; } }
        if (term.valuation() - vm >= A) break;
        if (m > 64 * (N + 4)) break;
    }
    return acc;
}

PadicScalar pexp(const PadicScalar& x) {
    long p = x.prime();
    int N = x.rel_prec();
    if (x.is_zero()) return PadicScalar::one(p, N);
    long long minv = (p == 2) ? 2 : 1;
    if (x.valuation() < minv) throw padic_domain_error("exp-divergent argument");
    PadicScalar acc = PadicScalar::one(p, N);
    PadicScalar term = PadicScalar::one(p, N);
    mpz_class fact = 1;
    for (long long m = 1; m <= 64LL * (N + 4); ++m) {
        term = term * x;
        fact *= (long)m;
        PadicScalar c = term / PadicScalar(p, N, fact);
        if (c.is_zero() || c.valuation() >= N + 2) break;
        acc += c;
    }
    return acc;
}

PadicScalar binomial(const PadicScalar& u, int j) {
    long p = u.prime() == 0 ? 2 : u.prime();
    int N = u.rel_prec() == 0 ? 1 : u.rel_prec();
    PadicScalar acc = PadicScalar::one(p, N);
    mpz_class fact = 1;
    for (int i = 0; i < j; ++i) {
        acc = acc * (u - PadicScalar(p, N, (long)i));
        fact *= (i + 1);
    }
    return acc / PadicScalar(p, N, fact);
}

PadicScalar hensel_sqrt(const PadicScalar& a) {
    if (a.is_zero()) {
        if (a.is_exact_zero()) return a;
        throw precision_error("square root of apparent zero");
    }
    long p = a.prime();
    int N = a.rel_prec();
    long long v = a.valuation();
    if (v % 2 != 0) throw padic_domain_error("no square root in base ring");
    mpz_class u = a.unit();
    mpz_class mod = pow_p(p, N);
    mpz_class r;
    if (p == 2) {
        if (N >= 3 && mpz_fdiv_ui(u.get_mpz_t(), 8) != 1)
            throw padic_domain_error("no square root in base ring");
        // lift bit by bit: r^2 = u mod 2^k
        r = 1;
        for (int k = 3; k < N; ++k) {
            mpz_class sq = (r * r) % pow_p(2, k + 1);
            mpz_class diff = (u - sq) % pow_p(2, k + 1);
            if (diff < 0) diff += pow_p(2, k + 1);
            if (diff != 0) r += pow_p(2, k - 1);
        }
        r %= mod;
        if (mpz_fdiv_ui(r.get_mpz_t(), 4) == 3) r = mod - r;
    } else {
        long u0 = mpz_fdiv_ui(u.get_mpz_t(), (unsigned long)p);
        long r0 = 0;
        for (long i = 1; i < p; ++i)
            if ((i * i) % p == (long)u0) { r0 = i; break; }
        if (r0 == 0) throw padic_domain_error("no square root in base ring");
        r = r0;
        mpz_class inv2;
        mpz_class two = 2;
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), mod.get_mpz_t());
        for (int i = 0; i < N + 2; ++i) {
            // r <- (r + u/r)/2
            mpz_class rinv;
            mpz_invert(rinv.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
            r = ((r + u * rinv) * inv2) % mod;
            if (r < 0) r += mod;
        }
        if (mpz_fdiv_ui(r.get_mpz_t(), (unsigned long)p) > (unsigned long)(p / 2)) r = mod - r;
    }
    return PadicScalar::from_unit(p, N, v / 2, r);
}

}  // namespace ovmf
