#include "ovmf/qexp.hpp"

namespace ovmf {

QExp::QExp(long p, int N, int M, int Q)
    : p_(p), N_(N), M_(M), Q_(Q), a_(Q + 1, FamilyElement::zero(p, N, M)) {}

QExp QExp::one(long p, int N, int M, int Q) {
    QExp f(p, N, M, Q);
    f.a_[0] = FamilyElement::one(p, N, M);
    return f;
}

bool QExp::is_zero() const {
    for (const auto& a : a_)
        if (!a.is_zero()) return false;
    return true;
}

bool QExp::is_depleted() const {
    if (!a_[0].is_zero()) return false;
    for (int n = (int)p_; n <= Q_; n += (int)p_)
        if (!a_[n].is_zero()) return false;
    return true;
}

QExp QExp::operator-() const {
    QExp r = *this;
    for (auto& a : r.a_) a = -a;
    return r;
}

QExp QExp::operator+(const QExp& o) const {
    int Q = std::min(Q_, o.Q_);
    QExp r = truncated(Q);
    for (int n = 0; n <= Q; ++n) r.a_[n] += o.a_[n];
    return r;
}

QExp QExp::operator-(const QExp& o) const { return *this + (-o); }

QExp QExp::operator*(const QExp& o) const {
    int Q = std::min(Q_, o.Q_);
    QExp r(p_, N_, M_, Q);
    for (int i = 0; i <= Q; ++i) {
        if (a_[i].is_zero()) continue;
        for (int j = 0; i + j <= Q; ++j) {
            if (o.a_[j].is_zero()) continue;
            r.a_[i + j] += a_[i] * o.a_[j];
        }
    }
    return r;
}

QExp QExp::operator*(const FamilyElement& c) const {
    QExp r = *this;
    for (auto& a : r.a_) a = a * c;
    return r;
}

QExp QExp::operator*(const PadicScalar& c) const {
    QExp r = *this;
    for (auto& a : r.a_) a = a * c;
    return r;
}

QExp QExp::truncated(int Q) const {
    QExp r(p_, N_, M_, Q);
    for (int n = 0; n <= std::min(Q, Q_); ++n) r.a_[n] = a_[n];
    return r;
}

bool QExp::eq(const QExp& o) const {
    int Q = std::min(Q_, o.Q_);
    for (int n = 0; n <= Q; ++n)
        if (!a_[n].eq(o.a_[n])) return false;
    return true;
}

QExp u_op(const QExp& f) {
    long p = f.prime();
    int Q = f.qprec() / (int)p;
    QExp r(p, f.rel_prec(), f.trunc(), Q);
    for (int n = 0; n <= Q; ++n) r[n] = f[n * (int)p];
    return r;
}

QExp v_op(const QExp& f) {
    long p = f.prime();
    int Q = f.qprec();
    QExp r(p, f.rel_prec(), f.trunc(), Q);
    for (int n = 0; n * (int)p <= Q; ++n) r[n * (int)p] = f[n];
    return r;
}

QExp deplete(const QExp& f) {
    long p = f.prime();
    QExp r = f;
    for (int n = 0; n <= f.qprec(); n += (int)p)
        r[n] = FamilyElement::zero(p, f.rel_prec(), f.trunc());
    return r;
}

QExp partial(const QExp& f) {
    QExp r = f;
    for (int n = 0; n <= f.qprec(); ++n)
        r[n] = f[n] * PadicScalar(f.prime(), f.rel_prec(), (long)n);
    return r;
}

QExp partial_s(const QExp& f, const Weight& s, long j) {
    if (!f.is_depleted())
        throw padic_domain_error("operator defined on U=0 kernel only");
    long p = f.prime();
    int N = f.rel_prec();
    QExp r = f;
    for (int n = 1; n <= f.qprec(); ++n) {
        if (n % p == 0) continue;
        if (f[n].is_zero()) continue;
        FamilyElement sn = weight_eval(s, (long)n);
        PadicScalar npow = PadicScalar(p, N, (long)n).pow(-j);
        r[n] = f[n] * sn * npow;
    }
    return r;
}

QExp twist_chi(const QExp& f, const TameChar& chi) {
    long p = f.prime();
    QExp r(p, f.rel_prec(), f.trunc(), f.qprec());
    for (int n = 0; n <= f.qprec(); ++n) {
        if (n % p == 0 || f[n].is_zero()) continue;
        r[n] = f[n] * chi.value((long)n);
    }
    return r;
}

QExp eisenstein_family(const Weight& kp, int Q) {
    long p = kp.prime();
    int N = kp.u.rel_prec(), M = kp.u.trunc();
    QExp r(p, N, M, Q);
    for (int d = 1; d <= Q; ++d) {
        if (d % p == 0) continue;
        FamilyElement term = weight_eval(kp, (long)d).div_scalar(PadicScalar(p, N, (long)d));
        for (int n = d; n <= Q; n += d) r[n] += term;
    }
    return r;
}

QExp theta_eisenstein(const Weight& kappa, const Weight& kp, int Q) {
    QExp base = eisenstein_family(kp, Q);
    long p = kp.prime();
    QExp r(p, base.rel_prec(), base.trunc(), Q);
    for (int n = 1; n <= Q; ++n) {
        if (n % p == 0 || base[n].is_zero()) continue;
        r[n] = base[n] * weight_eval(kappa, (long)n);
    }
    return r;
}

std::vector<mpz_class> delta_coefficients(int Q) {
    // eta(q)^24 via Euler's pentagonal expansion of prod (1-q^n), then ^24
    std::vector<mpz_class> eta(Q + 1, 0);
    eta[0] = 1;
    for (long k = 1;; ++k) {
        long g1 = k * (3 * k - 1) / 2;
        long g2 = k * (3 * k + 1) / 2;
        if (g1 > Q && g2 > Q) break;
        mpz_class sgn = (k % 2 == 0) ? 1 : -1;
        if (g1 <= Q) eta[g1] += sgn;
        if (g2 <= Q) eta[g2] += sgn;
    }
    auto mul = [&](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        std::vector<mpz_class> r(Q + 1, 0);
        for (int i = 0; i <= Q; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; i + j <= Q; ++j) {
                if (y[j] == 0) continue;
                r[i + j] += x[i] * y[j];
            }
        }
        return r;
    };
    std::vector<mpz_class> acc(Q + 1, 0), base = eta;
    acc[0] = 1;
    int e = 24;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    // shift by q: tau(n) = acc[n-1]
    std::vector<mpz_class> tau(Q + 1, 0);
    for (int n = 1; n <= Q; ++n) tau[n] = acc[n - 1];
    return tau;
}

QExp delta_form(long p, int N, int M, int Q) {
    auto tau = delta_coefficients(Q);
    QExp r(p, N, M, Q);
    for (int n = 1; n <= Q; ++n) r[n] = FamilyElement(p, N, M, tau[n]);
    return r;
}

QExp level_raise(const QExp& f, long a) {
    if (a < 1) throw padic_domain_error("level raise index must be >= 1");
    QExp r(f.prime(), f.rel_prec(), f.trunc(), f.qprec());
    for (int n = 0; n * a <= f.qprec(); ++n) r[(int)(n * a)] = f[n];
    return r;
}

}  // namespace ovmf
