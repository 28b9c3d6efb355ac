#pragma once

#include <vector>

#include "ovmf/family.hpp"

namespace ovmf {

/// Truncated q-expansion a_0 + a_1 q + ... + a_Q q^Q over the family ring.
class QExp {
public:
    QExp() = default;
    QExp(long p, int N, int M, int Q);

    static QExp zero(long p, int N, int M, int Q) { return QExp(p, N, M, Q); }
    static QExp one(long p, int N, int M, int Q);

    long prime() const { return p_; }
    int rel_prec() const { return N_; }
    int trunc() const { return M_; }
    int qprec() const { return Q_; }
    const FamilyElement& operator[](int n) const { return a_[n]; }
    FamilyElement& operator[](int n) { return a_[n]; }

    bool is_zero() const;
    /// a_0 = 0 and a_n = 0 whenever p | n.
    bool is_depleted() const;

    QExp operator-() const;
    QExp operator+(const QExp& o) const;
    QExp operator-(const QExp& o) const;
    QExp operator*(const QExp& o) const;  // Cauchy product, truncated at min(Q, Q')
    QExp operator*(const FamilyElement& c) const;
    QExp operator*(const PadicScalar& c) const;
    QExp& operator+=(const QExp& o) { return *this = *this + o; }
    QExp& operator-=(const QExp& o) { return *this = *this - o; }

    /// Truncate (or zero-extend) to q-precision Q.
    QExp truncated(int Q) const;

    bool eq(const QExp& o) const;
    bool operator==(const QExp& o) const { return eq(o); }

private:
    long p_ = 0;
    int N_ = 0, M_ = 0, Q_ = 0;
    std::vector<FamilyElement> a_;
};

/// U: a_n <- a_{np}; output q-precision floor(Q/p).
QExp u_op(const QExp& f);

/// V: a_n -> coefficient of q^{pn}.
QExp v_op(const QExp& f);

/// p-depletion f - V(U(f)): zeroes a_0 and every a_n with p | n.
QExp deplete(const QExp& f);

/// d = q d/dq: a_n <- n a_n.
QExp partial(const QExp& f);

/// partial^{s-j} on depleted expansions: a_n <- s(n) n^{-j} a_n.
QExp partial_s(const QExp& f, const Weight& s, long j);

/// Coefficient-wise twist by a tame character.
QExp twist_chi(const QExp& f, const TameChar& chi);

/// Depleted Eisenstein family: a_0 = 0, a_n = sum_{d|n, p∤d} kappa'(d)/d.
QExp eisenstein_family(const Weight& kp, int Q);

/// Two-variable family: a_n = kappa(<n>) a(n, E, kappa') for (n,p)=1, else 0.
QExp theta_eisenstein(const Weight& kappa, const Weight& kp, int Q);

/// q prod_{n>=1} (1-q^n)^24, truncated at q^Q.
QExp delta_form(long p, int N, int M, int Q);

/// [a]*: a_n -> coefficient of q^{an}.
QExp level_raise(const QExp& f, long a);

/// Integer eta-product coefficients tau(1..Q) of the discriminant cusp form
/// (test oracle helper; exact integers).
std::vector<mpz_class> delta_coefficients(int Q);

}  // namespace ovmf
