#include "ovmf/nearly.hpp"

namespace ovmf {

bool NearlyExp::is_zero() const {
    for (const auto& g : comps_)
        if (!g.is_zero()) return false;
    return true;
}

bool NearlyExp::is_depleted() const {
    for (const auto& g : comps_)
        if (!g.is_depleted()) return false;
    return true;
}

NearlyExp NearlyExp::operator+(const NearlyExp& o) const {
    std::vector<QExp> comps;
    int d = std::max(degree(), o.degree());
    for (int h = 0; h <= d; ++h) {
        if (h <= degree() && h <= o.degree()) comps.push_back(comps_[h] + o.comps_[h]);
        else if (h <= degree()) comps.push_back(comps_[h].truncated(std::min(qprec(), o.qprec())));
        else comps.push_back(o.comps_[h].truncated(std::min(qprec(), o.qprec())));
    }
    return NearlyExp(k_, std::move(comps));
}

NearlyExp NearlyExp::operator-() const {
    std::vector<QExp> comps;
    for (const auto& g : comps_) comps.push_back(-g);
    return NearlyExp(k_, std::move(comps));
}

NearlyExp NearlyExp::operator-(const NearlyExp& o) const { return *this + (-o); }

bool NearlyExp::eq(const NearlyExp& o) const {
    int d = std::max(degree(), o.degree());
    for (int h = 0; h <= d; ++h) {
        bool za = h > degree() || comps_[h].is_zero();
        bool zb = h > o.degree() || o.comps_[h].is_zero();
        if (za && zb) continue;
        if (za != zb) {
            const QExp& g = za ? o.comps_[h] : comps_[h];
            if (!g.is_zero()) return false;
        } else if (!comps_[h].eq(o.comps_[h])) {
            return false;
        }
    }
    return true;
}

NearlyExp NearlyExp::truncated(int Q) const {
    std::vector<QExp> comps;
    for (const auto& g : comps_) comps.push_back(g.truncated(Q));
    return NearlyExp(k_, std::move(comps));
}

NearlyExp mul(const NearlyExp& w, const NearlyExp& wp) {
    long p = w[0].prime();
    int N = w[0].rel_prec(), M = w[0].trunc();
    int Q = std::min(w.qprec(), wp.qprec());
    int d = w.degree() + wp.degree();
    std::vector<QExp> comps(d + 1, QExp::zero(p, N, M, Q));
    for (int h = 0; h <= w.degree(); ++h)
        for (int h2 = 0; h2 <= wp.degree(); ++h2)
            comps[h + h2] += w[h] * wp[h2];
    return NearlyExp(weight_combine(w.weight(), wp.weight(), 1) /* k + k' */, std::move(comps));
}

NearlyExp nabla(const NearlyExp& w) {
    long p = w[0].prime();
    int N = w[0].rel_prec(), M = w[0].trunc();
    int Q = w.qprec();
    const FamilyElement& uk = w.weight().u;
    std::vector<QExp> comps(w.degree() + 2, QExp::zero(p, N, M, Q));
    for (int h = 0; h <= w.degree(); ++h) {
        comps[h] += partial(w[h]);
        comps[h + 1] += w[h] * (uk - (long)h);
    }
    return NearlyExp(weight_shift(w.weight(), 2), std::move(comps));
}

FamilyElement nabla_coefficient(const FamilyElement& uk, long N, long h, long j) {
    long p = uk.prime();
    int prec = uk.rel_prec(), M = uk.trunc();
    if (j == 0) return FamilyElement::one(p, prec, M);
    // C(N, j)
    mpz_class binom = 1;
    for (long i = 0; i < j; ++i) {
        binom *= (N - i);
        binom /= (i + 1);
    }
    FamilyElement acc(p, prec, M, binom);
    for (long i = 0; i < j; ++i) acc *= (uk - h + N - 1 - i);
    return acc;
}

FamilyElement nabla_coefficient_recursive(const FamilyElement& uk, long N, long h, long j) {
    long p = uk.prime();
    int prec = uk.rel_prec(), M = uk.trunc();
    // row n of the triangle a_{n,k,h,.}, starting from a_{1,h,0}=1, a_{1,h,1}=u_k-h
    std::vector<FamilyElement> row{FamilyElement::one(p, prec, M), uk - h};
    for (long n = 1; n < N; ++n) {
        std::vector<FamilyElement> next(n + 2, FamilyElement::zero(p, prec, M));
        next[0] = FamilyElement::one(p, prec, M);
        for (long jj = 1; jj <= n + 1; ++jj) {
            FamilyElement v = (jj <= n) ? row[jj] : FamilyElement::zero(p, prec, M);
            next[jj] = v + (uk + 2 * n - h - jj + 1) * row[jj - 1];
        }
        row = std::move(next);
    }
    if (j > (long)row.size() - 1) return FamilyElement::zero(p, prec, M);
    return row[j];
}

NearlyExp nabla_n_closed(const NearlyExp& w, long N) {
    if (N == 0) return w;
    long p = w[0].prime();
    int prec = w[0].rel_prec(), M = w[0].trunc();
    int Q = w.qprec();
    const FamilyElement& uk = w.weight().u;
    std::vector<QExp> comps(w.degree() + N + 1, QExp::zero(p, prec, M, Q));
    for (int h = 0; h <= w.degree(); ++h) {
        if (w[h].is_zero()) continue;
        // partial^{N-j}(g_h) computed incrementally from j = N down to 0
        QExp dpow = w[h];
        std::vector<QExp> dpows(N + 1, QExp::zero(p, prec, M, Q));
        dpows[N] = w[h];
        for (long j = N - 1; j >= 0; --j) {
            dpow = partial(dpow);
            dpows[j] = dpow;
        }
        for (long j = 0; j <= N; ++j) {
            FamilyElement a = nabla_coefficient(uk, N, h, j);
            if (a.is_zero()) continue;
            comps[j + h] += dpows[j] * a;
        }
    }
    return NearlyExp(weight_shift(w.weight(), 2 * N), std::move(comps));
}

NablaSResult nabla_s(const NearlyExp& w, const Weight& s, long J, bool require_convergence) {
    long p = w[0].prime();
    int prec = w[0].rel_prec(), M = w[0].trunc();
    int Q = w.qprec();
    if (!w.is_depleted())
        throw padic_domain_error("operator defined on U=0 kernel only");
    Assumption51Report rep = check_assumption_5_1(w.weight(), s);
    if (!rep.admissible)
        throw padic_domain_error("weights violate Assumption 5.1: " + rep.reason);
    if (J < 0) J = 2 * p * p + 8;
    const FamilyElement& uk = w.weight().u;
    const FamilyElement& us = s.u;
    FamilyElement uks = uk + us;
    std::vector<QExp> comps(w.degree() + J + 1, QExp::zero(p, prec, M, Q));
    // s(n) and n^{-1} are shared across components and tail orders
    std::vector<FamilyElement> sval(Q + 1, FamilyElement::zero(p, prec, M));
    std::vector<PadicScalar> ninv(Q + 1, PadicScalar::zero(p, prec));
    for (int n = 1; n <= Q; ++n) {
        if (n % p == 0) continue;
        sval[n] = weight_eval(s, (long)n);
        ninv[n] = PadicScalar(p, prec, (long)n).inv();
    }
    long long tail_val = PadicScalar::kExact;
    std::vector<long long> term_vals(J + 1, PadicScalar::kExact);
    for (int h = 0; h <= w.degree(); ++h) {
        if (w[h].is_zero()) continue;
        // base_n = a_n s(n); the j-th term scales it by n^{-j}
        QExp base = QExp::zero(p, prec, M, Q);
        for (int n = 1; n <= Q; ++n) {
            if (n % p == 0 || w[h][n].is_zero()) continue;
            base[n] = w[h][n] * sval[n];
        }
        FamilyElement poch = FamilyElement::one(p, prec, M);
        FamilyElement binom = FamilyElement::one(p, prec, M);
        for (long j = 0; j <= J; ++j) {
            if (j > 0) {
                poch *= (uks - h - 1 - (j - 1));          // factor i = j-1
                binom = binom * (us - (j - 1));           // running C(u_s, j)
                binom = binom.div_integer(j);
                for (int n = 1; n <= Q; ++n) {
                    if (n % p == 0 || base[n].is_zero()) continue;
                    base[n] = base[n] * ninv[n];
                }
            }
            FamilyElement coeff = binom * poch;
            QExp term = base * coeff;
            comps[j + h] += term;
            long long tv = PadicScalar::kExact;
            for (int n = 0; n <= Q; ++n) tv = std::min(tv, term[n].min_valuation());
            term_vals[j] = std::min(term_vals[j], tv);
            if (j == J) tail_val = std::min(tail_val, tv);
        }
    }
    NablaSResult res;
    res.term_valuations = std::move(term_vals);
    res.tail_valuation = tail_val;
    res.converged = (tail_val >= prec);  // below working absolute precision
    if (require_convergence && !res.converged)
        throw precision_error("increase tail order or lower precision target");
    res.value = NearlyExp(weight_combine(w.weight(), s, 2), std::move(comps));
    return res;
}

NearlyExp nabla_a_chi(const NearlyExp& f, long a, const TameChar& chip) {
    NearlyExp w = nabla_n_closed(f, a);
    std::vector<QExp> comps;
    for (int h = 0; h <= w.degree(); ++h) comps.push_back(twist_chi(w[h], chip));
    Weight kw = w.weight();
    long mod = kw.tame_modulus();
    kw.tame = (int)((((kw.tame + 2 * chip.e) % mod) + mod) % mod);
    return NearlyExp(kw, std::move(comps));
}

NearlyExp v_nearly(const NearlyExp& w) {
    long p = w[0].prime();
    int N = w[0].rel_prec();
    std::vector<QExp> comps;
    for (int h = 0; h <= w.degree(); ++h) {
        PadicScalar scale = PadicScalar(p, N, (long)p).pow(-(long long)h);
        comps.push_back(v_op(w[h]) * scale);
    }
    return NearlyExp(w.weight(), std::move(comps));
}

NearlyExp u_nearly(const NearlyExp& w) {
    long p = w[0].prime();
    int N = w[0].rel_prec();
    std::vector<QExp> comps;
    for (int h = 0; h <= w.degree(); ++h) {
        PadicScalar scale = PadicScalar(p, N, (long)p).pow((long long)h);
        comps.push_back(u_op(w[h]) * scale);
    }
    return NearlyExp(w.weight(), std::move(comps));
}

QExp hdagger(const NearlyExp& gamma, const Weight& k) {
    long p = gamma[0].prime();
    int N = gamma[0].rel_prec(), M = gamma[0].trunc();
    int Q = gamma.qprec();
    const FamilyElement& uk = k.u;
    QExp acc = QExp::zero(p, N, M, Q);
    FamilyElement denom = FamilyElement::one(p, N, M);
    for (int i = 0; i <= gamma.degree(); ++i) {
        if (i > 0) {
            FamilyElement factor = uk - (long)(i - 1);
            if (factor.constant_term().is_zero())
                throw padic_domain_error("pole of overconvergent projection");
            denom *= factor;
        }
        if (gamma[i].is_zero()) continue;
        QExp di = gamma[i];
        for (int t = 0; t < i; ++t) di = partial(di);
        QExp term = di * denom.inv();
        if (i % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

QExp fil0_project(const NearlyExp& w) { return w[0]; }

}  // namespace ovmf
