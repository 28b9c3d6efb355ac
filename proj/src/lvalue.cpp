#include "ovmf/lvalue.hpp"

namespace ovmf {

PadicScalar EigenformData::hecke_constant() const {
    long p = a_p.prime();
    int N = a_p.rel_prec();
    return chi_p * PadicScalar(p, N, p).pow(k - 1);
}

std::pair<PadicScalar, PadicScalar> solve_hecke_quadratic(const EigenformData& f) {
    long p = f.a_p.prime();
    int N = f.a_p.rel_prec();
    PadicScalar c = f.hecke_constant();
    PadicPoly P(p, N, {c, -f.a_p, PadicScalar::one(p, N)});
    auto slopes = newton_polygon(P);
    if (slopes.size() == 2) {
        // separated slopes: Hensel split into two linear factors
        auto [Ple, Pgt] = slope_factor(P, slopes[0].slope);
        return {-Ple[0], -(Pgt[0] / Pgt[1])};
    }
    // single segment: quadratic formula
    PadicScalar D = f.a_p * f.a_p - c * PadicScalar(p, N, 4);
    if (D.is_zero()) throw padic_domain_error("regularity assumption violated");
    PadicScalar sq;
    try {
        sq = hensel_sqrt(D);
    } catch (const padic_domain_error&) {
        throw padic_domain_error("roots require quadratic extension");
    }
    PadicScalar half = PadicScalar(p, N, 2).inv();
    PadicScalar r1 = (f.a_p + sq) * half, r2 = (f.a_p - sq) * half;
    if ((r1 - r2).is_zero()) throw padic_domain_error("regularity assumption violated");
    bool swap = r1.valuation() > r2.valuation() ||
                (r1.valuation() == r2.valuation() &&
                 (p == 2 ? r1.residue(2) > r2.residue(2) : r1.residue(1) > r2.residue(1)));
    if (swap) std::swap(r1, r2);
    return {r1, r2};
}

StabilizedPair stabilize(const EigenformData& f, int Q) {
    auto [alpha, beta] = solve_hecke_quadratic(f);
    QExp F = f.gen(Q);
    QExp VF = v_op(F);
    StabilizedPair r;
    r.alpha = alpha;
    r.beta = beta;
    r.f_alpha = F - VF * beta;
    r.f_beta = F - VF * alpha;
    return r;
}

PMatrix u_matrix_on_span(const EigenformData& f, int N) {
    long p = f.a_p.prime();
    PMatrix M(p, N, 2, 2);
    M.at(0, 0) = f.a_p;
    M.at(0, 1) = PadicScalar::one(p, N);
    M.at(1, 0) = -f.hecke_constant();
    return M;
}

static PadicScalar petersson_v_factor(const EigenformData& fstar) {
    long p = fstar.a_p.prime();
    int N = fstar.a_p.rel_prec();
    PadicScalar pk1 = PadicScalar(p, N, p).pow(fstar.k - 1);
    PadicScalar pp1 = PadicScalar(p, N, p + 1);
    return fstar.chi_p * fstar.chi_p * fstar.a_p / (pk1 * pp1);
}

PadicScalar petersson_pair(const EigenformData& fstar, const PadicScalar& x,
                           const PadicScalar& y) {
    return x + y * petersson_v_factor(fstar);
}

FamilyElement petersson_pair(const EigenformData& fstar, const FamilyElement& x,
                             const FamilyElement& y) {
    return x + y * petersson_v_factor(fstar);
}

std::vector<FamilyElement> eigen_coordinates(const QExp& F, const std::vector<QExp>& basis) {
    long p = F.prime();
    int N = F.rel_prec(), M = F.trunc();
    int m = (int)basis.size();
    int rows = F.qprec() + 1;
    std::vector<std::vector<FamilyElement>> A(rows);
    std::vector<FamilyElement> b(rows, FamilyElement::zero(p, N, M));
    for (int n = 0; n < rows; ++n) {
        A[n].reserve(m);
        for (int i = 0; i < m; ++i) A[n].push_back(basis[i][n]);
        b[n] = F[n];
    }
    std::vector<int> pivot(m, -1);
    std::vector<bool> used(rows, false);
    for (int j = 0; j < m; ++j) {
        int best = -1;
        long long bestv = PadicScalar::kExact;
        for (int r = 0; r < rows; ++r) {
            if (used[r] || A[r][j].constant_term().is_zero()) continue;
            if (A[r][j].constant_term().valuation() < bestv) {
                bestv = A[r][j].constant_term().valuation();
                best = r;
            }
        }
        if (best < 0) throw padic_domain_error("basis not independent on leading coefficients");
        pivot[j] = best;
        used[best] = true;
        FamilyElement pi = A[best][j].inv();
        for (int r = 0; r < rows; ++r) {
            if (used[r] || A[r][j].is_zero()) continue;
            FamilyElement fct = A[r][j] * pi;
            for (int jj = j; jj < m; ++jj) A[r][jj] -= fct * A[best][jj];
            b[r] -= fct * b[best];
        }
    }
    std::vector<FamilyElement> x(m, FamilyElement::zero(p, N, M));
    for (int j = m - 1; j >= 0; --j) {
        int r = pivot[j];
        FamilyElement acc = b[r];
        for (int jj = j + 1; jj < m; ++jj) acc -= A[r][jj] * x[jj];
        x[j] = acc * A[r][j].inv();
    }
    // the solve used m rows; the rest of the expansion must agree
    QExp recon = QExp::zero(p, N, M, F.qprec());
    for (int i = 0; i < m; ++i) recon += basis[i] * x[i];
    if (!recon.eq(F)) throw padic_domain_error("input outside span");
    return x;
}

namespace {

using Mat2 = std::array<Frac, 4>;  // row-major 2x2 over the rational-function field

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

Mat2 mat_inv(const Mat2& A) {
    Frac det = A[0] * A[3] - A[1] * A[2];
    Frac di = det.inv();
    return {A[3] * di, -A[1] * di, -A[2] * di, A[0] * di};
}

Mat2 mat_sub(const Mat2& A, const Mat2& B) {
    return {A[0] - B[0], A[1] - B[1], A[2] - B[2], A[3] - B[3]};
}

Mat2 mat_scale(const Mat2& A, const Frac& s) {
    return {A[0] * s, A[1] * s, A[2] * s, A[3] * s};
}

}  // namespace

SymbolicBracketCheck symbolic_bracket_check() {
    // variables: alpha_y, beta_y, alpha_z, beta_z, alpha_x*, beta_x*, c.
    // p^{t'} is set to 1: substituting alpha_y -> p^{t'} alpha_y,
    // beta_y -> p^{t'} beta_y recovers the general identity, since the two
    // routes only see the products p^{t'} a b and p^{2t'} ay by az bz.
    const int n = 7;
    auto V = [&](int i) { return Frac(MPoly::var(n, i)); };
    Frac ay = V(0), by = V(1), az = V(2), bz = V(3), as = V(4), bs = V(5), c = V(6);
    Frac one = Frac::one(n), zero = Frac(MPoly(n));

    EulerFactors<Frac> e{one, ay, by, az, bz, one, as, bs, c};
    SymbolicBracketCheck out;
    out.bracket = interpolation_bracket(e);

    // U on span{gamma, V gamma}: U(gamma) = a gamma - s V(gamma),
    // U(V gamma) = gamma, with a = as + bs, s = as bs the Hecke data of f*.
    Frac a = as + bs, s = as * bs;
    Mat2 U{a, one, -s, zero};
    Mat2 I{one, zero, zero, one};
    Mat2 Uinv = mat_inv(U);
    Mat2 EU = I;
    for (const Frac& rho : {ay * az, ay * bz, by * az, by * bz})
        EU = mat_mul(EU, mat_sub(I, mat_scale(Uinv, rho)));
    Mat2 E1U = mat_sub(I, mat_scale(mat_mul(Uinv, Uinv), ay * by * az * bz));
    Mat2 R = mat_mul(EU, mat_inv(E1U));
    // image of gamma = (1,0), paired by L(gamma)=1, L(V gamma)=c
    out.matrix_route = R[0] + R[2] * c;
    out.match = out.bracket == out.matrix_route;
    return out;
}

EulerFactors<PadicScalar> euler_factors_numeric(const EigenformData& fstar,
                                                const EigenformData& g,
                                                const EigenformData& h, long tprime) {
    long p = fstar.a_p.prime();
    int N = fstar.a_p.rel_prec();
    auto [ay, by] = solve_hecke_quadratic(g);
    auto [az, bz] = solve_hecke_quadratic(h);
    auto [as, bs] = solve_hecke_quadratic(fstar);
    EulerFactors<PadicScalar> e;
    e.one = PadicScalar::one(p, N);
    e.ay = ay; e.by = by; e.az = az; e.bz = bz;
    e.pt = PadicScalar(p, N, p).pow(tprime);
    e.as = as; e.bs = bs;
    e.c = petersson_v_factor(fstar);
    return e;
}

TripleBracketResult triple_bracket(const EigenformData& fstar, const EigenformData& g,
                                   const EigenformData& h, long tprime, long p, int N,
                                   int M, int Q) {
    TripleBracketResult res;
    auto stage = [&res](const char* tag, auto&& fn) {
        try {
            auto r = fn();
            res.stage_log.push_back(std::string(tag) + ": ok");
            return r;
        } catch (const precision_error& e) {
            throw precision_error(std::string(tag) + ": " + e.what());
        } catch (const padic_domain_error& e) {
            throw padic_domain_error(std::string(tag) + ": " + e.what());
        }
    };
    NearlyExp w = stage("nabla", [&] {
        QExp Gd = deplete(g.gen(Q));
        NearlyExp base(Weight::classical(p, N, M, g.k), Gd);
        return nabla_n_closed(base, tprime);
    });
    NearlyExp prod = stage("mul", [&] {
        NearlyExp H(Weight::classical(p, N, M, h.k), h.gen(Q));
        return mul(w, H);
    });
    QExp gam = stage("hdagger", [&] {
        return hdagger(prod, Weight::classical(p, N, M, fstar.k - 2));
    });
    std::vector<FamilyElement> coords = stage("coordinates", [&] {
        QExp Fs = fstar.gen(Q);
        return eigen_coordinates(gam, {Fs, v_op(Fs)});
    });
    FamilyElement val = stage("pairing", [&] {
        return petersson_pair(fstar, coords[0], coords[1]);
    });
    res.value = val.constant_term();
    return res;
}

QExp eisenstein_classical(long p, int N, int M, int Q, long k) {
    long num, den;
    switch (k) {  // -B_k / 2k
        case 4: num = 1; den = 240; break;
        case 6: num = -1; den = 504; break;
        case 8: num = 1; den = 480; break;
        case 10: num = -1; den = 264; break;
        case 12: num = 691; den = 65520; break;
        case 14: num = -1; den = 24; break;
        default: throw padic_domain_error("Eisenstein constant term not tabulated");
    }
    QExp r(p, N, M, Q);
    r[0] = FamilyElement(M, PadicScalar::rational(p, N, num, den));
    for (int d = 1; d <= Q; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), (unsigned long)d, (unsigned long)(k - 1));
        FamilyElement t(p, N, M, dk);
        for (int n = d; n <= Q; n += d) r[n] += t;
    }
    return r;
}

EigenformData eisenstein_eigenform(long p, int N, int M, long k) {
    EigenformData f;
    f.label = "E" + std::to_string(k);
    f.k = k;
    f.a_p = PadicScalar::one(p, N) + PadicScalar(p, N, p).pow(k - 1);
    f.chi_p = PadicScalar::one(p, N);
    f.gen = [p, N, M, k](int Q) { return eisenstein_classical(p, N, M, Q, k); };
    return f;
}

}  // namespace ovmf
