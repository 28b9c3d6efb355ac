// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <cstdio>
#include <string>

#include "ovmf/json_io.hpp"
#include "helpers.hpp"

using namespace ovmf;
using ovmf::testing::random_family;
using ovmf::testing::random_qexp;
using ovmf::testing::random_strict_u;

namespace {

NearlyExp random_nearly(long p, int N, int M, int Q, int deg, const Weight& k,
                        std::mt19937_64& rng) {
    std::vector<QExp> comps;
    for (int h = 0; h <= deg; ++h) comps.push_back(random_qexp(p, N, M, Q, rng));
    return NearlyExp(k, std::move(comps));
}

bool operator_algebra() {
    std::mt19937_64 rng(1001);
    for (long p : {2L, 3L, 5L}) {
        int N = 8, M = 2, Q = 200;
        for (int trial = 0; trial < 167; ++trial) {
            QExp f = random_qexp(p, N, M, Q, rng);
            if (!u_op(v_op(f)).eq(f)) return false;
            QExp d = deplete(f);
            if (!u_op(d).is_zero()) return false;
            if (!deplete(d).eq(d)) return false;
        }
    }
    return true;
}

bool connection_closed_form() {
    long p = 5;
    int N = 10, M = 2, Q = 25;
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 100; ++trial) {
        Weight k;
        k.tame = 0;
        k.u = random_family(p, N, M, rng);
        NearlyExp w = random_nearly(p, N, M, Q, (int)(rng() % 3), k, rng);
        long steps = 1 + (long)(rng() % 8);
        NearlyExp it = w;
        for (long i = 0; i < steps; ++i) it = nabla(it);
        if (!nabla_n_closed(w, steps).eq(it)) return false;
    }
    for (int trial = 0; trial < 10; ++trial) {
        FamilyElement uk = random_family(p, 12, 4, rng);
        for (long n = 1; n <= 8; ++n)
            for (long h = 0; h <= 3; ++h)
                for (long j = 0; j <= n; ++j)
                    if (!nabla_coefficient(uk, n, h, j).eq(
                            nabla_coefficient_recursive(uk, n, h, j)))
                        return false;
    }
    return true;
}

bool order_p_divisibility() {
    long p = 5;
    int N = 12, M = 4;
    std::mt19937_64 rng(1003);
    for (int trial = 0; trial < 10; ++trial) {
        FamilyElement uk = random_strict_u(p, N, M, rng);
        for (long h = 0; h <= 5; ++h)
            for (long j = 1; j <= p; ++j)
                if (nabla_coefficient(uk, p, h, j).min_valuation() < 1) return false;
    }
    int Q = 100;
    QExp d = deplete(random_qexp(p, N, 2, Q, rng));
    QExp it = d;
    for (long i = 0; i < p - 1; ++i) it = partial(it);
    QExp diff = it - d;
    for (int n = 0; n <= Q; ++n)
        if (diff[n].min_valuation() < 1) return false;
    return true;
}

bool fractional_iterate() {
    long p = 5;
    int N = 12, M = 4, Q = 30;
    std::mt19937_64 rng(1004);
    for (long m = 0; m <= 5; ++m) {
        Weight k = Weight::classical(p, N, M, 4);  // (k, [m]) pass admissibility
        QExp d = deplete(random_qexp(p, N, M, Q, rng));
        NearlyExp w(k, d);
        NablaSResult r = nabla_s(w, Weight::classical(p, N, M, m));
        if (!r.value.eq(nabla_n_closed(w, m))) return false;
        if (!r.converged) return false;
    }
    for (int trial = 0; trial < 20; ++trial) {
        Weight k = Weight::classical(p, N, M, 4);
        Weight s;
        s.tame = 0;
        s.u = random_strict_u(p, N, M, rng);
        QExp d = deplete(random_qexp(p, N, M, Q, rng));
        NablaSResult r = nabla_s(NearlyExp(k, d), s);
        // the p-window minimum of the term valuations decays monotonically;
        // raw values dip by v_p(j) at multiples of p
        auto wmin = [&](size_t j) {
            long long m = r.term_valuations[j];
            for (size_t i = j; i < j + (size_t)p && i < r.term_valuations.size(); ++i)
                m = std::min(m, r.term_valuations[i]);
            return m;
        };
        for (size_t j = (size_t)(p * p); j + (size_t)p < r.term_valuations.size(); ++j)
            if (wmin(j + 1) < wmin(j)) return false;
    }
    return true;
}

bool projection_exactness() {
    long p = 5;
    int N = 12, M = 3, Q = 20;
    std::mt19937_64 rng(1005);
    for (int trial = 0; trial < 100; ++trial) {
        Weight k;
        k.tame = 0;
        k.u = FamilyElement(M, PadicScalar::rational(p, N, 1, 2));
        k.u += FamilyElement::var(p, N, M) * PadicScalar(p, N, p);
        NearlyExp w = random_nearly(p, N, M, Q, (int)(rng() % 7), k, rng);
        QExp f = random_qexp(p, N, M, Q, rng);
        NearlyExp gamma = NearlyExp(weight_shift(k, 2), f) + nabla(w);
        if (!hdagger(gamma, k).eq(f)) return false;
    }
    // gamma = f + nabla(w) with deg w = n: poles exactly at u_k in {0..n}
    int n = 3;
    for (long m = 0; m <= n + 1; ++m) {
        Weight k = Weight::classical(p, N, M, m);
        NearlyExp w = random_nearly(p, N, M, Q, n, k, rng);
        QExp f = random_qexp(p, N, M, Q, rng);
        NearlyExp gamma = NearlyExp(weight_shift(k, 2), f) + nabla(w);
        bool threw = false;
        try {
            (void)hdagger(gamma, k);
        } catch (const padic_domain_error&) {
            threw = true;
        }
        if (threw != (m <= n)) return false;
    }
    return true;
}

bool connection_v_interplay() {
    long p = 5;
    int N = 10, M = 2, Q = 200;
    std::mt19937_64 rng(1006);
    Weight k;
    k.tame = 0;
    k.u = random_family(p, N, M, rng);
    NearlyExp w = random_nearly(p, N, M, 60, 2, k, rng);
    NearlyExp lhs = nabla(v_nearly(w));
    NearlyExp pv = v_nearly(nabla(w));
    std::vector<QExp> scaled;
    for (int h = 0; h <= pv.degree(); ++h) scaled.push_back(pv[h] * PadicScalar(p, N, p));
    if (!lhs.eq(NearlyExp(pv.weight(), std::move(scaled)))) return false;

    QExp e4 = eisenstein_classical(p, N, M, Q, 4);
    QExp e6 = eisenstein_classical(p, N, M, Q, 6);
    Weight k4 = Weight::classical(p, N, M, 4);
    Weight k6 = Weight::classical(p, N, M, 6);
    for (long t = 0; t <= 3; ++t) {
        NearlyExp dg = nabla_n_closed(NearlyExp(k4, deplete(e4)), t);
        if (!u_nearly(mul(dg, v_nearly(NearlyExp(k6, e6)))).is_zero()) return false;
        NearlyExp vg = v_nearly(nabla_n_closed(NearlyExp(k4, e4), t));
        if (!u_nearly(mul(vg, NearlyExp(k6, deplete(e6)))).is_zero()) return false;
    }
    return true;
}

bool slope_theory() {
    long p = 5;
    int N = 12;
    std::mt19937_64 rng(1007);
    PadicPoly hecke(p, N, {PadicScalar(p, N, p).pow(11), PadicScalar(p, N, -4830),
                           PadicScalar::one(p, N)});
    auto np = newton_polygon(hecke);
    if (np.size() != 2 || !(np[0].slope == Rational(1, 1)) ||
        !(np[1].slope == Rational(10, 1)))
        return false;
    auto [ple, pgt] = slope_factor(hecke, Rational(1, 1));
    if (!(ple * pgt).eq(hecke)) return false;

    // riesz projectors on 50 random conjugates of a mixed-slope diagonal;
    // the inverse/charpoly/Bezout chain sheds interval precision, so run with
    // headroom and verify the projector identities mod p^12
    int Nw = 32;
    PMatrix D(p, Nw, 6, 6);
    long dv[6] = {2, 3, 10, 35, 50, 125};
    for (int i = 0; i < 6; ++i) D.at(i, i) = PadicScalar(p, Nw, dv[i]);
    for (int trial = 0; trial < 50; ++trial) {
        PMatrix L = PMatrix::identity(p, Nw, 6);
        PMatrix Uu = PMatrix::identity(p, Nw, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (j < i) L.at(i, j) = PadicScalar(p, Nw, (long)(rng() % 40));
                if (j > i) Uu.at(i, j) = PadicScalar(p, Nw, (long)(rng() % 40));
            }
        PMatrix M = L * Uu * D * matrix_inverse(L * Uu);
        for (int h = 0; h <= 1; ++h) {
            PMatrix e = riesz_projector(M, Rational(h, 1));
            if (!(e * e).eq_mod(e, 12)) return false;
            if (!(e * M).eq_mod(M * e, 12)) return false;
        }
    }

    std::vector<PMatrix> blocks;
    for (int i = 0; i < 4; ++i) {
        PMatrix B = PMatrix::identity(p, N, 2);
        B.at(0, 1) = PadicScalar(p, N, (long)(rng() % 30));
        B.at(1, 0) = PadicScalar(p, N, (long)(rng() % 30));
        B.at(1, 1) = B.at(1, 1) + B.at(0, 1) * B.at(1, 0);
        blocks.push_back(B);
    }
    FilteredOperator F = synthetic_filtered_u(blocks, rng);
    if (!check_fredholm_factorization(F).pass) return false;
    F.mat.at(F.block_offset(1), F.block_offset(1)) = PadicScalar(p, N, 3);
    if (check_fredholm_factorization(F).pass) return false;
    return true;
}

bool stabilization_pairing() {
    long p = 5;
    int N = 12, M = 1, Q = 60;
    std::mt19937_64 rng(1008);
    for (long k : {4L, 8L}) {
        EigenformData f = eisenstein_eigenform(p, N, M, k);
        auto [alpha, beta] = solve_hecke_quadratic(f);
        if (!alpha.eq(PadicScalar::one(p, N))) return false;
        if (!beta.eq(PadicScalar(p, N, p).pow(k - 1))) return false;
        StabilizedPair s = stabilize(f, Q);
        QExp F = f.gen(Q);
        if (!(s.f_alpha - v_op(s.f_alpha) * s.alpha).eq(deplete(F))) return false;
        PadicScalar c = petersson_pair(f, PadicScalar::zero(p, N), PadicScalar::one(p, N));
        PadicScalar expect =
            f.chi_p * f.chi_p * f.a_p /
            (PadicScalar(p, N, p).pow(k - 1) * PadicScalar(p, N, p + 1));
        if (!c.eq(expect)) return false;
        PadicScalar x = random_scalar(p, N, rng), y = random_scalar(p, N, rng);
        if (!petersson_pair(f, x, y).eq(x + y * c)) return false;
    }
    return true;
}

bool euler_bracket() {
    if (!symbolic_bracket_check().match) return false;
    long p = 5;
    int N = 14, M = 1;
    EigenformData fstar = eisenstein_eigenform(p, N, M, 8);
    EigenformData g = eisenstein_eigenform(p, N, M, 4);
    EulerFactors<PadicScalar> e = euler_factors_numeric(fstar, g, g, 0);
    PadicScalar routeA = interpolation_bracket(e);
    auto [as, bs] = solve_hecke_quadratic(fstar);
    PadicScalar la = as / (as - bs), lb = -bs / (as - bs);
    auto eig = [&](const PadicScalar& t) { return e.E(t) / e.E1(t); };
    PadicScalar x = la * eig(as) + lb * eig(bs);
    PadicScalar y = la * eig(as) * (-bs) + lb * eig(bs) * (-as);
    PadicScalar routeB = petersson_pair(fstar, x, y);
    PadicScalar d = routeA - routeB;
    return d.is_zero() || d.valuation() - routeB.valuation() >= N - 2;
}

bool eisenstein_interpolation() {
    long p = 5;
    int N = 12, M = 4, Q = 200;
    for (long k : {4L, 6L}) {
        Weight kw = Weight::classical(p, N, M, k);
        QExp base = eisenstein_family(kw, Q);
        for (long r = 0; r <= 3; ++r) {
            QExp lhs = theta_eisenstein(Weight::classical(p, N, M, r), kw, Q);
            QExp rhs = partial_s(deplete(base), Weight::classical(p, N, M, r), 0);
            if (!lhs.eq(rhs)) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)();
    };
    const Criterion table[] = {
        {"operator algebra (U, V, depletion)", operator_algebra},
        {"connection closed form and recurrence", connection_closed_form},
        {"order-p coefficient divisibility", order_p_divisibility},
        {"fractional iterate specialization and tail decay", fractional_iterate},
        {"overconvergent projection exactness and poles", projection_exactness},
        {"connection / V / U interplay", connection_v_interplay},
        {"newton polygon, slope factorization, projectors", slope_theory},
        {"stabilization and trace pairing", stabilization_pairing},
        {"euler bracket, symbolic and numeric", euler_bracket},
        {"eisenstein family interpolation", eisenstein_interpolation},
    };
    int failures = 0;
    int idx = 0;
    for (const auto& c : table) {
        ++idx;
        bool ok = false;
        std::string note;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        if (!ok) ++failures;
        std::printf("criterion %d (%s): %s%s\n", idx, c.name, ok ? "PASS" : "FAIL",
                    note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
