#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace ovmf;

TEST_CASE("U and V basics") {
    long p = 5;
    int N = 10, M = 3, Q = 100;
    std::mt19937_64 rng(11);
    QExp f = testing::random_qexp(p, N, M, Q, rng);
    CHECK(u_op(v_op(f)).eq(f));
    // V places a_n at q^{pn}
    QExp vf = v_op(f);
    CHECK(vf[10].eq(f[2]));
    CHECK(vf[3].is_zero());
    // U reads off a_{np} and shrinks the q-precision
    QExp uf = u_op(f);
    CHECK(uf.qprec() == Q / (int)p);
    CHECK(uf[4].eq(f[20]));
}

TEST_CASE("depletion lies in the kernel of U and is idempotent") {
    for (long p : {2L, 3L, 5L}) {
        int N = 8, M = 2, Q = 60;
        std::mt19937_64 rng(13 + p);
        QExp f = testing::random_qexp(p, N, M, Q, rng);
        QExp d = deplete(f);
        CHECK(d.is_depleted());
        CHECK(u_op(d).is_zero());
        CHECK(deplete(d).eq(d));
        CHECK(d.eq(f - v_op(u_op(f))));
    }
}

TEST_CASE("partial multiplies by n") {
    long p = 5;
    int N = 10, M = 2, Q = 30;
    std::mt19937_64 rng(17);
    QExp f = testing::random_qexp(p, N, M, Q, rng);
    QExp df = partial(f);
    for (int n = 0; n <= Q; ++n)
        CHECK(df[n].eq(f[n] * PadicScalar(p, N, (long)n)));
}

TEST_CASE("partial_s needs a depleted input and matches integer powers") {
    long p = 5;
    int N = 10, M = 2, Q = 40;
    std::mt19937_64 rng(19);
    QExp f = testing::random_qexp(p, N, M, Q, rng);
    CHECK_THROWS_AS(partial_s(f, Weight::classical(p, N, M, 2), 0), padic_domain_error);
    QExp d = deplete(f);
    // s = [m], j: multiplies a_n by n^{m-j}
    for (long m : {2L, 5L}) {
        for (long j : {0L, 1L, 3L}) {
            QExp got = partial_s(d, Weight::classical(p, N, M, m), j);
            for (int n = 1; n <= Q; ++n) {
                if (n % p == 0) continue;
                PadicScalar nm = PadicScalar(p, N, (long)n).pow(m - j);
                CHECK(got[n].eq(d[n] * nm));
            }
        }
    }
}

TEST_CASE("tame twist") {
    long p = 5;
    int N = 10, M = 2, Q = 30;
    std::mt19937_64 rng(23);
    QExp f = testing::random_qexp(p, N, M, Q, rng);
    TameChar chi{p, N, 3};
    QExp tw = twist_chi(f, chi);
    CHECK(tw[5].is_zero());
    CHECK(tw[2].eq(f[2] * chi.value(2)));
    // twisting p-1 times by omega is the identity on the depleted part
    QExp id = f;
    for (int i = 0; i < (int)p - 1; ++i) id = twist_chi(id, TameChar{p, N, 1});
    CHECK(id.eq(deplete(f)));
}

TEST_CASE("Eisenstein family matches prime-to-p divisor sums") {
    long p = 5;
    int N = 12, M = 4, Q = 60;
    Weight k4 = Weight::classical(p, N, M, 4);
    QExp E = eisenstein_family(k4, Q);
    CHECK(E[0].is_zero());
    for (int n : {1, 2, 6, 10, 12, 25}) {
        // sum over divisors prime to p of d^{k-1}/d = d^3 at kappa' = [4]
        mpz_class s = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0 && d % p != 0) s += mpz_class(d) * d * d;
        CHECK(E[n].eq(FamilyElement(p, N, M, s)));
    }
    // ordinary family: U-eigenvalue 1, not depleted
    CHECK(!E.is_depleted());
    CHECK(u_op(E).eq(E.truncated(Q / (int)p)));
}

TEST_CASE("two-variable Eisenstein family at integer points is iterated theta") {
    long p = 5;
    int N = 12, M = 4, Q = 80;
    for (long k : {4L, 6L}) {
        Weight kw = Weight::classical(p, N, M, k);
        QExp base = eisenstein_family(kw, Q);
        for (long r : {0L, 1L, 2L, 3L}) {
            QExp lhs = theta_eisenstein(Weight::classical(p, N, M, r), kw, Q);
            QExp rhs = deplete(base);
            for (long i = 0; i < r; ++i) rhs = partial(rhs);
            CHECK(lhs.eq(rhs));
        }
    }
}

TEST_CASE("discriminant form coefficients") {
    auto tau = delta_coefficients(12);
    CHECK(tau[1] == 1);
    CHECK(tau[2] == -24);
    CHECK(tau[3] == 252);
    CHECK(tau[4] == -1472);
    CHECK(tau[5] == 4830);
    CHECK(tau[6] == -6048);
    CHECK(tau[7] == -16744);
    CHECK(tau[11] == 534612);
    CHECK(tau[12] == -370944);
    // multiplicativity tau(6) = tau(2) tau(3)
    CHECK(tau[6] == tau[2] * tau[3]);
}

TEST_CASE("level raise relocates coefficients") {
    long p = 5;
    int N = 10, M = 2, Q = 30;
    std::mt19937_64 rng(29);
    QExp f = testing::random_qexp(p, N, M, Q, rng);
    QExp g = level_raise(f, 3);
    CHECK(g[9].eq(f[3]));
    CHECK(g[10].is_zero());
    CHECK(level_raise(f, 1).eq(f));
    CHECK_THROWS_AS(level_raise(f, 0), padic_domain_error);
}
