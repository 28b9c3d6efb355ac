#pragma once

#include <random>

#include "ovmf/matrix.hpp"
#include "ovmf/nearly.hpp"

namespace ovmf::testing {

inline PadicScalar random_unit(long p, int N, std::mt19937_64& rng) {
    PadicScalar x = random_scalar(p, N, rng);
    while (x.is_zero() || x.valuation() > 0) {
        x = x + PadicScalar(p, N, (long)(rng() % (p - 1 < 1 ? 1 : p - 1)) + 1);
    }
    return x;
}

inline FamilyElement random_family(long p, int N, int M, std::mt19937_64& rng) {
    FamilyElement r(p, N, M);
    for (int i = 0; i < M; ++i) r[i] = random_scalar(p, N, rng);
    return r;
}

inline QExp random_qexp(long p, int N, int M, int Q, std::mt19937_64& rng) {
    QExp f(p, N, M, Q);
    for (int n = 0; n <= Q; ++n) f[n] = FamilyElement(M, random_scalar(p, N, rng));
    return f;
}

/// Strict analytic weight parameter: p * (unit + random T-part).
inline FamilyElement random_strict_u(long p, int N, int M, std::mt19937_64& rng) {
    FamilyElement u = random_family(p, N, M, rng);
    return u * PadicScalar(p, N, p);
}

/// A weight whose u is a unit plus a T-multiple, guaranteed non-integer
/// constant term modulo high powers (for projection-pole avoidance use
/// a constant with valuation 0 away from small integers).
inline Weight unit_weight(long p, int N, int M, long c, std::mt19937_64& rng) {
    Weight k;
    k.tame = 0;
    k.u = FamilyElement(p, N, M, c);
    k.u += FamilyElement::var(p, N, M) * PadicScalar(p, N, p);
    (void)rng;
    return k;
}

}  // namespace ovmf::testing
