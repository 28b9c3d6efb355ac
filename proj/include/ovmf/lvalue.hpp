#pragma once

#include <array>
#include <functional>

#include "ovmf/matrix.hpp"
#include "ovmf/nearly.hpp"
#include "ovmf/symbolic.hpp"

namespace ovmf {

/// Hecke data of an eigenform at p, plus a q-expansion producer.
struct EigenformData {
    std::string label;
    long k = 2;                // integer weight >= 2
    PadicScalar a_p;           // T_p eigenvalue
    PadicScalar chi_p;         // nebentypus value at p
    std::function<QExp(int)> gen;  // q-expansion up to given precision
    bool prime_to_p = true;

    /// chi(p) p^{k-1}, the constant term of the Hecke quadratic.
    PadicScalar hecke_constant() const;
};

/// Roots of X^2 - a_p X + chi(p)p^{k-1}, ordered by valuation then residue.
/// Throws "roots require quadratic extension" when the quadratic is
/// irreducible, "regularity assumption violated" when alpha = beta.
std::pair<PadicScalar, PadicScalar> solve_hecke_quadratic(const EigenformData& f);

struct StabilizedPair {
    PadicScalar alpha, beta;
    QExp f_alpha;  // f - beta V(f)
    QExp f_beta;   // f - alpha V(f)
};

StabilizedPair stabilize(const EigenformData& f, int Q);

/// U on the span (f, Vf): U(f) = a_p f - chi(p)p^{k-1} Vf, U(Vf) = f.
PMatrix u_matrix_on_span(const EigenformData& f, int N);

/// Trace-form pairing against f* normalized by <f*,f*> = 1: an element
/// x f* + y Vf* pairs to x + y chi(p)^2 a_p / (p^{k-1}(p+1)), with (a_p, chi)
/// the Hecke data of f*.
PadicScalar petersson_pair(const EigenformData& fstar, const PadicScalar& x,
                           const PadicScalar& y);
FamilyElement petersson_pair(const EigenformData& fstar, const FamilyElement& x,
                             const FamilyElement& y);

/// Exact coordinates of F in the span of the basis, solved on leading
/// coefficients; every remaining coefficient of the residual must vanish.
std::vector<FamilyElement> eigen_coordinates(const QExp& F, const std::vector<QExp>& basis);

/// The four interpolation factors of the triple-product bracket, over any
/// commutative ring with division (p-adic numbers or rational functions).
/// pt plays p^{t'}; c plays chi_x^{-2}(p) a_x* / (p^{x-1}(p+1)).
template <typename R>
struct EulerFactors {
    R one;
    R ay, by, az, bz;  // Hecke roots of g and h
    R pt;              // p^{t'}
    R as, bs;          // roots alpha_x*, beta_x* of f*
    R c;               // E2 slope: chi_x^{-2}(p) a_x* / (p^{x-1}(p+1))

    R E(const R& T) const {
        std::array<R, 4> rho{ay * az, ay * bz, by * az, by * bz};
        R acc = one;
        for (const R& r : rho) acc = acc * (one - pt * r / T);
        return acc;
    }
    R E1(const R& T) const { return one - pt * pt * ay * by * az * bz / (T * T); }
    R E0(const R& S, const R& T) const { return one - T / S; }
    R E2(const R& T) const { return one - c * T; }
};

/// The bracket E(a*)E2(b*)/(E0(a*,b*)E1(a*)) + E(b*)E2(a*)/(E0(b*,a*)E1(b*)).
template <typename R>
R interpolation_bracket(const EulerFactors<R>& e) {
    return e.E(e.as) * e.E2(e.bs) / (e.E0(e.as, e.bs) * e.E1(e.as)) +
           e.E(e.bs) * e.E2(e.as) / (e.E0(e.bs, e.as) * e.E1(e.bs));
}

/// Independent symbolic route to the bracket: apply E(U)E1(U)^{-1} to the
/// 2x2 U-action on span{gamma, V gamma} and pair via the trace form.  Both
/// sides live in the fraction field of Z[ay,by,az,bz,as,bs,c].
struct SymbolicBracketCheck {
    Frac bracket;       // direct Euler-factor formula
    Frac matrix_route;  // 2x2 linear-algebra computation
    bool match = false;
};

SymbolicBracketCheck symbolic_bracket_check();

/// Numeric Euler data assembled from Hecke data: f* supplies (as, bs, c),
/// g and h supply the root quadruple.
EulerFactors<PadicScalar> euler_factors_numeric(const EigenformData& fstar,
                                                const EigenformData& g,
                                                const EigenformData& h, long tprime);

struct TripleBracketResult {
    PadicScalar value;
    std::vector<std::string> stage_log;
};

/// The classical-point triple product value:
/// pair(f*, hdagger(nabla^{t'}(deplete(g)) x h)) over <f*,f*> = 1,
/// computed against the span {f*, V f*}.
TripleBracketResult triple_bracket(const EigenformData& fstar, const EigenformData& g,
                                   const EigenformData& h, long tprime, long p, int N,
                                   int M, int Q);

/// Classical Eisenstein series a_0 = -B_k/2k, a_n = sigma_{k-1}(n); the
/// constant term is hardcoded for even k in [4, 14].
QExp eisenstein_classical(long p, int N, int M, int Q, long k);

/// EigenformData for the classical Eisenstein series (a_p = 1 + p^{k-1},
/// trivial nebentypus).
EigenformData eisenstein_eigenform(long p, int N, int M, long k);

}  // namespace ovmf
