#pragma once

#include "ovmf/qexp.hpp"

namespace ovmf {

/// Nearly-overconvergent q-expansion in the coordinates V_{k,h}:
/// sum_h comps[h](q) * V_{k,h}, with V_{k,h} = Y^h (1+pZ)^{k-h}.
/// The degree-0 component is the classical q-expansion.
class NearlyExp {
public:
    NearlyExp() = default;
    NearlyExp(const Weight& k, std::vector<QExp> comps) : k_(k), comps_(std::move(comps)) {}
    /// Degree-0 element from a plain q-expansion.
    NearlyExp(const Weight& k, const QExp& g) : k_(k), comps_{g} {}

    const Weight& weight() const { return k_; }
    int degree() const { return (int)comps_.size() - 1; }
    const QExp& operator[](int h) const { return comps_[h]; }
    QExp& operator[](int h) { return comps_[h]; }
    const std::vector<QExp>& comps() const { return comps_; }

    bool is_zero() const;
    bool is_depleted() const;
    int qprec() const { return comps_.at(0).qprec(); }

    NearlyExp operator+(const NearlyExp& o) const;  // same weight
    NearlyExp operator-(const NearlyExp& o) const;
    NearlyExp operator-() const;

    /// Compare component-wise (padding the shorter one with zeros).
    bool eq(const NearlyExp& o) const;
    bool operator==(const NearlyExp& o) const { return eq(o); }

    /// Truncate all components to q-precision Q.
    NearlyExp truncated(int Q) const;

private:
    Weight k_;
    std::vector<QExp> comps_;
};

/// Graded product: V_{k,n} V_{k',n'} = V_{k+k',n+n'}.
NearlyExp mul(const NearlyExp& w, const NearlyExp& wp);

/// Gauss-Manin connection: component-wise
/// nabla(a V_{k,h}) = partial(a) V_{k+2,h} + a (u_k - h) V_{k+2,h+1}.
NearlyExp nabla(const NearlyExp& w);

/// The coefficient a_{N,k,h,j} = C(N,j) prod_{i=0}^{j-1} (u_k - h + N - 1 - i).
FamilyElement nabla_coefficient(const FamilyElement& uk, long N, long h, long j);
/// Same coefficient through the recurrence
/// a_{n+1,k,h,j} = a_{n,k,h,j} + (u_k + 2n - h - j + 1) a_{n,k,h,j-1}.
FamilyElement nabla_coefficient_recursive(const FamilyElement& uk, long N, long h, long j);

/// nabla^N via the closed form.
NearlyExp nabla_n_closed(const NearlyExp& w, long N);

/// Result of the fractional iterate, with the precision actually achieved by
/// the truncated tail (minimal valuation of the last tail term).
struct NablaSResult {
    NearlyExp value;
    long long tail_valuation = 0;  // kExact when the tail vanished identically
    bool converged = false;        // tail term vanished at working precision
    /// Minimum valuation of the order-j term, for each 0 <= j <= J.
    std::vector<long long> term_valuations;
};

/// Fractional iterate nabla^s on depleted inputs; tail truncated at order J
/// (J < 0 uses 2p^2+8).  Throws unless (k, s) pass the weight admissibility
/// check; with require_convergence, throws when the tail has not decayed
/// below working precision at order J.
NablaSResult nabla_s(const NearlyExp& w, const Weight& s, long J = -1,
                     bool require_convergence = false);

/// nabla^{a+chi'} = theta^{chi'} after nabla^a; weight k + 2a + 2chi'.
NearlyExp nabla_a_chi(const NearlyExp& f, long a, const TameChar& chip);

/// V on nearly-overconvergent expansions: scales component h by p^{-h}.
NearlyExp v_nearly(const NearlyExp& w);
/// U on nearly-overconvergent expansions: scales component h by p^{+h}.
NearlyExp u_nearly(const NearlyExp& w);

/// Overconvergent projection on q-expansions: for gamma of weight k+2,
/// H"+(gamma) = sum_i (-1)^i partial^i(gamma_i) / (u_k (u_k-1) ... (u_k-i+1)).
/// The weight parameter u_k is read from k.
QExp hdagger(const NearlyExp& gamma, const Weight& k);

/// Unit-root splitting: the degree-0 component.
QExp fil0_project(const NearlyExp& w);

}  // namespace ovmf
