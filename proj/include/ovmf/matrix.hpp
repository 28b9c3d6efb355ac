#pragma once

#include <cstdint>
#include <random>

#include "ovmf/poly.hpp"

namespace ovmf {

/// Dense square-or-rectangular matrix over PadicScalar.
class PMatrix {
public:
    PMatrix() = default;
    PMatrix(long p, int N, int rows, int cols);

    static PMatrix identity(long p, int N, int n);

    long prime() const { return p_; }
    int rel_prec() const { return N_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const PadicScalar& at(int i, int j) const { return a_[i * cols_ + j]; }
    PadicScalar& at(int i, int j) { return a_[i * cols_ + j]; }

    PMatrix operator+(const PMatrix& o) const;
    PMatrix operator-(const PMatrix& o) const;
    PMatrix operator*(const PMatrix& o) const;
    PMatrix operator*(const PadicScalar& s) const;

    bool eq(const PMatrix& o) const;
    /// Minimum valuation over entries (kExact for the zero matrix).
    long long min_valuation() const;
    /// Entries all congruent modulo p^A.
    bool eq_mod(const PMatrix& o, long long A) const;

    std::string str() const;

private:
    long p_ = 0;
    int N_ = 0, rows_ = 0, cols_ = 0;
    std::vector<PadicScalar> a_;
};

/// Characteristic polynomial det(X Id - M), monic, by the division-free
/// Berkowitz algorithm (no pivoting, so no precision loss from small pivots).
PadicPoly charpoly(const PMatrix& M);

/// Evaluate a polynomial at a square matrix.
PMatrix poly_at_matrix(const PadicPoly& P, const PMatrix& M);

/// Riesz projector onto the slope <= h generalized eigenspace:
/// with charpoly = P_le P_gt and s P_le + t P_gt = 1, e = t(M) P_gt(M).
PMatrix riesz_projector(const PMatrix& M, const Rational& h);

/// lim M^{r!}, iterated until stationary modulo p^N.
PMatrix ordinary_projector(const PMatrix& M);

/// Rank over the p-adic field by valuation-pivoted elimination.
int matrix_rank(const PMatrix& M);

/// Inverse over the p-adic field (valuation-pivoted Gauss-Jordan).
PMatrix matrix_inverse(const PMatrix& M);

/// Block-filtered model of the U operator: graded piece i acts by p^i B_i,
/// lower blocks feed into higher ones with a p-divisibility constraint.
struct FilteredOperator {
    PMatrix mat;
    std::vector<int> block_sizes;
    std::string weight_label;

    int block_offset(int i) const;
    int dim() const;
};

/// Assemble a filtered operator with diagonal blocks p^i B_i and random
/// strictly block-lower-triangular fill; the fill feeding graded degree m is
/// scaled by p^{max(0, floor(m/p)-1)}.
FilteredOperator synthetic_filtered_u(const std::vector<PMatrix>& blocks, std::mt19937_64& rng);

struct FredholmReport {
    bool pass = false;
    bool charpoly_match = false;   // char(F) = prod_i char(p^i B_i)
    bool graded_scaling_ok = false;  // diagonal block i divisible by p^i
    bool filtration_ok = false;    // fill into degree m divisible by p^{max(0,[m/p]-1)}
    long long worst_fill_valuation = 0;
    std::string detail;
};

/// Verify the factorization contract of the characteristic polynomial of a
/// filtered operator against the product over its graded pieces.
FredholmReport check_fredholm_factorization(const FilteredOperator& F);

/// Uniformly random integral scalar (unit or divisible, as drawn) mod p^N.
PadicScalar random_scalar(long p, int N, std::mt19937_64& rng);

}  // namespace ovmf
