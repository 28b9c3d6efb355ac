#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ovmf {

/// Multivariate polynomial over the integers in a fixed number of variables;
/// exponent vectors are the map keys.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(int nvars) : n_(nvars) {}
    MPoly(int nvars, const mpz_class& c);
    /// The i-th variable.
    static MPoly var(int nvars, int i);

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const mpz_class& c) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }

    bool operator==(const MPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    /// Substitute values for the variables in any commutative ring.
    template <typename Ring>
    Ring eval(const std::vector<Ring>& vals, const Ring& one) const {
        Ring acc = one - one;  // zero
        for (const auto& [e, c] : terms_) {
            Ring t = one * c;
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < e[i]; ++k) t = t * vals[i];
            acc = acc + t;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names) const;

private:
    void prune();
    int n_ = 0;
    std::map<std::vector<int>, mpz_class> terms_;
};

/// Fraction of two integer polynomials; equality by cross-multiplication.
/// No gcd reduction -- everything we compute stays degree-bounded.
class Frac {
public:
    Frac() = default;
    explicit Frac(const MPoly& num) : num_(num), den_(MPoly(num.nvars(), 1)) {}
    Frac(const MPoly& num, const MPoly& den);

    static Frac one(int nvars) { return Frac(MPoly(nvars, 1)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Frac operator+(const Frac& o) const;
    Frac operator-(const Frac& o) const;
    Frac operator-() const;
    Frac operator*(const Frac& o) const;
    Frac operator*(const mpz_class& c) const { return Frac(num_ * c, den_); }
    Frac operator/(const Frac& o) const;
    Frac inv() const;

    /// num * o.den == o.num * den as polynomials.
    bool operator==(const Frac& o) const { return num_ * o.den_ == o.num_ * den_; }

private:
    MPoly num_, den_;
};

}  // namespace ovmf
