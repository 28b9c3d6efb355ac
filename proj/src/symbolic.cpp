#include "ovmf/symbolic.hpp"

#include <sstream>
#include <stdexcept>

namespace ovmf {

MPoly::MPoly(int nvars, const mpz_class& c) : n_(nvars) {
    if (c != 0) terms_[std::vector<int>(nvars, 0)] = c;
}

MPoly MPoly::var(int nvars, int i) {
    MPoly r(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    r.terms_[e] = 1;
    return r;
}

void MPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.terms_[e] += c;
    r.prune();
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e(n_);
            for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            r.terms_[e] += c1 * c2;
        }
    r.prune();
    return r;
}

MPoly MPoly::operator*(const mpz_class& c) const {
    MPoly r = *this;
    for (auto& [e, cc] : r.terms_) cc *= c;
    r.prune();
    return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            os << "*" << names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Frac::Frac(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
}

Frac Frac::operator+(const Frac& o) const {
    return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Frac Frac::operator-() const { return Frac(-num_, den_); }

Frac Frac::operator-(const Frac& o) const { return *this + (-o); }

Frac Frac::operator*(const Frac& o) const { return Frac(num_ * o.num_, den_ * o.den_); }

Frac Frac::inv() const {
    if (num_.is_zero()) throw std::domain_error("inverse of zero");
    return Frac(den_, num_);
}

Frac Frac::operator/(const Frac& o) const { return *this * o.inv(); }

}  // namespace ovmf
