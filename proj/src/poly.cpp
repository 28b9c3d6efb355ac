#include "ovmf/poly.hpp"

#include <numeric>
#include <sstream>

namespace ovmf {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw padic_domain_error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

PadicPoly::PadicPoly(long p, int N, std::vector<PadicScalar> c) : p_(p), N_(N), c_(std::move(c)) {
    if (c_.empty()) c_.push_back(PadicScalar::zero(p, N));
}

PadicPoly PadicPoly::constant(const PadicScalar& a) {
    return PadicPoly(a.prime(), a.rel_prec(), {a});
}

PadicPoly PadicPoly::linear(const PadicScalar& a) {
    return PadicPoly(a.prime(), a.rel_prec(), {-a, PadicScalar::one(a.prime(), a.rel_prec())});
}

bool PadicPoly::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool PadicPoly::is_monic() const {
    return leading().is_unit() && leading().unit() == 1 && leading().valuation() == 0;
}

PadicPoly PadicPoly::trimmed() const {
    int d = degree();
    while (d > 0 && c_[d].is_zero()) --d;
    return PadicPoly(p_, N_, std::vector<PadicScalar>(c_.begin(), c_.begin() + d + 1));
}

PadicPoly PadicPoly::operator+(const PadicPoly& o) const {
    std::vector<PadicScalar> c(std::max(c_.size(), o.c_.size()), PadicScalar::zero(p_, N_));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] += c_[i];
        if (i < o.c_.size()) c[i] += o.c_[i];
    }
    return PadicPoly(p_, N_, std::move(c));
}

PadicPoly PadicPoly::operator-() const {
    std::vector<PadicScalar> c = c_;
    for (auto& x : c) x = -x;
    return PadicPoly(p_, N_, std::move(c));
}

PadicPoly PadicPoly::operator-(const PadicPoly& o) const { return *this + (-o); }

PadicPoly PadicPoly::operator*(const PadicPoly& o) const {
    std::vector<PadicScalar> c(c_.size() + o.c_.size() - 1, PadicScalar::zero(p_, N_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return PadicPoly(p_, N_, std::move(c));
}

PadicPoly PadicPoly::operator*(const PadicScalar& s) const {
    std::vector<PadicScalar> c = c_;
    for (auto& x : c) x = x * s;
    return PadicPoly(p_, N_, std::move(c));
}

PadicScalar PadicPoly::eval(const PadicScalar& x) const {
    PadicScalar acc = PadicScalar::zero(p_, N_);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

bool PadicPoly::eq(const PadicPoly& o) const {
    int d = std::max(degree(), o.degree());
    for (int i = 0; i <= d; ++i) {
        PadicScalar a = i <= degree() ? c_[i] : PadicScalar::zero(p_, N_);
        PadicScalar b = i <= o.degree() ? o.c_[i] : PadicScalar::zero(p_, N_);
        if (!a.eq(b)) return false;
    }
    return true;
}

long long PadicPoly::min_valuation() const {
    long long v = PadicScalar::kExact;
    for (const auto& c : c_) v = std::min(v, c.valuation());
    return v;
}

std::string PadicPoly::str() const {
    std::ostringstream os;
    for (int i = degree(); i >= 0; --i) {
        os << "(" << c_[i].str() << ")";
        if (i > 0) os << "*X^" << i << " + ";
    }
    return os.str();
}

std::pair<PadicPoly, PadicPoly> poly_divmod(const PadicPoly& a, const PadicPoly& b) {
    PadicPoly bt = b.trimmed();
    if (bt.is_zero()) throw padic_domain_error("division by zero polynomial");
    long p = a.prime();
    int N = a.rel_prec();
    PadicScalar li = bt.leading().inv();
    std::vector<PadicScalar> rem(a.degree() + 1, PadicScalar::zero(p, N));
    for (int i = 0; i <= a.degree(); ++i) rem[i] = a[i];
    int db = bt.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {PadicPoly(p, N), a};
    std::vector<PadicScalar> quot(dq + 1, PadicScalar::zero(p, N));
    for (int i = dq; i >= 0; --i) {
        PadicScalar q = rem[i + db] * li;
        quot[i] = q;
        if (q.is_exact_zero()) continue;
        for (int j = 0; j <= db; ++j) rem[i + j] -= q * bt[j];
    }
    rem.resize(db > 0 ? db : 1, PadicScalar::zero(p, N));
    return {PadicPoly(p, N, std::move(quot)), PadicPoly(p, N, std::move(rem))};
}

std::pair<PadicPoly, PadicPoly> poly_bezout(const PadicPoly& a, const PadicPoly& b) {
    long p = a.prime();
    int N = a.rel_prec();
    PadicPoly r0 = a.trimmed(), r1 = b.trimmed();
    PadicPoly s0 = PadicPoly::constant(PadicScalar::one(p, N)), s1 = PadicPoly(p, N);
    PadicPoly t0 = PadicPoly(p, N), t1 = PadicPoly::constant(PadicScalar::one(p, N));
    while (!r1.is_zero() && r1.degree() > 0) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = r1;
        r1 = r.trimmed();
        PadicPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    PadicPoly g = r1.is_zero() ? r0 : r1;
    PadicPoly s = r1.is_zero() ? s0 : s1;
    PadicPoly t = r1.is_zero() ? t0 : t1;
    if (g.degree() != 0 || g[0].is_zero())
        throw precision_error("insufficient precision to separate factors");
    PadicScalar gi = g[0].inv();
    return {s * gi, t * gi};
}

std::vector<NewtonSlope> newton_polygon(const PadicPoly& P) {
    PadicPoly Q = P.trimmed();
    if (Q.is_zero()) throw padic_domain_error("Newton polygon of the zero polynomial");
    struct Pt { long long x, y; };
    std::vector<Pt> pts;
    for (int i = 0; i <= Q.degree(); ++i) {
        if (Q[i].is_zero()) continue;
        pts.push_back({(long long)i, Q[i].valuation()});
    }
    // lower convex hull, left to right
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& o = hull[hull.size() - 2];
            const Pt& m = hull[hull.size() - 1];
            long long cross = (m.x - o.x) * (pt.y - o.y) - (m.y - o.y) * (pt.x - o.x);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<NewtonSlope> out;
    for (size_t i = 1; i < hull.size(); ++i) {
        NewtonSlope s;
        s.slope = Rational(hull[i - 1].y - hull[i].y, hull[i].x - hull[i - 1].x);
        s.length = (int)(hull[i].x - hull[i - 1].x);
        out.push_back(s);
    }
    // hull slopes increase left to right, so root valuations decrease; reverse
    std::reverse(out.begin(), out.end());
    return out;
}

std::pair<PadicPoly, PadicPoly> slope_factor(const PadicPoly& P, const Rational& h) {
    long p = P.prime();
    int N = P.rel_prec();
    PadicPoly Q = P.trimmed();
    PadicPoly one = PadicPoly::constant(PadicScalar::one(p, N));
    int n = Q.degree();
    if (n == 0) return {one, Q};
    auto slopes = newton_polygon(Q);
    int d = 0;
    for (const auto& s : slopes)
        if (s.slope <= h) d += s.length;
    if (d == 0) return {one, Q};
    PadicScalar lead = Q.leading();
    PadicPoly Pm = Q * lead.inv();
    if (d == n) return {Pm, PadicPoly::constant(lead)};

    // rescale X -> p^c X with c just above h: the slope <= h roots move to
    // negative valuation and the rest stay above -1, so the two clusters are
    // separated near valuation 0 and the Hensel contraction has room
    long long c = (h.num >= 0 ? h.num / h.den : -((-h.num + h.den - 1) / h.den)) + 1;
    PadicScalar pc = PadicScalar(p, N, p).pow(c);
    for (int i = 0; i <= n; ++i) Pm[i] = Pm[i] * pc.pow(i - n);

    // initial split from the Newton polygon: roots of valuation <= h live in
    // the top d+1 coefficients, the rest in the bottom ones
    std::vector<PadicScalar> ac(d + 1, PadicScalar::zero(p, N));
    for (int j = 0; j <= d; ++j) ac[j] = Pm[n - d + j];
    PadicPoly A(p, N, std::move(ac));
    int e = n - d;
    PadicScalar split = Pm[e];
    if (split.is_zero()) throw precision_error("insufficient precision to separate factors");
    PadicScalar si = split.inv();
    std::vector<PadicScalar> bc(e + 1, PadicScalar::zero(p, N));
    for (int j = 0; j < e; ++j) bc[j] = Pm[j] * si;
    bc[e] = PadicScalar::one(p, N);
    PadicPoly B(p, N, std::move(bc));

    // quadratic Hensel with the Bezout pair lifted alongside: the Euclidean
    // algorithm runs once on the clean initial split, later iterations only
    // divide by the monic A and B
    auto unscale = [&](const PadicPoly& As, const PadicPoly& Bs) {
        PadicPoly Au = As, Bu = Bs;
        for (int i = 0; i <= d; ++i) Au[i] = Au[i] * pc.pow(d - i);
        for (int i = 0; i <= e; ++i) Bu[i] = Bu[i] * pc.pow(e - i);
        return std::make_pair(Au, Bu * lead);
    };
    auto [S, T] = poly_bezout(A, B);
    for (int iter = 0; iter < 64; ++iter) {
        PadicPoly R = (Pm - A * B).trimmed();
        if (R.is_zero()) return unscale(A, B);
        PadicPoly dA = poly_divmod(T * R, A).second.trimmed();
        PadicPoly dB = poly_divmod(S * R, B).second.trimmed();
        // a vanishing update means the residual sits below the precision the
        // input coefficients can support: the split is as good as it gets
        if (dA.is_zero() && dB.is_zero()) return unscale(A, B);
        A = (A + dA).trimmed();
        B = (B + dB).trimmed();
        if (A.degree() != d || B.degree() != e)
            throw precision_error("insufficient precision to separate factors");
        PadicPoly E = (S * A + T * B - one).trimmed();
        if (!E.is_zero()) {
            S = (S - poly_divmod(S * E, B).second).trimmed();
            T = (T - poly_divmod(T * E, A).second).trimmed();
        }
    }
    throw precision_error("insufficient precision to separate factors");
}

}  // namespace ovmf
