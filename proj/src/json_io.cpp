#include "ovmf/json_io.hpp"

namespace ovmf {

json to_json(const PadicScalar& x) {
    json j;
    j["N"] = x.rel_prec();
    if (x.is_zero()) {
        j["u"] = "0";
        if (x.is_exact_zero()) j["v"] = "inf";
        else j["v"] = x.abs_prec();
    } else {
        j["v"] = x.valuation();
        j["u"] = x.unit().get_str();
    }
    return j;
}

PadicScalar scalar_from_json(const json& j, long p) {
    int N = j.at("N").get<int>();
    std::string u = j.at("u").get<std::string>();
    if (u == "0") {
        if (j.at("v").is_string()) return PadicScalar::zero(p, N);
        return PadicScalar::o_of(p, N, j.at("v").get<long long>());
    }
    long long v = j.at("v").get<long long>();
    return PadicScalar::from_unit(p, N, v, mpz_class(u));
}

json to_json(const FamilyElement& x) {
    json j = json::array();
    for (int i = 0; i < x.trunc(); ++i) j.push_back(to_json(x[i]));
    return j;
}

FamilyElement family_from_json(const json& j, long p) {
    std::vector<PadicScalar> c;
    for (const auto& e : j) c.push_back(scalar_from_json(e, p));
    if (c.empty()) throw padic_domain_error("empty family element");
    FamilyElement r(p, c[0].rel_prec(), (int)c.size());
    for (size_t i = 0; i < c.size(); ++i) r[(int)i] = c[i];
    return r;
}

json to_json(const Weight& k, int M) {
    json j;
    j["tame"] = k.tame;
    j["p"] = k.prime();
    j["N"] = k.u.rel_prec();
    j["M"] = M;
    j["u"] = json::array();
    for (int i = 0; i < M; ++i) j["u"].push_back(to_json(k.u[i]));
    return j;
}

Weight weight_from_json(const json& j) {
    long p = j.at("p").get<long>();
    Weight k;
    k.tame = j.at("tame").get<int>();
    k.u = family_from_json(j.at("u"), p);
    return k;
}

json to_json(const QExp& f) {
    json j;
    j["Q"] = f.qprec();
    j["coeffs"] = json::array();
    for (int n = 0; n <= f.qprec(); ++n) j["coeffs"].push_back(to_json(f[n]));
    return j;
}

QExp qexp_from_json(const json& j, long p, int N, int M) {
    int Q = j.at("Q").get<int>();
    QExp f(p, N, M, Q);
    const auto& c = j.at("coeffs");
    for (int n = 0; n <= Q && n < (int)c.size(); ++n) f[n] = family_from_json(c[n], p);
    return f;
}

json to_json(const NearlyExp& w, int M) {
    json j;
    j["weight"] = to_json(w.weight(), M);
    j["degree"] = w.degree();
    j["comps"] = json::array();
    for (int h = 0; h <= w.degree(); ++h) j["comps"].push_back(to_json(w[h]));
    return j;
}

NearlyExp nearly_from_json(const json& j) {
    Weight k = weight_from_json(j.at("weight"));
    long p = k.prime();
    int N = k.u.rel_prec(), M = k.u.trunc();
    std::vector<QExp> comps;
    for (const auto& c : j.at("comps")) comps.push_back(qexp_from_json(c, p, N, M));
    if (comps.empty()) throw padic_domain_error("nearly-overconvergent element needs components");
    return NearlyExp(k, std::move(comps));
}

json to_json(const PMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) j["entries"].push_back(to_json(m.at(i, k)));
    return j;
}

PMatrix matrix_from_json(const json& j, long p, int N) {
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    PMatrix m(p, N, rows, cols);
    const auto& e = j.at("entries");
    for (int i = 0; i < rows * cols; ++i)
        m.at(i / cols, i % cols) = scalar_from_json(e.at(i), p);
    return m;
}

json to_json(const PadicPoly& P) {
    json j;
    j["coeffs"] = json::array();
    for (int i = 0; i <= P.degree(); ++i) j["coeffs"].push_back(to_json(P[i]));
    return j;
}

PadicPoly poly_from_json(const json& j, long p, int N) {
    std::vector<PadicScalar> c;
    for (const auto& e : j.at("coeffs")) c.push_back(scalar_from_json(e, p));
    return PadicPoly(p, N, std::move(c));
}

}  // namespace ovmf
