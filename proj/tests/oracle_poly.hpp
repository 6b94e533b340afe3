#pragma once

// Brute-force polynomial arithmetic used to compute oracle values in the
// tests. Deliberately independent of the library's series engine: dense
// exponent maps, naive convolution, no truncation bookkeeping beyond a
// degree cap.

#include <complex>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Exp = std::vector<int>;

inline int degree(const Exp& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct Poly {
    int vars;
    std::map<Exp, C> coeff;

    explicit Poly(int v) : vars(v) {}

    static Poly constant(int v, C x) {
        Poly p(v);
        if (x != C{0.0, 0.0}) p.coeff[Exp(static_cast<std::size_t>(v), 0)] = x;
        return p;
    }
    static Poly variable(int v, int j) {
        Poly p(v);
        Exp e(static_cast<std::size_t>(v), 0);
        e[static_cast<std::size_t>(j)] = 1;
        p.coeff[e] = C{1.0, 0.0};
        return p;
    }

    C at(const Exp& e) const {
        auto it = coeff.find(e);
        return it == coeff.end() ? C{0.0, 0.0} : it->second;
    }
};

inline Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.coeff) r.coeff[e] += c;
    return r;
}

inline Poly scale(const Poly& a, C x) {
    Poly r(a.vars);
    for (const auto& [e, c] : a.coeff) r.coeff[e] = c * x;
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, int max_degree) {
    Poly r(a.vars);
    for (const auto& [ea, ca] : a.coeff)
        for (const auto& [eb, cb] : b.coeff) {
            if (degree(ea) + degree(eb) > max_degree) continue;
            Exp e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.coeff[e] += ca * cb;
        }
    return r;
}

inline Poly power(const Poly& a, int m, int max_degree) {
    Poly r = Poly::constant(a.vars, C{1.0, 0.0});
    for (int i = 0; i < m; ++i) r = mul(r, a, max_degree);
    return r;
}

/// (1 + base)^e = sum_m binom(e, m) base^m, truncated at max_degree.
/// base must have zero constant term.
inline Poly binomial_series(const Poly& base, double e, int max_degree) {
    Poly r = Poly::constant(base.vars, C{1.0, 0.0});
    double binom = 1.0;
    Poly base_pow = Poly::constant(base.vars, C{1.0, 0.0});
    for (int m = 1; m <= max_degree; ++m) {
        binom *= (e - (m - 1)) / m;
        base_pow = mul(base_pow, base, max_degree);
        r = add(r, scale(base_pow, C{binom, 0.0}));
    }
    return r;
}

inline C eval(const Poly& p, const std::vector<C>& point) {
    C acc{0.0, 0.0};
    for (const auto& [e, c] : p.coeff) {
        C term = c;
        for (std::size_t j = 0; j < e.size(); ++j)
            for (int k = 0; k < e[j]; ++k) term *= point[j];
        acc += term;
    }
    return acc;
}

} // namespace oracle
