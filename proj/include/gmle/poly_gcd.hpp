#pragma once

#include <optional>
#include <random>
#include <utility>

#include "gmle/polynomial.hpp"

namespace gmle {

// Exact multivariate division: returns a/b when b divides a, nullopt otherwise.
inline std::optional<Polynomial> try_divide_exact(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_ring(a, b);
    if (b.is_zero()) return std::nullopt;
    Polynomial q(a.ring());
    Polynomial r = a;
    const Monomial& ltb = b.leading_monomial();
    const Rational& lcb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Monomial& ltr = r.leading_monomial();
        if (!mono_divides(ltb, ltr)) return std::nullopt;
        Monomial m = mono_quotient(ltr, ltb);
        Rational c = r.leading_coefficient() / lcb;
        q += Polynomial::term(a.ring(), m, c);
        r.linear_combine(Rational(1), -c, m, b);
    }
    return q;
}

inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
    auto q = try_divide_exact(a, b);
    if (!q) throw std::logic_error("divide_exact: not divisible");
    return *std::move(q);
}

namespace detail {

// Pseudo-remainder of f by g in the variable x (leading-coefficient scaled;
// the caller cleans up the content).
inline Polynomial pseudo_rem(const Polynomial& f, const Polynomial& g, const VariableId& x) {
    std::uint32_t dg = g.degree_in(x);
    Polynomial lg = g.coeff_of_power(x, dg);
    Polynomial r = f;
    int ix = f.ring()->index_of(x);
    assert(ix >= 0);
    while (!r.is_zero()) {
        std::uint32_t dr = r.degree_in(x);
        if (dr < dg) break;
        Polynomial lr = r.coeff_of_power(x, dr);
        Monomial shift(f.ring()->nvars());
        shift.e[static_cast<std::size_t>(ix)] = dr - dg;
        // r = lg*r - lr*x^(dr-dg)*g   kills the x^dr part
        Polynomial shifted_g = Polynomial::term(f.ring(), shift, Rational(1)) * g;
        r = lg * r - lr * shifted_g;
    }
    return r;
}

// componentwise minimum of the exponent vectors: the monomial content
inline Monomial monomial_content(const Polynomial& f) {
    Monomial m = f.terms().front().mono;
    for (const auto& t : f.terms())
        for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::min(m.e[i], t.mono.e[i]);
    return m;
}

inline Polynomial divide_by_monomial(const Polynomial& f, const Monomial& m) {
    if (m.is_constant()) return f;
    std::vector<Term> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) out.push_back({mono_quotient(t.mono, m), t.coeff});
    return Polynomial::from_terms(f.ring(), std::move(out));
}

// dense coefficient list (by degree in variable k) of f with the other
// variables evaluated at integer points
inline std::vector<Rational> univariate_image(const Polynomial& f, std::size_t k,
                                              const std::vector<long>& point) {
    std::vector<Rational> coeffs(f.degree_in(f.ring()->var(k)) + 1, Rational(0));
    for (const auto& t : f.terms()) {
        Rational c = t.coeff;
        for (std::size_t v = 0; v < t.mono.e.size(); ++v) {
            if (v == k || t.mono.e[v] == 0) continue;
            Rational base(point[v]);
            for (std::uint32_t e = 0; e < t.mono.e[v]; ++e) c *= base;
        }
        coeffs[t.mono.e[k]] += c;
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

inline int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
    auto deg = [](const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; };
    auto trim = [](std::vector<Rational>& p) {
        while (p.size() > 1 && p.back() == 0) p.pop_back();
    };
    if (a.size() == 1 && a[0] == 0) return deg(b);
    if (b.size() == 1 && b[0] == 0) return deg(a);
    while (true) {
        if (deg(a) < deg(b)) std::swap(a, b);
        if (b.size() == 1) return b[0] == 0 ? deg(a) : 0;
        // a -= lc(a)/lc(b) * x^(da-db) * b
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
}

}  // namespace detail

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

// Content of f with respect to x: gcd of the coefficients of the powers of x.
inline Polynomial content_in(const Polynomial& f, const VariableId& x) {
    Polynomial c = Polynomial::zero(f.ring());
    std::uint32_t d = f.degree_in(x);
    for (std::uint32_t k = 0; k <= d; ++k) {
        Polynomial ck = f.coeff_of_power(x, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? ck : poly_gcd(c, ck);
        if (c.is_constant()) break;
    }
    return c;
}

// Certifies variables the gcd cannot contain. For variable x with evaluation
// point phi keeping lc_x(f) nonzero: gcd(f,g) divides f, so its x-leading
// coefficient divides lc_x(f); a degree-0 image gcd in x then proves the
// true gcd is free of x. Returns the set of variables that survive.
inline std::vector<std::size_t> possible_gcd_variables(const Polynomial& f, const Polynomial& g) {
    const auto& ring = *f.ring();
    std::size_t n = ring.nvars();
    std::vector<std::size_t> survivors;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t df = f.degree_in(ring.var(k));
        std::uint32_t dg = g.degree_in(ring.var(k));
        if (df == 0 || dg == 0) continue;  // gcd divides both: free of x already
        Polynomial lc = f.coeff_of_power(ring.var(k), df);
        bool proven_free = false;
        for (int attempt = 0; attempt < 6 && !proven_free; ++attempt) {
            std::vector<long> point(n);
            for (auto& p : point) p = static_cast<long>(rng() % 2048) - 1024;
            std::vector<Rational> values;
            values.reserve(n);
            for (std::size_t v = 0; v < n; ++v) values.emplace_back(point[v]);
            if (lc.evaluate(values) == 0) continue;  // unlucky point, try again
            int image_deg =
                univariate_gcd_degree(univariate_image(f, k, point), univariate_image(g, k, point));
            if (image_deg == 0) proven_free = true;
        }
        if (!proven_free) survivors.push_back(k);
    }
    return survivors;
}

}  // namespace detail

// Multivariate gcd over Q: monomial-content extraction, exact-division
// shortcuts and a univariate-image coprimality certificate, with primitive
// pseudo-remainder sequences as the fallback. The result is integer-primitive
// with positive leading coefficient (gcd of constants is 1).
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_ring(a, b);
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    Polynomial pa = a.primitive_part();
    Polynomial pb = b.primitive_part();
    if (pa == pb) return pa;
    if (pa.is_constant() || pb.is_constant()) return Polynomial::constant(a.ring(), 1);

    Monomial ma = detail::monomial_content(pa);
    Monomial mb = detail::monomial_content(pb);
    Monomial common(a.ring()->nvars());
    for (std::size_t i = 0; i < common.e.size(); ++i) common.e[i] = std::min(ma.e[i], mb.e[i]);
    pa = detail::divide_by_monomial(pa, ma);
    pb = detail::divide_by_monomial(pb, mb);
    Polynomial common_poly = Polynomial::term(a.ring(), common, Rational(1));
    if (pa.is_constant() || pb.is_constant()) return common_poly;
    if (pa == pb) return (pa * common_poly).primitive_part();

    // one operand dividing the other settles it
    if (pa.terms().size() <= pb.terms().size()) {
        if (try_divide_exact(pb, pa)) return (pa * common_poly).primitive_part();
    } else {
        if (try_divide_exact(pa, pb)) return (pb * common_poly).primitive_part();
    }

    std::vector<std::size_t> vars = detail::possible_gcd_variables(pa, pb);
    if (vars.empty()) return common_poly;

    // PRS in a certified surviving variable
    const VariableId& x = a.ring()->var(vars.front());
    Polynomial ca = detail::content_in(pa, x);
    Polynomial cb = detail::content_in(pb, x);
    Polynomial c = poly_gcd(ca, cb);
    Polynomial A = divide_exact(pa, ca);
    Polynomial B = divide_exact(pb, cb);
    if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);
    while (!B.is_zero() && B.degree_in(x) > 0) {
        Polynomial R = detail::pseudo_rem(A, B, x);
        A = std::move(B);
        if (R.is_zero()) {
            B = Polynomial::zero(a.ring());
        } else {
            B = divide_exact(R, detail::content_in(R, x));
        }
    }
    if (!B.is_zero()) A = Polynomial::constant(a.ring(), 1);  // coprime in x
    Polynomial g = (c * A * common_poly).primitive_part();
    // the PRS gcd candidate must divide both originals
    if (!g.is_constant()) {
        if (!try_divide_exact(a.primitive_part(), g) || !try_divide_exact(b.primitive_part(), g))
            throw std::logic_error("poly_gcd: candidate fails to divide");
    }
    return g;
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ring());
    Polynomial g = poly_gcd(a, b);
    return (divide_exact(a.primitive_part(), g) * b.primitive_part()).primitive_part();
}

}  // namespace gmle
