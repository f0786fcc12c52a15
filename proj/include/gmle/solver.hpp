#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gmle/groebner.hpp"
#include "gmle/numeric.hpp"

namespace gmle {

struct SolveOptions {
    std::uint64_t seed = 0x5eed2024;
    double dedup_tol = 1e-8;     // points closer than this (max-norm) merge
    double real_tol = 1e-9;      // |imag| threshold for calling a point real
    double residual_tol = 1e-10;  // Newton refinement target
    int newton_max_iters = 60;
};

// One solution of a zero-dimensional system. residual is the max-norm of the
// (max-coefficient-normalized) generators at the point.
struct SolutionPoint {
    std::vector<Complex> coords;  // ring variable order
    double residual = 0.0;
    bool is_real = false;
};

namespace detail {

// numeric copy of a polynomial, scaled so the largest |coefficient| is 1
struct NumericPoly {
    Polynomial poly;  // scaled symbolically away: we keep monomials + double coeffs
    std::vector<std::pair<Monomial, double>> terms;
    std::vector<std::vector<std::pair<Monomial, double>>> grads;  // per variable

    Complex eval(const std::vector<Complex>& x) const { return eval_terms(terms, x); }
    Complex eval_grad(std::size_t v, const std::vector<Complex>& x) const {
        return eval_terms(grads[v], x);
    }

    static Complex eval_terms(const std::vector<std::pair<Monomial, double>>& ts,
                              const std::vector<Complex>& x) {
        Complex acc(0, 0);
        for (const auto& [m, c] : ts) {
            Complex v(c, 0);
            for (std::size_t i = 0; i < m.e.size(); ++i) {
                Complex b = x[i];
                std::uint32_t e = m.e[i];
                while (e) {
                    if (e & 1) v *= b;
                    b *= b;
                    e >>= 1;
                }
            }
            acc += v;
        }
        return acc;
    }
};

inline NumericPoly make_numeric(const Polynomial& p) {
    NumericPoly np;
    double max_abs = 0.0;
    for (const auto& t : p.terms()) max_abs = std::max(max_abs, std::abs(to_double(t.coeff)));
    if (max_abs == 0.0) max_abs = 1.0;
    for (const auto& t : p.terms())
        np.terms.emplace_back(t.mono, to_double(t.coeff) / max_abs);
    std::size_t n = p.ring()->nvars();
    np.grads.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& [m, c] : np.terms) {
            if (m.e[v] == 0) continue;
            Monomial d = m;
            d.e[v] -= 1;
            np.grads[v].emplace_back(std::move(d), c * static_cast<double>(m.e[v]));
        }
    }
    return np;
}

inline double max_residual(const std::vector<NumericPoly>& sys, const std::vector<Complex>& x) {
    double r = 0.0;
    for (const auto& p : sys) r = std::max(r, std::abs(p.eval(x)));
    return r;
}

// Gauss-Newton refinement on the (possibly overdetermined) system.
inline void newton_refine(const std::vector<NumericPoly>& sys, std::vector<Complex>& x,
                          const SolveOptions& opts) {
    std::size_t m = sys.size(), n = x.size();
    double best = max_residual(sys, x);
    std::vector<Complex> best_x = x;
    for (int it = 0; it < opts.newton_max_iters; ++it) {
        if (best <= opts.residual_tol * 0.01) break;
        CMatrix jac(m, n);
        std::vector<Complex> f(m);
        for (std::size_t i = 0; i < m; ++i) {
            f[i] = sys[i].eval(x);
            for (std::size_t j = 0; j < n; ++j) jac(i, j) = sys[i].eval_grad(j, x);
        }
        auto delta = least_squares_solve(jac, f);
        if (!delta) break;
        double step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] -= (*delta)[j];
            step = std::max(step, std::abs((*delta)[j]));
        }
        double res = max_residual(sys, x);
        if (res < best) {
            best = res;
            best_x = x;
        } else if (step < 1e-15) {
            break;
        }
    }
    x = best_x;
}

}  // namespace detail

// All complex solutions of a zero-dimensional system, by the eigenvalue
// method: eigenvectors of a random combination of the multiplication
// matrices encode the coordinate evaluations, which are then polished by
// Gauss-Newton on the generators and deduplicated.
inline std::vector<SolutionPoint> zero_dim_solve(const GroebnerBasis& gb, SolveOptions opts = {}) {
    int dim = dimension(gb);
    if (dim > 0) throw positive_dimension_error(dim, degree(gb));
    if (gb.is_unit_ideal()) return {};
    std::size_t n = gb.ring->nvars();
    std::vector<Monomial> basis = standard_monomials(gb);
    std::size_t d = basis.size();
    // basis is sorted ascending, so the constant monomial sits at index 0
    if (d == 0 || !basis[0].is_constant())
        throw std::logic_error("zero_dim_solve: malformed quotient basis");

    std::vector<DMatrix> mul(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto q = multiplication_matrix(gb, Polynomial::variable(gb.ring, gb.ring->var(v)), basis);
        mul[v] = DMatrix(d, d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) mul[v](i, j) = to_double(q[i][j]);
    }

    std::vector<detail::NumericPoly> sys;
    for (const auto& g : gb.generators) sys.push_back(detail::make_numeric(g));

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<SolutionPoint> out;
    // a radical ideal has exactly `degree` distinct points; retry with fresh
    // random combinations if an unlucky one clustered eigenvalues (points
    // collapsed by genuine multiplicity simply stop short of the bound)
    const long want = degree(gb);
    for (int attempt = 0; attempt < 5 && static_cast<long>(out.size()) < want; ++attempt) {
        std::vector<double> combo(n);
        for (auto& c : combo) {
            do {
                c = unif(rng);
            } while (std::abs(c) < 0.1);
        }
        // left eigenvectors of M_g = right eigenvectors of M_g^T
        CMatrix a(d, d, Complex(0, 0));
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) a(j, i) += combo[v] * mul[v](i, j);
        std::vector<Complex> eig;
        try {
            eig = complex_eigenvalues(a);
        } catch (const resource_error&) {
            continue;
        }
        std::vector<SolutionPoint> candidates;
        bool bad = false;
        for (const auto& lambda : eig) {
            std::vector<Complex> w = inverse_iteration(a, lambda, opts.seed + 17);
            double wmax = 0.0;
            for (const auto& c : w) wmax = std::max(wmax, std::abs(c));
            if (std::abs(w[0]) < 1e-10 * wmax) {
                bad = true;  // evaluation vector must have nonzero constant coordinate
                break;
            }
            SolutionPoint pt;
            pt.coords.resize(n);
            for (std::size_t v = 0; v < n; ++v) {
                Complex acc(0, 0);
                for (std::size_t r = 0; r < d; ++r) acc += w[r] * mul[v](r, 0);
                pt.coords[v] = acc / w[0];
            }
            detail::newton_refine(sys, pt.coords, opts);
            pt.residual = detail::max_residual(sys, pt.coords);
            candidates.push_back(std::move(pt));
        }
        if (bad) continue;
        // deduplicate (multiple eigenvalue copies of one point collapse)
        for (auto& c : candidates) {
            bool dup = false;
            for (auto& existing : out) {
                double dist = 0.0;
                for (std::size_t v = 0; v < n; ++v)
                    dist = std::max(dist, std::abs(existing.coords[v] - c.coords[v]));
                if (dist <= opts.dedup_tol) {
                    if (c.residual < existing.residual) existing = c;
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(std::move(c));
        }
    }
    for (auto& pt : out) {
        pt.is_real = true;
        for (const auto& c : pt.coords)
            if (std::abs(c.imag()) > opts.real_tol) {
                pt.is_real = false;
                break;
            }
    }
    std::sort(out.begin(), out.end(), [](const SolutionPoint& a, const SolutionPoint& b) {
        for (std::size_t i = 0; i < a.coords.size(); ++i) {
            if (a.coords[i].real() != b.coords[i].real())
                return a.coords[i].real() < b.coords[i].real();
            if (a.coords[i].imag() != b.coords[i].imag())
                return a.coords[i].imag() < b.coords[i].imag();
        }
        return false;
    });
    return out;
}

// Solutions whose imaginary parts are all below tol, projected to real vectors.
inline std::vector<std::vector<double>> real_solutions(const std::vector<SolutionPoint>& sols,
                                                       double tol = 1e-9) {
    std::vector<std::vector<double>> out;
    for (const auto& s : sols) {
        bool real = true;
        for (const auto& c : s.coords)
            if (std::abs(c.imag()) > tol) {
                real = false;
                break;
            }
        if (!real) continue;
        std::vector<double> v(s.coords.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.coords[i].real();
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace gmle
