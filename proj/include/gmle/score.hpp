#pragma once

#include <utility>
#include <vector>

#include "gmle/groebner.hpp"
#include "gmle/model_ring.hpp"

namespace gmle {

// The score-equation system of a model ring and a sample covariance matrix:
// clearing the log-likelihood gradient of denominators gives one polynomial
// per parameter; saturating by the denominator witness removes the spurious
// locus where the likelihood is undefined. polynomials holds the reduced
// Groebner basis of the saturated ideal.
struct ScoreSystem {
    RingPtr ring;
    std::vector<VariableId> vars;
    std::vector<Polynomial> polynomials;
    RFMatrix sigma;
    Polynomial denominator_witness;
    QMatrix sample_cov;
    RationalFunction det_sigma;
    RationalFunction trace_term;  // tr(S * Sigma^{-1})
};

// det Sigma in closed form: det(I - Lambda) = 1 by the vertex ordering, so
// det Sigma = det Psi / det K with empty blocks contributing 1.
inline RationalFunction structured_det_sigma(const ModelRing& mr) {
    Polynomial one = Polynomial::constant(mr.ring, 1);
    Polynomial det_k = mr.internal_u.empty() ? one : det(mr.K);
    Polynomial det_psi = mr.internal_w.empty() ? one : det(mr.Psi);
    return RationalFunction(det_psi, det_k);
}

// Sigma^{-1} = (I - Lambda) [K 0; 0 Psi^{-1}] (I - Lambda)^T.
inline RFMatrix structured_sigma_inverse(const ModelRing& mr) {
    std::size_t m = mr.order(), nu = mr.internal_u.size();
    RFMatrix middle(m, m, RationalFunction::zero(mr.ring));
    for (std::size_t a = 0; a < nu; ++a)
        for (std::size_t b = 0; b < nu; ++b) middle(a, b) = RationalFunction(mr.K(a, b));
    if (!mr.internal_w.empty()) {
        RFMatrix psi_inv = inverse(rf_from_poly(mr.Psi));
        for (std::size_t a = 0; a < mr.internal_w.size(); ++a)
            for (std::size_t b = 0; b < mr.internal_w.size(); ++b)
                middle(nu + a, nu + b) = psi_inv(a, b);
    }
    RFMatrix i_minus_l = rf_identity(mr.ring, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!mr.Lambda(i, j).is_zero())
                i_minus_l(i, j) = i_minus_l(i, j) - RationalFunction(mr.Lambda(i, j));
    return rf_matmul(rf_matmul(i_minus_l, middle), i_minus_l.transpose());
}

namespace detail {

// Product of the distinct denominators of Sigma and the numerator of
// det Sigma, with factors that exactly divide another factor dropped
// (saturating by f and f*h is saturating by f*h).
inline Polynomial denominator_witness_for(const RFMatrix& sigma,
                                          const RationalFunction& det_sigma) {
    RingPtr ring = det_sigma.ring();
    std::vector<Polynomial> factors;
    auto add_factor = [&](const Polynomial& f) {
        if (f.is_zero() || f.is_constant()) return;
        Polynomial p = f.primitive_part();
        for (const auto& existing : factors)
            if (existing == p) return;
        factors.push_back(std::move(p));
    };
    add_factor(det_sigma.num());
    for (std::size_t i = 0; i < sigma.rows(); ++i)
        for (std::size_t j = i; j < sigma.cols(); ++j) add_factor(sigma(i, j).den());
    // drop factors that divide another factor (saturating by fh already
    // saturates by f); equal factors were deduplicated above
    std::vector<Polynomial> kept;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        bool divides_other = false;
        for (std::size_t j = 0; j < factors.size() && !divides_other; ++j) {
            if (i == j) continue;
            if (try_divide_exact(factors[j], factors[i]).has_value()) divides_other = true;
        }
        if (!divides_other) kept.push_back(factors[i]);
    }
    Polynomial w = Polynomial::constant(ring, 1);
    for (const auto& f : kept) w = w * f;
    return w;
}

}  // namespace detail

struct ScoreOptions {
    BuchbergerOptions buchberger{};
};

// Builds the score-equation system for a model ring and a symmetric rational
// sample covariance matrix: for each parameter v the equation
//   -d(det Sigma)/dv - det Sigma * d(tr(S Sigma^{-1}))/dv,
// cleared of denominators, then saturated by the denominator witness and
// presented as a reduced Groebner basis.
inline ScoreSystem score_equations(const ModelRing& mr, const QMatrix& s,
                                   const ScoreOptions& opts = {}) {
    std::size_t m = mr.order();
    if (s.rows() != m || s.cols() != m)
        throw dimension_mismatch("score_equations: sample covariance is " + std::to_string(s.rows()) +
                                 "x" + std::to_string(s.cols()) + ", expected " + std::to_string(m) +
                                 "x" + std::to_string(m));
    if (!is_symmetric(s)) throw input_error("score_equations: sample covariance is not symmetric");

    ScoreSystem sys;
    sys.ring = mr.ring;
    sys.vars = mr.ring->vars();
    sys.sample_cov = s;
    sys.sigma = covariance_parametrization(mr);
    sys.det_sigma = structured_det_sigma(mr);

    RFMatrix sigma_inv = structured_sigma_inverse(mr);
    RationalFunction tr = RationalFunction::zero(mr.ring);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (s(i, j) == 0 || sigma_inv(j, i).is_zero()) continue;
            tr += RationalFunction::constant(mr.ring, s(i, j)) * sigma_inv(j, i);
        }
    sys.trace_term = tr;

    std::vector<Polynomial> raw;
    for (const auto& v : sys.vars) {
        RationalFunction eq = -sys.det_sigma.derivative(v) - sys.det_sigma * tr.derivative(v);
        if (eq.is_zero()) continue;
        raw.push_back(eq.num().primitive_part());
    }
    sys.denominator_witness = detail::denominator_witness_for(sys.sigma, sys.det_sigma);
    if (raw.empty()) {
        sys.polynomials = {};
        return sys;
    }
    SaturationOptions sat_opts;
    sat_opts.buchberger = opts.buchberger;
    std::vector<Polynomial> saturated = saturate(raw, sys.denominator_witness, sat_opts);
    if (saturated.empty()) {
        // saturation wiped the ideal: the system is trivial
        sys.polynomials = {};
        return sys;
    }
    GroebnerBasis gb = groebner(saturated, opts.buchberger);
    sys.polynomials = gb.generators;
    return sys;
}

// Exact gradient of the log-likelihood l = -log det Sigma - tr(S Sigma^{-1})
// (a 1 x d row in parameter order) and its Jacobian, the d x d Hessian.
inline std::pair<RFMatrix, RFMatrix> gradient_and_hessian(const ScoreSystem& sys) {
    std::size_t d = sys.vars.size();
    RFMatrix grad(1, d, RationalFunction::zero(sys.ring));
    for (std::size_t v = 0; v < d; ++v) {
        grad(0, v) = -(sys.det_sigma.derivative(sys.vars[v]) / sys.det_sigma) -
                     sys.trace_term.derivative(sys.vars[v]);
    }
    RFMatrix hess(d, d, RationalFunction::zero(sys.ring));
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) hess(u, v) = grad(0, v).derivative(sys.vars[u]);
    return {std::move(grad), std::move(hess)};
}

}  // namespace gmle
