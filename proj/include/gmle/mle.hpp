#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmle/score.hpp"
#include "gmle/solver.hpp"

namespace gmle {

enum class Classification { LocalMax, LocalMin, Saddle, Degenerate };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::LocalMax: return "LocalMax";
        case Classification::LocalMin: return "LocalMin";
        case Classification::Saddle: return "Saddle";
        case Classification::Degenerate: return "Degenerate";
    }
    return "?";
}

struct MLEOptions {
    double pd_tol_scale = 1e-9;  // PD tolerance = scale * trace / m
    double real_tol = 1e-9;
    double dedup_tol = 1e-8;
    double tie_tol = 1e-9;  // optima within this of the max log-likelihood
    // an eigenvalue counts as zero below hess_tol_scale * spectral radius;
    // Hessian spectra here can span 10^11, so the threshold sits just above
    // double-precision eigenvalue noise
    double hess_tol_scale = 1e-12;
    std::uint64_t seed = 0x5eed2024;
    BuchbergerOptions buchberger{};
};

struct CriticalPoint {
    std::vector<double> parameters;  // ring variable order
    DMatrix covariance;
    bool positive_definite = false;
    std::optional<double> log_lik;  // only for positive definite points
    Classification classification = Classification::Degenerate;
};

struct MLEResult {
    std::optional<double> max_log_lik;
    std::vector<DMatrix> optima;  // all covariance matrices attaining the max
    long ml_degree = 0;
    std::size_t n_solutions = 0;
    std::size_t n_real_solutions = 0;
    std::vector<CriticalPoint> critical_points;  // PD first, then by logLik descending
    ScoreSystem system;
};

inline double pd_tolerance(const DMatrix& m, double scale = 1e-9) {
    double tr = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    double rel = scale * tr / static_cast<double>(m.rows());
    return rel > 0.0 ? rel : 1e-12;
}

// Symmetric within tol (input error otherwise) and minimum eigenvalue > tol.
inline bool is_positive_definite(const DMatrix& m, double tol) {
    if (!m.is_square() || m.rows() == 0)
        throw input_error("is_positive_definite: matrix must be square");
    double scale = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) scale = std::max(scale, std::abs(m(i, j)));
    double sym_tol = std::max(std::abs(tol), 1e-8 * std::max(scale, 1.0));
    if (!is_symmetric(m, sym_tol))
        throw input_error("is_positive_definite: matrix is not symmetric");
    DMatrix s = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    auto ev = symmetric_eigenvalues(std::move(s));
    return ev.front() > tol;
}

// l(Sigma) = -log det Sigma - tr(S Sigma^{-1}); Sigma must be PD.
inline double log_lik(const DMatrix& s, const DMatrix& sigma) {
    if (!sigma.is_square() || sigma.rows() != s.rows() || !s.is_square())
        throw dimension_mismatch("log_lik: dimension mismatch");
    auto chol = cholesky(sigma);
    if (!chol) throw std::domain_error("log_lik: covariance is not positive definite");
    std::size_t m = s.rows();
    double tr = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> e(m, 0.0);
        e[j] = 1.0;
        std::vector<double> col = chol_solve(*chol, std::move(e));  // Sigma^{-1} e_j
        for (std::size_t i = 0; i < m; ++i) tr += s(j, i) * col[i];
    }
    return -log_det_from_cholesky(*chol) - tr;
}

// Hessian eigenvalue classification with a threshold relative to the
// spectral radius.
inline Classification classify_from_eigenvalues(const std::vector<double>& ev,
                                                double tol_scale = 1e-12) {
    if (ev.empty()) return Classification::Degenerate;
    double rad = 0.0;
    for (double e : ev) rad = std::max(rad, std::abs(e));
    double eps = tol_scale * rad;
    if (rad == 0.0) return Classification::Degenerate;
    bool any_pos = false, any_neg = false, any_zero = false;
    for (double e : ev) {
        if (std::abs(e) <= eps)
            any_zero = true;
        else if (e > 0)
            any_pos = true;
        else
            any_neg = true;
    }
    if (any_zero) return Classification::Degenerate;
    if (any_pos && any_neg) return Classification::Saddle;
    if (any_neg) return Classification::LocalMax;
    return Classification::LocalMin;
}

// Evaluates the exact Hessian at each real solution and classifies it.
inline std::vector<Classification> classify_critical_points(
    const ScoreSystem& sys, const std::vector<std::vector<double>>& real_sols,
    double tol_scale = 1e-12) {
    auto [grad, hess] = gradient_and_hessian(sys);
    (void)grad;
    std::vector<Classification> out;
    std::size_t d = sys.vars.size();
    for (const auto& sol : real_sols) {
        std::vector<std::complex<double>> x(sol.size());
        for (std::size_t i = 0; i < sol.size(); ++i) x[i] = sol[i];
        try {
            CMatrix h = evaluate(hess, x);
            DMatrix hr(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    hr(i, j) = 0.5 * (h(i, j).real() + h(j, i).real());
            out.push_back(
                classify_from_eigenvalues(symmetric_eigenvalues(std::move(hr)), tol_scale));
        } catch (const pole_error&) {
            out.push_back(Classification::Degenerate);
        }
    }
    return out;
}

// Full pipeline: model ring, score equations, Groebner analysis, all complex
// solutions, PD filtering and likelihood ranking. Throws
// positive_dimension_error when the score ideal is not zero-dimensional.
inline MLEResult solve_mle(const MixedGraph& g, const QMatrix& input, bool sample_data,
                           DataOrientation orientation = DataOrientation::RowsAreSamples,
                           const MLEOptions& opts = {}) {
    QMatrix s = sample_data ? sample_covariance(input, orientation) : input;
    if (!sample_data) {
        if (s.rows() != s.cols()) throw dimension_mismatch("solve_mle: covariance must be square");
        if (!is_symmetric(s)) throw input_error("solve_mle: covariance must be symmetric");
    }
    // likelihood normalization: (n/2) l(Sigma) when raw data with n samples
    // is supplied, plain l(Sigma) when a covariance matrix is given directly
    double lik_factor = 1.0;
    if (sample_data) {
        std::size_t n =
            orientation == DataOrientation::RowsAreSamples ? input.rows() : input.cols();
        lik_factor = static_cast<double>(n) / 2.0;
    }

    ModelRing mr = build_model_ring(g);
    ScoreOptions sopts;
    sopts.buchberger = opts.buchberger;
    MLEResult res;
    res.system = score_equations(mr, s, sopts);
    if (res.system.polynomials.empty())
        throw positive_dimension_error(static_cast<int>(res.system.vars.size()), 1);

    GroebnerBasis gb = groebner(res.system.polynomials, opts.buchberger);
    int dim = dimension(gb);
    if (dim > 0) throw positive_dimension_error(dim, degree(gb));
    res.ml_degree = degree(gb);
    if (dim < 0) return res;  // empty variety: no critical points at all

    SolveOptions solve_opts;
    solve_opts.seed = opts.seed;
    solve_opts.dedup_tol = opts.dedup_tol;
    solve_opts.real_tol = opts.real_tol;
    std::vector<SolutionPoint> sols = zero_dim_solve(gb, solve_opts);
    res.n_solutions = sols.size();
    std::vector<std::vector<double>> reals = real_solutions(sols, opts.real_tol);
    res.n_real_solutions = reals.size();

    std::vector<Classification> cls = classify_critical_points(res.system, reals, opts.hess_tol_scale);
    DMatrix sd = to_double(s);
    for (std::size_t i = 0; i < reals.size(); ++i) {
        CriticalPoint cp;
        cp.parameters = reals[i];
        std::vector<std::complex<double>> x(reals[i].size());
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = reals[i][k];
        CMatrix sigma_c = evaluate(res.system.sigma, x);
        DMatrix cov(sigma_c.rows(), sigma_c.cols());
        for (std::size_t a = 0; a < cov.rows(); ++a)
            for (std::size_t b = 0; b < cov.cols(); ++b)
                cov(a, b) = 0.5 * (sigma_c(a, b).real() + sigma_c(b, a).real());
        cp.covariance = cov;
        cp.classification = cls[i];
        double tol = pd_tolerance(cov, opts.pd_tol_scale);
        bool pd = false;
        try {
            pd = is_positive_definite(cov, tol);
        } catch (const input_error&) {
            pd = false;
        }
        cp.positive_definite = pd;
        if (pd) cp.log_lik = lik_factor * log_lik(sd, cov);
        res.critical_points.push_back(std::move(cp));
    }
    std::sort(res.critical_points.begin(), res.critical_points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) {
                  if (a.positive_definite != b.positive_definite) return a.positive_definite;
                  if (a.log_lik && b.log_lik && *a.log_lik != *b.log_lik)
                      return *a.log_lik > *b.log_lik;
                  return a.parameters < b.parameters;
              });
    for (const auto& cp : res.critical_points) {
        if (!cp.log_lik) continue;
        if (!res.max_log_lik || *cp.log_lik > *res.max_log_lik) res.max_log_lik = *cp.log_lik;
    }
    if (res.max_log_lik) {
        for (const auto& cp : res.critical_points)
            if (cp.log_lik && *cp.log_lik >= *res.max_log_lik - opts.tie_tol)
                res.optima.push_back(cp.covariance);
    }
    return res;
}

// Seeded generic rational PD matrix: X is m x (m+1) with integer entries
// uniform in [-100, 100], S = X X^T / (m+1).
inline QMatrix random_generic_covariance(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> unif(-100, 100);
    for (int attempt = 0; attempt < 64; ++attempt) {
        QMatrix x(m, m + 1, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m + 1; ++j) x(i, j) = Rational(unif(rng));
        QMatrix s(m, m, Rational(0));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b) {
                Rational acc(0);
                for (std::size_t j = 0; j < m + 1; ++j) acc += x(a, j) * x(b, j);
                s(a, b) = s(b, a) = acc / Rational(static_cast<long>(m + 1));
            }
        if (det(s) != 0) return s;
    }
    throw input_error("random_generic_covariance: could not draw a full-rank matrix");
}

// ML-degree of the model for generic data (seeded); throws
// positive_dimension_error when the score ideal has positive dimension.
inline long ml_degree(const MixedGraph& g, std::uint64_t seed = 0x5eed2024,
                      const MLEOptions& opts = {}) {
    ModelRing mr = build_model_ring(g);
    QMatrix s = random_generic_covariance(g.order(), seed);
    ScoreOptions sopts;
    sopts.buchberger = opts.buchberger;
    ScoreSystem sys = score_equations(mr, s, sopts);
    if (sys.polynomials.empty())
        throw positive_dimension_error(static_cast<int>(sys.vars.size()), 1);
    GroebnerBasis gb = groebner(sys.polynomials, opts.buchberger);
    int dim = dimension(gb);
    long deg = degree(gb);
    if (dim > 0) throw positive_dimension_error(dim, deg);
    return deg;
}

}  // namespace gmle
