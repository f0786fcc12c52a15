#include <doctest.h>

#include <random>

#include "gmle/mle.hpp"
#include "gmle/score.hpp"

using namespace gmle;

namespace {
MixedGraph cycle4() { return MixedGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}, {}, {}); }
MixedGraph example_mixed() {
    return MixedGraph({1, 2, 3, 4}, {{1, 2}}, {{1, 3}, {2, 4}}, {{3, 4}});
}

QMatrix identity_q(std::size_t n) {
    QMatrix m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}
}  // namespace

TEST_CASE("structured det and inverse agree with the generic routes") {
    for (const MixedGraph& g : {cycle4(), example_mixed()}) {
        ModelRing mr = build_model_ring(g);
        RFMatrix sigma = covariance_parametrization(mr);
        CHECK(structured_det_sigma(mr) == det(sigma));
        CHECK(structured_sigma_inverse(mr) == inverse(sigma));
    }
}

TEST_CASE("input validation") {
    ModelRing mr = build_model_ring(cycle4());
    QMatrix wrong(3, 3, Rational(0));
    CHECK_THROWS_AS(score_equations(mr, wrong), dimension_mismatch);
    QMatrix asym = identity_q(4);
    asym(0, 1) = Rational(1);
    CHECK_THROWS_AS(score_equations(mr, asym), input_error);
}

TEST_CASE("identity sample covariance on the 4-cycle is solved by the identity") {
    ModelRing mr = build_model_ring(cycle4());
    ScoreSystem sys = score_equations(mr, identity_q(4));
    // K = identity: k_(i,i) = 1, k_(i,j) = 0 satisfies every generator exactly
    std::vector<Rational> point;
    for (const auto& v : sys.vars) point.emplace_back(v.i == v.j ? 1 : 0);
    for (const auto& p : sys.polynomials) CHECK(p.evaluate(point) == 0);
    // and the MLE is the identity itself
    MLEResult res = solve_mle(cycle4(), identity_q(4), false);
    REQUIRE(res.optima.size() == 1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(res.optima[0](i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
}

TEST_CASE("the witness of an undirected model is the concentration determinant") {
    ModelRing mr = build_model_ring(cycle4());
    ScoreSystem sys = score_equations(mr, identity_q(4));
    CHECK(sys.denominator_witness == det(mr.K).primitive_part());
}

TEST_CASE("score system polynomials avoid the covariance variables") {
    ModelRing mr = build_model_ring(example_mixed());
    QMatrix s = random_generic_covariance(4, 99);
    ScoreSystem sys = score_equations(mr, s);
    CHECK(sys.polynomials.size() >= sys.vars.size());
    for (const auto& p : sys.polynomials) {
        for (const auto& v : p.support()) {
            CHECK(v.kind != VarKind::S);
            CHECK(v.kind != VarKind::Aux);
        }
        // integer coefficients with content removed
        CHECK(p.content() == 1);
    }
}

TEST_CASE("gradient vanishes at the solver's critical points") {
    MixedGraph g = example_mixed();
    QMatrix s = random_generic_covariance(4, 5);
    ModelRing mr = build_model_ring(g);
    ScoreSystem sys = score_equations(mr, s);
    GroebnerBasis gb = groebner(sys.polynomials);
    auto sols = zero_dim_solve(gb);
    REQUIRE(!sols.empty());
    auto [grad, hess] = gradient_and_hessian(sys);
    for (const auto& sol : sols) {
        for (std::size_t v = 0; v < sys.vars.size(); ++v) {
            std::complex<double> gv = grad(0, v).evaluate(sol.coords);
            CHECK(std::abs(gv) <= 1e-8);
        }
    }
    (void)hess;
}

TEST_CASE("exact gradient agrees with finite differences of the log-likelihood") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> small(-0.25, 0.25), diag(2.0, 4.0), lam(-0.8, 0.8);
    for (const MixedGraph& g : {cycle4(), example_mixed()}) {
        ModelRing mr = build_model_ring(g);
        QMatrix s = random_generic_covariance(g.order(), 31);
        ScoreSystem sys = score_equations(mr, s);
        auto [grad, hess] = gradient_and_hessian(sys);
        (void)hess;
        DMatrix sd = to_double(s);
        auto loglik_at = [&](const std::vector<std::complex<double>>& pt) {
            CMatrix sigma_c = evaluate(sys.sigma, pt);
            DMatrix sig = real_part(sigma_c);
            return log_lik(sd, sig);
        };
        const double h = 1e-5;
        int points = 0;
        while (points < 20) {
            std::vector<std::complex<double>> pt;
            for (const auto& v : mr.ring->vars()) {
                if (v.kind == VarKind::L)
                    pt.emplace_back(lam(rng), 0.0);
                else if (v.i == v.j)
                    pt.emplace_back(diag(rng), 0.0);
                else
                    pt.emplace_back(small(rng), 0.0);
            }
            try {
                loglik_at(pt);
            } catch (const std::domain_error&) {
                continue;  // not positive definite: resample
            }
            ++points;
            for (std::size_t v = 0; v < sys.vars.size(); ++v) {
                auto hi = pt, lo = pt;
                hi[v] += h;
                lo[v] -= h;
                double fd = (loglik_at(hi) - loglik_at(lo)) / (2 * h);
                double exact = grad(0, v).evaluate(pt).real();
                CHECK(std::abs(fd - exact) <=
                      1e-5 * std::max({std::abs(exact), std::abs(fd), 1.0}));
            }
        }
    }
}

TEST_CASE("Hessian eigenvalues at the reference critical points") {
    MixedGraph g = example_mixed();
    const char* s_str[4][4] = {
        {"34183/50000", "716539/10000000", "204869/250000", "12213/25000"},
        {"716539/10000000", "112191/500000", "309413/1000000", "1803/4000"},
        {"204869/250000", "309413/1000000", "3849/3125", "15172/15625"},
        {"12213/25000", "1803/4000", "15172/15625", "4487/4000"}};
    QMatrix s(4, 4, Rational(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s(i, j) = parse_rational(s_str[i][j]);
    MLEResult res = solve_mle(g, s, false);
    REQUIRE(res.critical_points.size() == 3);
    ModelRing mr = build_model_ring(g);
    ScoreSystem sys = score_equations(mr, s);
    auto [grad, hess] = gradient_and_hessian(sys);
    (void)grad;
    auto eigenvalues_at = [&](const std::vector<double>& params) {
        std::vector<std::complex<double>> x(params.begin(), params.end());
        CMatrix h = evaluate(hess, x);
        DMatrix hr(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) hr(i, j) = 0.5 * (h(i, j).real() + h(j, i).real());
        return symmetric_eigenvalues(std::move(hr));
    };
    auto contains = [](const std::vector<double>& ev, double target) {
        for (double e : ev)
            if (std::abs(e - target) <= 1e-3 * std::abs(target)) return true;
        return false;
    };
    // roster is sorted by likelihood: global max, second local max, saddle
    auto ev0 = eigenvalues_at(res.critical_points[0].parameters);
    for (double t : {-.516478, -.271913, -.0464172}) CHECK(contains(ev0, t));
    CHECK(ev0.back() < 0);  // all negative at a maximum
    auto ev1 = eigenvalues_at(res.critical_points[1].parameters);
    for (double t : {-414.15, -28.6352, -6.1936, -1.64689, -.516478, -.271913, -.0464172})
        CHECK(contains(ev1, t));
    CHECK(ev1.back() < 0);
    auto ev2 = eigenvalues_at(res.critical_points[2].parameters);
    for (double t : {-59.7135, -11.5533, -2.80504, 1.52598, -.516478, -.271913, -.0464172})
        CHECK(contains(ev2, t));
}

TEST_CASE("the Hessian is symmetric as a matrix of rational functions") {
    ModelRing mr = build_model_ring(example_mixed());
    QMatrix s = random_generic_covariance(4, 77);
    ScoreSystem sys = score_equations(mr, s);
    auto [grad, hess] = gradient_and_hessian(sys);
    (void)grad;
    std::size_t d = sys.vars.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) CHECK(hess(i, j) == hess(j, i));
}

TEST_CASE("saturation keeps every solution off the witness locus") {
    auto x = VariableId::aux(1), y = VariableId::aux(2);
    auto ring = make_ring({y, x});
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto rand_q = [&]() {
        std::vector<Term> terms;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Monomial m(2);
                m.e[0] = a;
                m.e[1] = b;
                terms.push_back({std::move(m), Rational(coeff(rng))});
            }
        return Polynomial::from_terms(ring, terms);
    };
    int checked = 0;
    for (int trial = 0; trial < 20 && checked < 8; ++trial) {
        Polynomial f = rand_q(), g = rand_q(), w = rand_q();
        if (f.is_zero() || g.is_zero() || w.is_zero() || w.is_constant()) continue;
        GroebnerBasis gb = groebner({f, g});
        if (dimension(gb) != 0) continue;
        std::vector<SolutionPoint> sols;
        try {
            sols = zero_dim_solve(gb);
        } catch (const std::exception&) {
            continue;
        }
        std::vector<Polynomial> sat = saturate({f, g}, w);
        if (sat.empty()) continue;
        ++checked;
        for (const auto& s : sols) {
            if (std::abs(w.evaluate(s.coords)) < 1e-6) continue;  // on the witness locus
            for (const auto& p : sat) {
                double scale = 0.0;
                for (const auto& t : p.terms()) scale = std::max(scale, std::abs(to_double(t.coeff)));
                CHECK(std::abs(p.evaluate(s.coords)) <= 1e-6 * std::max(scale, 1.0));
            }
        }
    }
    CHECK(checked > 0);
}
