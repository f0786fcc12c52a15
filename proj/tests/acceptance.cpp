// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.
// argv[1] (optional) is the path to the gmle CLI binary, used by the
// criteria that exercise the command-line surface.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gmle/gmle.hpp"

using namespace gmle;
using Clock = std::chrono::steady_clock;

namespace {

int criteria_failed = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << " (" << name << ") ["
              << seconds << " s]";
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    std::cout.flush();
    if (!pass) ++criteria_failed;
}

void run_criterion(int number, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = Clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(number, name, pass, secs, detail);
}

MixedGraph cycle4() { return MixedGraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}, {}, {}); }
MixedGraph example_mixed() {
    return MixedGraph({1, 2, 3, 4}, {{1, 2}}, {{1, 3}, {2, 4}}, {{3, 4}});
}
MixedGraph multiedge() {
    return MixedGraph({1, 2, 3, 4}, {{1, 2}}, {{1, 3}, {1, 2}, {2, 4}, {3, 4}}, {});
}

QMatrix example1_cov() {
    const char* s[4][4] = {{".105409", "-.0745495", "-.0186132", ".0621907"},
                           {"-.0745495", ".0783734", "-.00844503", "-.0872842"},
                           {"-.0186132", "-.00844503", ".128307", ".0230245"},
                           {".0621907", "-.0872842", ".0230245", ".109849"}};
    QMatrix m(4, 4, Rational(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = parse_rational(s[i][j]);
    return m;
}

QMatrix example2_cov() {
    const char* s[4][4] = {
        {"34183/50000", "716539/10000000", "204869/250000", "12213/25000"},
        {"716539/10000000", "112191/500000", "309413/1000000", "1803/4000"},
        {"204869/250000", "309413/1000000", "3849/3125", "15172/15625"},
        {"12213/25000", "1803/4000", "15172/15625", "4487/4000"}};
    QMatrix m(4, 4, Rational(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = parse_rational(s[i][j]);
    return m;
}

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {-1, ""};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool proportional_integer_polys(const Polynomial& a, const Polynomial& b) {
    // equal up to integer scaling and sign after content normalization
    Polynomial pa = a.primitive_part(), pb = b.primitive_part();
    return pa == pb || pa == -pb;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_bin = argc > 1 ? argv[1] : "";
    std::string data_dir = GMLE_DATA_DIR;
    auto suite_start = Clock::now();

    // ------------------------------------------------------------------
    run_criterion(1, "4-cycle golden", [&](std::string& detail) {
        auto t0 = Clock::now();
        QMatrix s = example1_cov();
        MLEResult res = solve_mle(cycle4(), s, false);
        double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
        bool ok = true;
        std::ostringstream why;
        if (res.ml_degree != 5) {
            ok = false;
            why << "mlDegree=" << res.ml_degree << " (want 5); ";
        }
        if (!res.max_log_lik || std::abs(*res.max_log_lik - 6.62005) > 5e-5) {
            ok = false;
            why << "maxLogLik=" << (res.max_log_lik ? *res.max_log_lik : -1)
                << " (want 6.62005 +- 5e-5); ";
        }
        const double printed[4][4] = {{.105409, -.0745495, .0124099, .0621907},
                                      {-.0745495, .0783734, -.00844503, -.0439427},
                                      {.0124099, -.00844503, .128307, .0230245},
                                      {.0621907, -.0439427, .0230245, .109849}};
        if (res.optima.size() != 1) {
            ok = false;
            why << "#optima=" << res.optima.size() << "; ";
        } else {
            const DMatrix& sigma = res.optima[0];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (std::abs(sigma(i, j) - printed[i][j]) > 5e-5) {
                        ok = false;
                        why << "entry (" << i + 1 << "," << j + 1 << ")=" << sigma(i, j)
                            << " vs " << printed[i][j] << "; ";
                    }
            // exact agreement with S on edges and the diagonal
            DMatrix sd = to_double(s);
            MixedGraph g = cycle4();
            for (int i = 0; i < 4; ++i)
                if (std::abs(sigma(i, i) - sd(i, i)) > 1e-6) {
                    ok = false;
                    why << "diagonal (" << i + 1 << ") off; ";
                }
            for (const auto& e : g.undirected())
                if (std::abs(sigma(e.a - 1, e.b - 1) - sd(e.a - 1, e.b - 1)) > 1e-6) {
                    ok = false;
                    why << "edge (" << e.a << "," << e.b << ") off; ";
                }
        }
        if (elapsed >= 30.0) {
            ok = false;
            why << "runtime " << elapsed << " s >= 30 s; ";
        }
        detail = why.str();
        return ok;
    });

    // ------------------------------------------------------------------
    run_criterion(2, "mixed-graph golden", [&](std::string& detail) {
        auto t0 = Clock::now();
        MixedGraph g = example_mixed();
        QMatrix s = example2_cov();
        ModelRing mr = build_model_ring(g);
        ScoreSystem sys = score_equations(mr, s);
        GroebnerBasis gb = groebner(sys.polynomials);
        bool ok = true;
        std::ostringstream why;
        if (dimension(gb) != 0 || degree(gb) != 5) {
            ok = false;
            why << "dim/degree=(" << dimension(gb) << "," << degree(gb) << ") want (0,5); ";
        }
        auto sols = zero_dim_solve(gb);
        auto reals = real_solutions(sols, 1e-9);
        if (sols.size() != 5 || reals.size() != 3) {
            ok = false;
            why << sols.size() << " solutions / " << reals.size() << " real (want 5/3); ";
        }
        MLEResult res = solve_mle(g, s, false);
        const double expected_first[8] = {1.51337, 4.61101, -.483277, 1.46684,
                                          3.27093, .298576, .573665, -.41385};
        if (res.critical_points.empty()) {
            ok = false;
            why << "no critical points; ";
        } else {
            const auto& first = res.critical_points.front().parameters;
            for (int i = 0; i < 8; ++i)
                if (std::abs(first[i] - expected_first[i]) > 5e-5) {
                    ok = false;
                    why << "first real solution coord " << i << " = " << first[i] << " vs "
                        << expected_first[i] << "; ";
                }
        }
        int n_max = 0, n_saddle = 0;
        for (const auto& cp : res.critical_points) {
            if (cp.classification == Classification::LocalMax) ++n_max;
            if (cp.classification == Classification::Saddle) ++n_saddle;
        }
        if (n_max != 2 || n_saddle != 1) {
            ok = false;
            why << n_max << " local maxima / " << n_saddle << " saddles (want 2/1); ";
        }
        if (!res.max_log_lik || std::abs(*res.max_log_lik - 9.36624) > 5e-5) {
            ok = false;
            why << "maxLogLik=" << (res.max_log_lik ? *res.max_log_lik : -1)
                << " (want 9.36624 +- 5e-5); ";
        }
        const double row0[4] = {.68366, .0716539, 1.00282, .234375};
        if (res.optima.empty()) {
            ok = false;
            why << "no optima; ";
        } else {
            for (int j = 0; j < 4; ++j)
                if (std::abs(res.optima[0](0, j) - row0[j]) > 5e-5) {
                    ok = false;
                    why << "Sigma-hat(1," << j + 1 << ")=" << res.optima[0](0, j) << " vs "
                        << row0[j] << "; ";
                }
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
        if (elapsed >= 60.0) {
            ok = false;
            why << "runtime " << elapsed << " s >= 60 s; ";
        }
        detail = why.str();
        return ok;
    });

    // ------------------------------------------------------------------
    run_criterion(3, "score-equation structure", [&](std::string& detail) {
        // the reference data matrix, one observation per row
        QMatrix data(4, 4, Rational(0));
        const int rows[4][4] = {{3, 5, 9, 5}, {1, 6, 1, 5}, {2, 9, 6, 6}, {2, 5, 0, 4}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) data(i, j) = Rational(rows[i][j]);
        QMatrix s = sample_covariance(data, DataOrientation::RowsAreSamples);
        ModelRing mr = build_model_ring(cycle4());
        ScoreSystem sys = score_equations(mr, s);
        bool ok = true;
        std::ostringstream why;
        int n_lin = 0, n_quad = 0;
        for (const auto& p : sys.polynomials) {
            if (p.total_degree() == 1) ++n_lin;
            if (p.total_degree() == 2) ++n_quad;
        }
        if (sys.polynomials.size() != 14 || n_lin != 4 || n_quad != 10) {
            ok = false;
            why << sys.polynomials.size() << " generators (" << n_lin << " linear, " << n_quad
                << " quadratic), want 14 = 4 + 10; ";
        }
        // the reference generator, up to integer scaling and sign
        RingPtr ring = mr.ring;
        auto var = [&](const VariableId& v) { return Polynomial::variable(ring, v); };
        Polynomial target = Rational(1312002) * var(VariableId::k(3, 4)) * var(VariableId::k(3, 4)) -
                            Rational(387081) * var(VariableId::k(1, 2)) +
                            Rational(109860) * var(VariableId::k(1, 4)) +
                            Rational(1972025) * var(VariableId::k(2, 3)) -
                            Rational(898518) * var(VariableId::k(3, 4)) -
                            Polynomial::constant(ring, 291556);
        bool found = false;
        for (const auto& p : sys.polynomials)
            if (proportional_integer_polys(p, target)) found = true;
        if (!found) {
            ok = false;
            why << "reference generator not present in either orientation's normal form; ";
            // report the other orientation's ideal for the calibration record
            QMatrix s2 = sample_covariance(data, DataOrientation::ColsAreSamples);
            ScoreSystem sys2 = score_equations(mr, s2);
            bool found2 = false;
            for (const auto& p : sys2.polynomials)
                if (proportional_integer_polys(p, target)) found2 = true;
            why << "columns-as-samples " << (found2 ? "matches" : "also fails") << "; ";
        }
        detail = why.str();
        return ok;
    });

    // ------------------------------------------------------------------
    run_criterion(4, "positive-dimension behavior", [&](std::string& detail) {
        bool ok = true;
        std::ostringstream why;
        try {
            ml_degree(multiedge(), 7);
            ok = false;
            why << "ml_degree returned instead of raising; ";
        } catch (const positive_dimension_error& e) {
            if (e.dim != 1 || e.deg != 2) {
                ok = false;
                why << "dim/degree=(" << e.dim << "," << e.deg << ") want (1,2); ";
            }
        }
        if (!cli_bin.empty()) {
            CmdResult r = run_cmd(cli_bin + " ml-degree --graph " + data_dir +
                                  "/multiedge.json --seed 7");
            if (r.exit_code != 2) {
                ok = false;
                why << "CLI exit code " << r.exit_code << " (want 2); ";
            }
            auto j = nlohmann::json::parse(r.out, nullptr, false);
            if (j.is_discarded() || j["error"] != "positive-dimensional" || j["dim"] != 1 ||
                j["degree"] != 2) {
                ok = false;
                why << "CLI error JSON mismatch: " << r.out << "; ";
            }
        } else {
            why << "(CLI binary not supplied: library check only) ";
        }
        detail = why.str();
        return ok;
    });

    // ------------------------------------------------------------------
    run_criterion(5, "partition", [&](std::string& detail) {
        bool ok = true;
        std::ostringstream why;
        Partition p = partition_lmg(example_mixed());
        if (p.u != std::vector<int>{1, 2} || p.w != std::vector<int>{3, 4}) {
            ok = false;
            why << "partition mismatch; ";
        }
        MixedGraph bad({1, 2, 3, 4}, {{3, 4}}, {{3, 1}, {4, 2}}, {{1, 2}});
        try {
            partition_lmg(bad);
            ok = false;
            why << "permuted variant did not raise; ";
        } catch (const ordering_error&) {
            // expected
        } catch (const std::exception& e) {
            ok = false;
            why << "wrong error type: " << e.what() << "; ";
        }
        detail = why.str();
        return ok;
    });

    // ------------------------------------------------------------------
    run_criterion(6, "property suites", [&](std::string& detail) {
        bool ok = true;
        std::ostringstream why;
        std::mt19937_64 rng(0xacce5);

        // (a) + (b): matrix completion and PD uniqueness on random
        // undirected graphs with m <= 5
        int instances = 0;
        std::uniform_int_distribution<int> msize(2, 5);
        std::uniform_int_distribution<int> coin(0, 1);
        while (instances < 20) {
            int m = msize(rng);
            std::vector<UPair> edges;
            for (int a = 1; a <= m; ++a)
                for (int b = a + 1; b <= m; ++b)
                    if (coin(rng)) edges.push_back({a, b});
            std::vector<int> verts;
            for (int v = 1; v <= m; ++v) verts.push_back(v);
            MixedGraph g(verts, edges, {}, {});
            QMatrix s = random_generic_covariance(static_cast<std::size_t>(m), rng());
            MLEResult res = solve_mle(g, s, false);
            ++instances;
            int n_pd = 0;
            for (const auto& cp : res.critical_points) n_pd += cp.positive_definite;
            if (n_pd != 1) {
                ok = false;
                why << "(b) instance " << instances << ": " << n_pd << " PD points; ";
                continue;
            }
            if (res.optima.size() != 1) {
                ok = false;
                why << "(a) instance " << instances << ": " << res.optima.size() << " optima; ";
                continue;
            }
            const DMatrix& sigma = res.optima[0];
            DMatrix sd = to_double(s);
            for (int i = 0; i < m; ++i)
                if (std::abs(sigma(i, i) - sd(i, i)) > 1e-6 * std::max(1.0, std::abs(sd(i, i)))) {
                    ok = false;
                    why << "(a) diagonal mismatch; ";
                }
            for (const auto& e : g.undirected())
                if (std::abs(sigma(e.a - 1, e.b - 1) - sd(e.a - 1, e.b - 1)) >
                    1e-6 * std::max(1.0, std::abs(sd(e.a - 1, e.b - 1)))) {
                    ok = false;
                    why << "(a) edge mismatch; ";
                }
            auto chol = cholesky(sigma);
            if (!chol) {
                ok = false;
                why << "(a) optimum not PD; ";
                continue;
            }
            double scale = 0.0;
            for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(sigma(i, i)));
            for (int j = 0; j < m; ++j) {
                std::vector<double> e(static_cast<std::size_t>(m), 0.0);
                e[static_cast<std::size_t>(j)] = 1.0;
                auto col = chol_solve(*chol, std::move(e));
                for (int i = 0; i < m; ++i) {
                    bool is_edge = i == j || g.undirected().count(UPair(i + 1, j + 1)) > 0;
                    if (!is_edge && std::abs(col[static_cast<std::size_t>(i)]) > 1e-6 / scale *
                                        std::max(scale, 1.0)) {
                        ok = false;
                        why << "(a) inverse non-edge entry " << col[static_cast<std::size_t>(i)]
                            << "; ";
                    }
                }
            }
        }

        // (c) gradient versus finite differences at random PD points
        {
            std::uniform_real_distribution<double> small(-0.25, 0.25), diag(2.0, 4.0),
                lam(-0.8, 0.8);
            for (const MixedGraph& g : {cycle4(), example_mixed()}) {
                ModelRing mr = build_model_ring(g);
                QMatrix s = random_generic_covariance(g.order(), 2027);
                ScoreSystem sys = score_equations(mr, s);
                auto [grad, hess] = gradient_and_hessian(sys);
                (void)hess;
                DMatrix sd = to_double(s);
                auto loglik_at = [&](const std::vector<std::complex<double>>& pt) {
                    CMatrix sc = evaluate(sys.sigma, pt);
                    return log_lik(sd, real_part(sc));
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
                        continue;
                    }
                    ++points;
                    for (std::size_t v = 0; v < sys.vars.size(); ++v) {
                        auto hi = pt, lo = pt;
                        hi[v] += h;
                        lo[v] -= h;
                        double fd = (loglik_at(hi) - loglik_at(lo)) / (2 * h);
                        double exact = grad(0, v).evaluate(pt).real();
                        if (std::abs(fd - exact) >
                            1e-5 * std::max({std::abs(exact), std::abs(fd), 1.0})) {
                            ok = false;
                            why << "(c) gradient mismatch " << fd << " vs " << exact << "; ";
                        }
                    }
                }
            }
        }

        // (d) solver count equals ideal degree on random quadric systems
        {
            std::uniform_int_distribution<int> coeff(-9, 9);
            int systems = 0, bivariate = 0;
            while (systems < 30) {
                std::size_t nv = 2 + (systems % 2);
                std::vector<VariableId> vars;
                for (std::size_t v = 0; v < nv; ++v)
                    vars.push_back(VariableId::aux(static_cast<int>(v) + 1));
                auto ring = make_ring(vars);
                std::vector<Polynomial> sys;
                for (std::size_t q = 0; q < nv; ++q) {
                    std::vector<Term> terms;
                    for (std::size_t a = 0; a < nv; ++a)
                        for (std::size_t b = a; b < nv; ++b) {
                            Monomial mo(nv);
                            mo.e[a] += 1;
                            mo.e[b] += 1;
                            terms.push_back({std::move(mo), Rational(coeff(rng))});
                        }
                    for (std::size_t a = 0; a < nv; ++a) {
                        Monomial mo(nv);
                        mo.e[a] = 1;
                        terms.push_back({std::move(mo), Rational(coeff(rng))});
                    }
                    terms.push_back({Monomial(nv), Rational(coeff(rng))});
                    sys.push_back(Polynomial::from_terms(ring, std::move(terms)));
                }
                GroebnerBasis gb = groebner(sys);
                if (dimension(gb) != 0) continue;
                ++systems;
                long deg = degree(gb);
                auto sols = zero_dim_solve(gb);
                if (static_cast<long>(sols.size()) != deg) {
                    ok = false;
                    why << "(d) " << sols.size() << " solutions vs degree " << deg << "; ";
                }
                if (nv == 2 && bivariate < 10) {
                    ++bivariate;
                    // resultant oracle: eliminate the first variable
                    std::uint32_t df = sys[0].degree_in(vars[0]), dg = sys[1].degree_in(vars[0]);
                    if (df > 0 && dg > 0) {
                        PolyMatrix syl(df + dg, df + dg, Polynomial::zero(ring));
                        for (std::uint32_t row = 0; row < dg; ++row)
                            for (std::uint32_t k = 0; k <= df; ++k)
                                syl(row, row + (df - k)) = sys[0].coeff_of_power(vars[0], k);
                        for (std::uint32_t row = 0; row < df; ++row)
                            for (std::uint32_t k = 0; k <= dg; ++k)
                                syl(dg + row, row + (dg - k)) = sys[1].coeff_of_power(vars[0], k);
                        Polynomial res = det(syl);
                        if (!res.is_zero() && res.degree_in(vars[1]) > 0) {
                            Polynomial dres = res.derivative(vars[1]);
                            Polynomial gg = poly_gcd(res, dres);
                            long oracle = static_cast<long>(res.degree_in(vars[1])) -
                                          static_cast<long>(gg.degree_in(vars[1]));
                            // distinct roots of the eliminant = distinct
                            // projections of the solution set
                            std::vector<std::complex<double>> proj;
                            for (const auto& s : sols) {
                                bool seen = false;
                                for (const auto& p : proj)
                                    if (std::abs(p - s.coords[1]) < 1e-6) seen = true;
                                if (!seen) proj.push_back(s.coords[1]);
                            }
                            if (oracle != static_cast<long>(proj.size())) {
                                ok = false;
                                why << "(d) resultant oracle " << oracle << " vs "
                                    << proj.size() << " projections; ";
                            }
                        }
                    }
                }
            }
        }

        // (e) seeded ml-degree determinism and cross-seed agreement
        {
            std::vector<MixedGraph> graphs{cycle4(), example_mixed(),
                                           MixedGraph({1, 2}, {{1, 2}}, {}, {}),
                                           MixedGraph({1, 2, 3}, {}, {{1, 2}, {2, 3}}, {})};
            for (const auto& g : graphs) {
                long a1 = ml_degree(g, 7), a2 = ml_degree(g, 7), b = ml_degree(g, 4242);
                if (a1 != a2) {
                    ok = false;
                    why << "(e) same seed differs; ";
                }
                if (a1 != b) {
                    ok = false;
                    why << "(e) seeds disagree: " << a1 << " vs " << b << "; ";
                }
            }
        }

        detail = why.str();
        return ok;
    });

    double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
    std::cout << (criteria_failed == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (total "
              << total << " s)\n";
    if (total >= 600.0) {
        std::cout << "FAIL  suite runtime " << total << " s exceeded the 10 minute budget\n";
        return 1;
    }
    return criteria_failed == 0 ? 0 : 1;
}
