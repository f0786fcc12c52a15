#include <doctest.h>

#include <random>

#include "gmle/numeric.hpp"

using namespace gmle;

TEST_CASE("jacobi eigenvalues") {
    DMatrix s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 1;
    auto ev = symmetric_eigenvalues(s);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
}

TEST_CASE("jacobi eigenvalue sums match the trace") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + trial % 5;
        DMatrix a(n, n);
        double tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                a(i, j) = a(j, i) = unif(rng);
                if (i == j) tr += a(i, i);
            }
        auto ev = symmetric_eigenvalues(a);
        double sum = 0;
        for (double e : ev) sum += e;
        CHECK(sum == doctest::Approx(tr).epsilon(1e-10));
    }
}

TEST_CASE("cholesky") {
    CHECK(cholesky(dmat_identity(3)).has_value());
    DMatrix npd(2, 2);
    npd(0, 0) = 1;
    npd(0, 1) = 2;
    npd(1, 0) = 2;
    npd(1, 1) = 1;
    CHECK(!cholesky(npd).has_value());
    // random SPD: A = B B^T + I; solve and log det agree with direct checks
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1, 1);
    DMatrix b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) b(i, j) = unif(rng);
    DMatrix a(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) a(i, j) += b(i, k) * b(j, k);
            if (i == j) a(i, j) += 1.0;
        }
    auto l = cholesky(a);
    REQUIRE(l.has_value());
    std::vector<double> rhs{1.0, -2.0, 0.5};
    auto x = chol_solve(*l, rhs);
    for (std::size_t i = 0; i < 3; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < 3; ++j) acc += a(i, j) * x[j];
        CHECK(acc == doctest::Approx(rhs[i]).epsilon(1e-10));
    }
}

TEST_CASE("complex eigenvalues of a companion matrix") {
    CMatrix comp(2, 2, Complex(0, 0));
    comp(0, 1) = Complex(2, 0);
    comp(1, 0) = Complex(1, 0);
    auto ev = complex_eigenvalues(comp);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(ev[0].real() == doctest::Approx(-1.4142135623730951).epsilon(1e-12));
    CHECK(ev[1].real() == doctest::Approx(1.4142135623730951).epsilon(1e-12));
    CHECK(std::abs(ev[0].imag()) < 1e-12);
}

TEST_CASE("complex eigenvalues come in conjugate pairs for real matrices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-2, 2);
    CMatrix a(6, 6);
    double tr = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            a(i, j) = Complex(unif(rng), 0);
            if (i == j) tr += a(i, j).real();
        }
    auto ev = complex_eigenvalues(a);
    Complex sum(0, 0);
    for (auto e : ev) sum += e;
    CHECK(sum.real() == doctest::Approx(tr).epsilon(1e-9));
    CHECK(std::abs(sum.imag()) < 1e-9);
    for (const auto& e : ev) {
        if (std::abs(e.imag()) < 1e-9) continue;
        bool paired = false;
        for (const auto& f : ev)
            if (std::abs(f - std::conj(e)) < 1e-7 * (1 + std::abs(e))) paired = true;
        CHECK(paired);
    }
}

TEST_CASE("inverse iteration recovers eigenvectors") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unif(-2, 2);
    CMatrix a(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) a(i, j) = Complex(unif(rng), 0);
    for (const auto& lam : complex_eigenvalues(a)) {
        auto v = inverse_iteration(a, lam);
        double res = 0;
        for (int i = 0; i < 5; ++i) {
            Complex acc(0, 0);
            for (int j = 0; j < 5; ++j) acc += a(i, j) * v[j];
            acc -= lam * v[i];
            res = std::max(res, std::abs(acc));
        }
        CHECK(res < 1e-8);
    }
}

TEST_CASE("least squares solves consistent systems") {
    CMatrix j(3, 2, Complex(0, 0));
    j(0, 0) = Complex(1, 0);
    j(1, 1) = Complex(1, 0);
    j(2, 0) = Complex(1, 0);
    j(2, 1) = Complex(1, 0);
    std::vector<Complex> r{Complex(1, 0), Complex(2, 0), Complex(3, 0)};
    auto x = least_squares_solve(j, r);
    REQUIRE(x.has_value());
    CHECK(std::abs((*x)[0] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs((*x)[1] - Complex(2, 0)) < 1e-12);
}
