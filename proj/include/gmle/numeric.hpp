#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gmle/errors.hpp"
#include "gmle/matrix.hpp"

namespace gmle {

using Complex = std::complex<double>;

inline DMatrix dmat_identity(std::size_t n) {
    DMatrix r(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = 1.0;
    return r;
}

// Lower-triangular Cholesky factor of a symmetric matrix, or nullopt when the
// matrix is not (numerically) positive definite.
inline std::optional<DMatrix> cholesky(const DMatrix& a) {
    if (!a.is_square()) throw dimension_mismatch("cholesky: matrix not square");
    std::size_t n = a.rows();
    DMatrix l(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) return std::nullopt;
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    return l;
}

inline std::vector<double> chol_solve(const DMatrix& l, std::vector<double> b) {
    std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
        b[i] /= l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
        b[i] /= l(i, i);
    }
    return b;
}

inline double log_det_from_cholesky(const DMatrix& l) {
    double s = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> symmetric_eigenvalues(DMatrix a) {
    if (!a.is_square()) throw dimension_mismatch("symmetric_eigenvalues: matrix not square");
    std::size_t n = a.rows();
    if (n == 0) return {};
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
        if (off <= 1e-30 * std::max(scale, 1e-300)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

namespace detail {

inline void hessenberg_reduce(CMatrix& h) {
    std::size_t n = h.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += std::norm(h(i, k));
        norm = std::sqrt(norm);
        if (norm < 1e-300) continue;
        Complex alpha = h(k + 1, k);
        double aa = std::abs(alpha);
        Complex phase = aa > 1e-300 ? alpha / aa : Complex(1.0, 0.0);
        Complex beta = -phase * norm;
        std::vector<Complex> v(n, Complex(0, 0));
        v[k + 1] = h(k + 1, k) - beta;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 < 1e-300) continue;
        // H = (I - 2 v v^H / v^H v) H (I - 2 v v^H / v^H v)
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot(0, 0);
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot(0, 0);
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(0, 0);
    }
}

inline Complex wilkinson_shift(const Complex& a, const Complex& b, const Complex& c,
                               const Complex& d) {
    // eigenvalue of [[a,b],[c,d]] closest to d
    Complex tr = a + d;
    Complex det = a * d - b * c;
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex l1 = (tr + disc) * 0.5;
    Complex l2 = (tr - disc) * 0.5;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace detail

// All eigenvalues of a general complex matrix: Hessenberg reduction followed
// by shifted QR with Givens rotations, deflation tolerance 1e-12.
inline std::vector<Complex> complex_eigenvalues(CMatrix h) {
    if (!h.is_square()) throw dimension_mismatch("complex_eigenvalues: matrix not square");
    std::size_t n = h.rows();
    if (n == 0) return {};
    if (n == 1) return {h(0, 0)};
    detail::hessenberg_reduce(h);
    std::vector<Complex> eig;
    eig.reserve(n);
    std::size_t m = n;  // active trailing block is rows/cols [0, m)
    int iter_since_deflate = 0;
    const int max_iter = 120;
    while (m > 0) {
        // deflate small subdiagonals
        for (std::size_t i = 0; i + 1 < m; ++i) {
            double s = std::abs(h(i, i)) + std::abs(h(i + 1, i + 1));
            if (s == 0.0) s = 1.0;
            if (std::abs(h(i + 1, i)) <= 1e-12 * s) h(i + 1, i) = Complex(0, 0);
        }
        if (m == 1 || h(m - 1, m - 2) == Complex(0, 0)) {
            eig.push_back(h(m - 1, m - 1));
            --m;
            iter_since_deflate = 0;
            continue;
        }
        // trailing irreducible block [l, m)
        std::size_t l = m - 1;
        while (l > 0 && h(l, l - 1) != Complex(0, 0)) --l;
        if (++iter_since_deflate > max_iter)
            throw resource_error("complex_eigenvalues: QR iteration exceeded its cap");
        Complex mu = detail::wilkinson_shift(h(m - 2, m - 2), h(m - 2, m - 1), h(m - 1, m - 2),
                                             h(m - 1, m - 1));
        if (iter_since_deflate % 20 == 0) {
            // exceptional shift to break rare cycling
            mu = h(m - 1, m - 1) + Complex(std::abs(h(m - 1, m - 2)), 0.0);
        }
        // explicit shifted QR step on the block via Givens rotations
        std::size_t k = m - l;
        std::vector<std::array<Complex, 2>> rot(k - 1);
        for (std::size_t i = l; i < m; ++i) h(i, i) -= mu;
        for (std::size_t i = l; i + 1 < m; ++i) {
            Complex a = h(i, i), b = h(i + 1, i);
            double t = std::sqrt(std::norm(a) + std::norm(b));
            Complex c, s;
            if (t < 1e-300) {
                c = Complex(1, 0);
                s = Complex(0, 0);
            } else {
                c = std::conj(a) / t;
                s = std::conj(b) / t;
            }
            rot[i - l] = {c, s};
            for (std::size_t j = i; j < m; ++j) {
                Complex x = h(i, j), y = h(i + 1, j);
                h(i, j) = c * x + s * y;
                h(i + 1, j) = -std::conj(s) * x + std::conj(c) * y;
            }
        }
        for (std::size_t i = l; i + 1 < m; ++i) {
            Complex c = rot[i - l][0], s = rot[i - l][1];
            std::size_t hi = std::min(i + 2, m);
            for (std::size_t r = l; r < hi; ++r) {
                Complex x = h(r, i), y = h(r, i + 1);
                h(r, i) = x * std::conj(c) + y * std::conj(s);
                h(r, i + 1) = -x * s + y * c;
            }
        }
        for (std::size_t i = l; i < m; ++i) h(i, i) += mu;
    }
    return eig;
}

// PLU factorization with partial pivoting for complex matrices.
struct CluFactor {
    CMatrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;
};

inline CluFactor clu_factor(CMatrix a) {
    std::size_t n = a.rows();
    CluFactor f{std::move(a), {}, false};
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > best) {
                best = std::abs(f.lu(i, k));
                piv = i;
            }
        if (best < 1e-300) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex m = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

inline std::vector<Complex> clu_solve(const CluFactor& f, const std::vector<Complex>& b) {
    std::size_t n = f.perm.size();
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
        x[i] /= f.lu(i, i);
    }
    return x;
}

// One eigenvector of a for a known (approximate) eigenvalue, by inverse iteration.
inline std::vector<Complex> inverse_iteration(const CMatrix& a, Complex lambda,
                                              std::uint64_t seed = 12345) {
    std::size_t n = a.rows();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& x : v) x = Complex(unif(rng), unif(rng));
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    for (int attempt = 0; attempt < 4; ++attempt) {
        CMatrix b = a;
        Complex shift = lambda;
        if (attempt > 0) shift += std::pow(10.0, attempt - 11) * std::max(scale, 1.0);
        for (std::size_t i = 0; i < n; ++i) b(i, i) -= shift;
        CluFactor f = clu_factor(std::move(b));
        if (f.singular) continue;
        for (int it = 0; it < 4; ++it) {
            std::vector<Complex> w = clu_solve(f, v);
            double nrm = 0.0;
            for (const auto& x : w) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
            for (auto& x : w) x /= nrm;
            v = std::move(w);
        }
        return v;
    }
    return v;
}

// Least-squares solve of an overdetermined complex system via the normal
// equations; adequate for the small Newton corrections used here.
inline std::optional<std::vector<Complex>> least_squares_solve(const CMatrix& j,
                                                               const std::vector<Complex>& r) {
    std::size_t m = j.rows(), n = j.cols();
    CMatrix a(n, n, Complex(0, 0));
    std::vector<Complex> b(n, Complex(0, 0));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t i = 0; i < m; ++i) a(p, q) += std::conj(j(i, p)) * j(i, q);
        for (std::size_t i = 0; i < m; ++i) b[p] += std::conj(j(i, p)) * r[i];
    }
    CluFactor f = clu_factor(std::move(a));
    if (f.singular) return std::nullopt;
    return clu_solve(f, b);
}

}  // namespace gmle
