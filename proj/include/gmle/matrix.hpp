#pragma once

#include <complex>
#include <vector>

#include "gmle/errors.hpp"
#include "gmle/rational_function.hpp"

namespace gmle {

template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, T init = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, rows_ * cols_ ? data_[0] : T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using RFMatrix = Matrix<RationalFunction>;
using PolyMatrix = Matrix<Polynomial>;
using QMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;
using CMatrix = Matrix<std::complex<double>>;

template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, T zero = T{}) {
    if (a.cols() != b.rows()) throw dimension_mismatch("matmul: inner dimensions differ");
    Matrix<T> r(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

inline RFMatrix rf_matmul(const RFMatrix& a, const RFMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("matmul: inner dimensions differ");
    if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0)
        throw dimension_mismatch("matmul: empty operand");
    RFMatrix r(a.rows(), b.cols(), RationalFunction::zero(a(0, 0).ring()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(k, j).is_zero()) continue;
                r(i, j) += a(i, k) * b(k, j);
            }
        }
    return r;
}

inline RFMatrix rf_identity(const RingPtr& ring, std::size_t n) {
    RFMatrix r(n, n, RationalFunction::zero(ring));
    for (std::size_t i = 0; i < n; ++i) r(i, i) = RationalFunction::constant(ring, 1);
    return r;
}

inline RFMatrix rf_from_poly(const PolyMatrix& m) {
    if (m.rows() == 0) return RFMatrix();
    RFMatrix r(m.rows(), m.cols(), RationalFunction::zero(m(0, 0).ring()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RationalFunction(m(i, j));
    return r;
}

template <typename T>
T trace(const Matrix<T>& m) {
    if (!m.is_square()) throw dimension_mismatch("trace: matrix not square");
    if (m.rows() == 0) throw dimension_mismatch("trace: empty matrix");
    T acc = m(0, 0);
    for (std::size_t i = 1; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

namespace detail {

// Cofactor expansion along the first row; adequate for the small orders
// used throughout.
template <typename T>
T det_cofactor(const Matrix<T>& m, const T& zero) {
    std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    T acc = zero;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<T> minor(n - 1, n - 1, zero);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        T term = m(0, j) * det_cofactor(minor, zero);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

}  // namespace detail

// Fraction-free Bareiss determinant over the polynomial ring.
inline Polynomial poly_det_bareiss(PolyMatrix m) {
    std::size_t n = m.rows();
    if (n == 0 || !m.is_square()) throw dimension_mismatch("det: matrix not square");
    RingPtr ring = m(0, 0).ring();
    Polynomial prev = Polynomial::constant(ring, 1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < n && m(pivot, k).is_zero()) ++pivot;
            if (pivot == n) return Polynomial::zero(ring);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = divide_exact(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    Polynomial d = m(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

inline Polynomial det(const PolyMatrix& m) {
    if (!m.is_square() || m.rows() == 0) throw dimension_mismatch("det: matrix not square");
    if (m.rows() <= 4) return detail::det_cofactor(m, Polynomial::zero(m(0, 0).ring()));
    return poly_det_bareiss(m);
}

inline RationalFunction det(const RFMatrix& m) {
    if (!m.is_square() || m.rows() == 0) throw dimension_mismatch("det: matrix not square");
    std::size_t n = m.rows();
    RingPtr ring = m(0, 0).ring();
    if (n <= 4) return detail::det_cofactor(m, RationalFunction::zero(ring));
    // clear denominators row by row, then run Bareiss over the polynomial ring
    PolyMatrix cleared(n, n, Polynomial::zero(ring));
    Polynomial total = Polynomial::constant(ring, 1);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial rowden = Polynomial::constant(ring, 1);
        for (std::size_t j = 0; j < n; ++j) rowden = poly_lcm(rowden, m(i, j).den());
        for (std::size_t j = 0; j < n; ++j)
            cleared(i, j) = m(i, j).num() * divide_exact(rowden, m(i, j).den());
        total = total * rowden;
    }
    return RationalFunction(poly_det_bareiss(std::move(cleared)), std::move(total));
}

inline Rational det(const QMatrix& m) {
    if (!m.is_square() || m.rows() == 0) throw dimension_mismatch("det: matrix not square");
    QMatrix a = m;
    std::size_t n = a.rows();
    Rational d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

// Adjugate-over-determinant inverse; exact, throws on symbolic singularity.
inline RFMatrix inverse(const RFMatrix& m) {
    if (!m.is_square() || m.rows() == 0) throw dimension_mismatch("inverse: matrix not square");
    std::size_t n = m.rows();
    RingPtr ring = m(0, 0).ring();
    RationalFunction d = det(m);
    if (d.is_zero()) throw singular_error("inverse: symbolically singular matrix");
    if (n == 1) {
        RFMatrix r(1, 1, RationalFunction::constant(ring, 1) / m(0, 0));
        return r;
    }
    RFMatrix adj(n, n, RationalFunction::zero(ring));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            RFMatrix minor(n - 1, n - 1, RationalFunction::zero(ring));
            std::size_t rr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            RationalFunction cof = det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj(j, i) = cof / d;  // transpose of the cofactor matrix
        }
    }
    return adj;
}

// Row vector of partial derivatives of f in the given variable order.
inline RFMatrix jacobian_row(const RationalFunction& f, const std::vector<VariableId>& vars) {
    if (vars.empty()) throw std::invalid_argument("jacobian_row: no variables given");
    RFMatrix row(1, vars.size(), RationalFunction::zero(f.ring()));
    for (std::size_t j = 0; j < vars.size(); ++j) row(0, j) = f.derivative(vars[j]);
    return row;
}

inline QMatrix evaluate(const RFMatrix& m, const std::vector<Rational>& values) {
    QMatrix r(m.rows(), m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(values);
    return r;
}

inline CMatrix evaluate(const RFMatrix& m, const std::vector<std::complex<double>>& values) {
    CMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(values);
    return r;
}

inline DMatrix to_double(const QMatrix& m) {
    DMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

inline DMatrix real_part(const CMatrix& m) {
    DMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
    return r;
}

inline bool is_symmetric(const QMatrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

inline bool is_symmetric(const DMatrix& m, double tol) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

}  // namespace gmle
