#pragma once

#include <utility>
#include <vector>

#include "gmle/graph.hpp"
#include "gmle/matrix.hpp"

namespace gmle {

// Parameter catalog of a loopless mixed graph model: the variable families
// k (undirected block), l (directed edges), p (bidirected block), the ring
// they live in, and the structural matrices K (U x U), Lambda (V x V) and
// Psi (W x W). Vertices are internally renumbered 1..m in declared order;
// the ring lists each symmetric family diagonal-first, then the off-diagonal
// edge variables in lexicographic order.
struct ModelRing {
    MixedGraph graph;
    Partition partition;          // original labels
    std::vector<int> internal_u;  // internal numbers 1..m, U block first
    std::vector<int> internal_w;
    RingPtr ring;
    std::vector<VariableId> k_vars, l_vars, p_vars;
    PolyMatrix K, Lambda, Psi;  // entries: parameter variables or zero

    std::size_t order() const { return graph.order(); }
    std::size_t n_params() const { return k_vars.size() + l_vars.size() + p_vars.size(); }
};

inline ModelRing build_model_ring(const MixedGraph& g) {
    Partition part = partition_lmg(g);
    std::size_t m = g.order();
    auto internal = [&](int label) { return static_cast<int>(g.position(label)) + 1; };

    ModelRing r{g, part, {}, {}, nullptr, {}, {}, {}, {}, {}, {}};
    for (int v : part.u) r.internal_u.push_back(internal(v));
    for (int v : part.w) r.internal_w.push_back(internal(v));

    std::vector<std::pair<int, int>> undirected_internal, directed_internal, bidirected_internal;
    for (const auto& e : g.undirected()) {
        int a = internal(e.a), b = internal(e.b);
        undirected_internal.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (const auto& e : g.directed()) directed_internal.emplace_back(internal(e.a), internal(e.b));
    for (const auto& e : g.bidirected()) {
        int a = internal(e.a), b = internal(e.b);
        bidirected_internal.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(undirected_internal.begin(), undirected_internal.end());
    std::sort(directed_internal.begin(), directed_internal.end());
    std::sort(bidirected_internal.begin(), bidirected_internal.end());

    for (int i : r.internal_u) r.k_vars.push_back(VariableId::k(i, i));
    for (auto [i, j] : undirected_internal) r.k_vars.push_back(VariableId::k(i, j));
    for (auto [i, j] : directed_internal) r.l_vars.push_back(VariableId::l(i, j));
    for (int i : r.internal_w) r.p_vars.push_back(VariableId::p(i, i));
    for (auto [i, j] : bidirected_internal) r.p_vars.push_back(VariableId::p(i, j));

    std::vector<VariableId> all;
    all.reserve(r.n_params());
    all.insert(all.end(), r.k_vars.begin(), r.k_vars.end());
    all.insert(all.end(), r.l_vars.begin(), r.l_vars.end());
    all.insert(all.end(), r.p_vars.begin(), r.p_vars.end());
    r.ring = make_ring(std::move(all));

    std::size_t nu = r.internal_u.size(), nw = r.internal_w.size();
    r.K = PolyMatrix(nu, nu, Polynomial::zero(r.ring));
    for (std::size_t a = 0; a < nu; ++a)
        r.K(a, a) = Polynomial::variable(r.ring, VariableId::k(r.internal_u[a], r.internal_u[a]));
    for (auto [i, j] : undirected_internal) {
        // U vertices occupy the first positions of the internal order
        std::size_t a = static_cast<std::size_t>(i) - 1, b = static_cast<std::size_t>(j) - 1;
        r.K(a, b) = r.K(b, a) = Polynomial::variable(r.ring, VariableId::k(i, j));
    }

    r.Lambda = PolyMatrix(m, m, Polynomial::zero(r.ring));
    for (auto [i, j] : directed_internal)
        r.Lambda(static_cast<std::size_t>(i) - 1, static_cast<std::size_t>(j) - 1) =
            Polynomial::variable(r.ring, VariableId::l(i, j));

    r.Psi = PolyMatrix(nw, nw, Polynomial::zero(r.ring));
    for (std::size_t a = 0; a < nw; ++a)
        r.Psi(a, a) = Polynomial::variable(r.ring, VariableId::p(r.internal_w[a], r.internal_w[a]));
    for (auto [i, j] : bidirected_internal) {
        std::size_t a = static_cast<std::size_t>(i) - 1 - nu, b = static_cast<std::size_t>(j) - 1 - nu;
        r.Psi(a, b) = r.Psi(b, a) = Polynomial::variable(r.ring, VariableId::p(i, j));
    }
    return r;
}

// Sigma = (I - Lambda)^{-T} [K^{-1} 0; 0 Psi] (I - Lambda)^{-1}. An empty U
// or W block is simply omitted from the middle matrix.
inline RFMatrix covariance_parametrization(const ModelRing& r) {
    std::size_t m = r.order();
    std::size_t nu = r.internal_u.size();
    RFMatrix middle(m, m, RationalFunction::zero(r.ring));
    if (nu > 0) {
        RFMatrix kinv = inverse(rf_from_poly(r.K));
        for (std::size_t a = 0; a < nu; ++a)
            for (std::size_t b = 0; b < nu; ++b) middle(a, b) = kinv(a, b);
    }
    for (std::size_t a = 0; a < r.internal_w.size(); ++a)
        for (std::size_t b = 0; b < r.internal_w.size(); ++b)
            middle(nu + a, nu + b) = RationalFunction(r.Psi(a, b));

    bool lambda_zero = true;
    for (std::size_t i = 0; i < m && lambda_zero; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!r.Lambda(i, j).is_zero()) {
                lambda_zero = false;
                break;
            }
    if (lambda_zero) return middle;

    RFMatrix i_minus_l = rf_identity(r.ring, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!r.Lambda(i, j).is_zero())
                i_minus_l(i, j) = i_minus_l(i, j) - RationalFunction(r.Lambda(i, j));
    RFMatrix inv = inverse(i_minus_l);
    return rf_matmul(rf_matmul(inv.transpose(), middle), inv);
}

enum class DataOrientation { RowsAreSamples, ColsAreSamples };

// Sample covariance with the likelihood-friendly divisor n:
// S = (1/n) sum (x_i - mean)(x_i - mean)^T, exact over the rationals.
inline QMatrix sample_covariance(const QMatrix& data,
                                 DataOrientation orientation = DataOrientation::RowsAreSamples) {
    QMatrix x = orientation == DataOrientation::RowsAreSamples ? data : data.transpose();
    std::size_t n = x.rows(), m = x.cols();
    if (n == 0 || m == 0) throw input_error("sample_covariance: empty data matrix");
    std::vector<Rational> mean(m, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) mean[j] += x(i, j);
    for (auto& v : mean) v /= Rational(static_cast<long>(n));
    QMatrix s(m, m, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) {
            Rational da = x(i, a) - mean[a];
            if (da == 0) continue;
            for (std::size_t b = a; b < m; ++b) s(a, b) += da * (x(i, b) - mean[b]);
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            s(a, b) /= Rational(static_cast<long>(n));
            s(b, a) = s(a, b);
        }
    return s;
}

}  // namespace gmle
