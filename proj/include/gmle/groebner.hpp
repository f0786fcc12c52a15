#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gmle/polynomial.hpp"

namespace gmle {

struct BuchbergerStats {
    std::uint64_t pairs_processed = 0;
    std::uint64_t pairs_skipped = 0;
    std::uint64_t reduction_steps = 0;
    std::size_t max_basis = 0;
    std::size_t max_coeff_bits = 0;
};

struct BuchbergerOptions {
    // budget counted in reduction steps weighted by coefficient size (one
    // unit per step per 64 coefficient bits), so runaway computations with
    // huge integers fail deterministically with resource_error instead of
    // grinding for hours. The default is far above any verified workload.
    std::uint64_t max_steps = 50'000'000;
    BuchbergerStats* stats = nullptr;
};

// A reduced Groebner basis: interreduced generators, integer-primitive with
// positive leading coefficients, sorted by ascending leading monomial.
struct GroebnerBasis {
    RingPtr ring;
    std::vector<Polynomial> generators;

    bool is_unit_ideal() const {
        return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
    }
    bool is_zero_ideal() const { return generators.empty(); }
};

// Exact normal form of f modulo the list of reducers (must have nonzero
// leading coefficients). Internally works with integer scalings and divides
// the accumulated factor back out, so the result is the unique reduced
// representative. steps, when given, is charged per reduction, weighted by
// coefficient size.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& reducers,
                              std::uint64_t* steps = nullptr) {
    if (f.is_zero() || reducers.empty()) return f;
    RingPtr ring = f.ring();
    Polynomial pending = f;
    Polynomial done(ring);
    Rational scale(1);
    int since_content = 0;
    while (!pending.is_zero()) {
        const Monomial& lm = pending.leading_monomial();
        // among matching reducers prefer few terms, then small leading coefficient
        const Polynomial* red = nullptr;
        for (const auto& g : reducers) {
            if (!mono_divides(g.leading_monomial(), lm)) continue;
            if (!red) {
                red = &g;
                continue;
            }
            if (g.terms().size() < red->terms().size() ||
                (g.terms().size() == red->terms().size() &&
                 mpz_sizeinbase(g.leading_coefficient().get_num().get_mpz_t(), 2) <
                     mpz_sizeinbase(red->leading_coefficient().get_num().get_mpz_t(), 2)))
                red = &g;
        }
        if (!red) {
            done += Polynomial::term(ring, lm, pending.leading_coefficient());
            pending.linear_combine(Rational(1), -pending.leading_coefficient(), Monomial(ring->nvars()),
                                   Polynomial::term(ring, lm, Rational(1)));
            continue;
        }
        Rational cp = pending.leading_coefficient();
        const Rational& cg = red->leading_coefficient();
        if (steps) {
            std::size_t bits = std::max(mpz_sizeinbase(cp.get_num().get_mpz_t(), 2),
                                        mpz_sizeinbase(cg.get_num().get_mpz_t(), 2));
            std::uint64_t cost = 1 + static_cast<std::uint64_t>(bits / 64) +
                                 static_cast<std::uint64_t>(pending.terms().size() / 64);
            if (*steps < cost) throw resource_error("normal_form: reduction budget exhausted");
            *steps -= cost;
        }
        Monomial q = mono_quotient(lm, red->leading_monomial());
        if (cp.get_den() == 1 && cg.get_den() == 1) {
            // integer path: pending <- (cg/d)*pending - (cp/d)*q*red
            Rational d = make_rational(int_gcd(cp.get_num(), cg.get_num()), 1);
            Rational a = cg / d, b = cp / d;
            pending.linear_combine(a, -b, q, *red);
            if (!done.is_zero()) done.scale(a);
            scale *= a;
            // shed accumulated integer content now and then
            if (++since_content >= 8) {
                since_content = 0;
                Integer c(0);
                for (const auto& t : pending.terms()) c = int_gcd(c, t.coeff.get_num());
                for (const auto& t : done.terms()) c = int_gcd(c, t.coeff.get_num());
                if (c > 1) {
                    Rational inv = make_rational(1, c);
                    pending.scale(inv);
                    done.scale(inv);
                    scale *= inv;
                }
            }
        } else {
            pending.linear_combine(Rational(1), -cp / cg, q, *red);
        }
    }
    if (scale != 1) done.scale(Rational(1) / scale);
    return done;
}

namespace detail {

// S-polynomial scaled to integer coefficients.
inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Monomial& lf = f.leading_monomial();
    const Monomial& lg = g.leading_monomial();
    Monomial l = mono_lcm(lf, lg);
    Polynomial s(f.ring());
    s.linear_combine(Rational(1), g.leading_coefficient(), mono_quotient(l, lf), f);
    s.linear_combine(Rational(1), -f.leading_coefficient(), mono_quotient(l, lg), g);
    return s;
}

inline Polynomial normalize_generator(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p.primitive_part();
}

}  // namespace detail

// Buchberger's algorithm with the coprime-lcm and chain criteria and
// normal (smallest-lcm) pair selection, followed by minimalization and
// full interreduction. The result is the unique reduced basis of the ideal
// up to the integer-primitive scaling of each generator.
inline GroebnerBasis groebner(const std::vector<Polynomial>& input,
                              BuchbergerOptions opts = {}) {
    if (input.empty()) throw std::invalid_argument("groebner: empty generator list");
    RingPtr ring = input[0].ring();
    std::uint64_t steps = opts.max_steps;

    std::vector<Polynomial> basis;
    for (const auto& p : input) {
        Polynomial::check_same_ring(p, input[0]);
        if (p.is_zero()) continue;
        if (p.is_constant()) return GroebnerBasis{ring, {Polynomial::constant(ring, 1)}};
        basis.push_back(detail::normalize_generator(p));
    }
    if (basis.empty()) return GroebnerBasis{ring, {}};

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    auto lcm_less = [&](const Pair& a, const Pair& b) {
        int c = ring->compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> pending_keys;
    auto push_pair = [&](std::size_t i, std::size_t j) {
        Pair p{i, j, mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())};
        pending.push_back(std::move(p));
        pending_keys.insert({i, j});
    };
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), lcm_less);
        Pair pr = *it;
        *it = pending.back();
        pending.pop_back();
        pending_keys.erase({pr.i, pr.j});

        const Monomial& li = basis[pr.i].leading_monomial();
        const Monomial& lj = basis[pr.j].leading_monomial();
        if (mono_coprime(li, lj)) {
            if (opts.stats) ++opts.stats->pairs_skipped;
            continue;
        }
        bool chain_skip = false;
        for (std::size_t k = 0; k < basis.size() && !chain_skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(basis[k].leading_monomial(), pr.lcm)) continue;
            auto key_ik = std::minmax(pr.i, k);
            auto key_jk = std::minmax(pr.j, k);
            if (!pending_keys.count({key_ik.first, key_ik.second}) &&
                !pending_keys.count({key_jk.first, key_jk.second}))
                chain_skip = true;
        }
        if (chain_skip) {
            if (opts.stats) ++opts.stats->pairs_skipped;
            continue;
        }

        std::uint64_t steps_before = steps;
        Polynomial s = detail::s_polynomial(basis[pr.i], basis[pr.j]);
        Polynomial r = normal_form(s, basis, &steps);
        if (opts.stats) {
            ++opts.stats->pairs_processed;
            opts.stats->reduction_steps += steps_before - steps;
            opts.stats->max_basis = std::max(opts.stats->max_basis, basis.size());
            if (!r.is_zero())
                for (const auto& t : r.terms())
                    opts.stats->max_coeff_bits =
                        std::max(opts.stats->max_coeff_bits,
                                 mpz_sizeinbase(t.coeff.get_num().get_mpz_t(), 2));
        }
        if (r.is_zero()) continue;
        if (r.is_constant()) return GroebnerBasis{ring, {Polynomial::constant(ring, 1)}};
        basis.push_back(detail::normalize_generator(r));
        std::size_t n = basis.size() - 1;
        for (std::size_t i = 0; i < n; ++i) push_pair(i, n);
    }

    // minimalize: drop generators whose leading monomial is a multiple of another's
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& li = basis[i].leading_monomial();
            const Monomial& lj = basis[j].leading_monomial();
            if (mono_divides(lj, li) && (!(li == lj) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // interreduce tails
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = normal_form(minimal[i], others, &steps);
        if (!r.is_zero()) reduced.push_back(detail::normalize_generator(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return GroebnerBasis{ring, std::move(reduced)};
}

// Krull dimension of the quotient ring, computed from the leading-term
// ideal as the size of a maximal independent variable set. The unit ideal
// (empty variety) reports -1.
inline int dimension(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return -1;
    std::size_t n = gb.ring->nvars();
    if (gb.is_zero_ideal()) return static_cast<int>(n);
    std::vector<std::uint64_t> supports;
    for (const auto& g : gb.generators) {
        std::uint64_t mask = 0;
        const Monomial& lm = g.leading_monomial();
        for (std::size_t v = 0; v < n; ++v)
            if (lm.e[v] > 0) mask |= (std::uint64_t{1} << v);
        supports.push_back(mask);
    }
    int best = 0;
    // DFS over subsets: a set is independent iff it contains no full support
    auto rec = [&](auto&& self, std::size_t var, std::uint64_t chosen, int count) -> void {
        best = std::max(best, count);
        if (var >= n) return;
        if (count + static_cast<int>(n - var) <= best) return;  // cannot improve
        // include var if it keeps independence
        std::uint64_t with = chosen | (std::uint64_t{1} << var);
        bool ok = true;
        for (auto s : supports)
            if ((s & ~with) == 0) {
                ok = false;
                break;
            }
        if (ok) self(self, var + 1, with, count + 1);
        self(self, var + 1, chosen, count);
    };
    rec(rec, 0, 0, 0);
    return best;
}

namespace detail {

// numerator of the Hilbert series of a monomial ideal, as coefficients of t^i
inline std::vector<Integer> hilbert_numerator(std::vector<Monomial> gens, std::size_t nvars) {
    // drop multiples
    std::vector<Monomial> min;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool multiple = false;
        for (std::size_t j = 0; j < gens.size() && !multiple; ++j)
            if (j != i && mono_divides(gens[j], gens[i]) && (!(gens[j] == gens[i]) || j < i))
                multiple = true;
        if (!multiple) min.push_back(gens[i]);
    }
    for (const auto& m : min)
        if (m.is_constant()) return {Integer(0)};
    if (min.empty()) return {Integer(1)};

    // if all generators are pure powers: N = prod (1 - t^deg)
    bool pure = true;
    for (const auto& m : min) {
        int support = 0;
        for (auto e : m.e) support += (e > 0);
        if (support > 1) {
            pure = false;
            break;
        }
    }
    if (pure) {
        std::vector<Integer> n{Integer(1)};
        for (const auto& m : min) {
            std::vector<Integer> next(n.size() + m.degree(), Integer(0));
            for (std::size_t i = 0; i < n.size(); ++i) {
                next[i] += n[i];
                next[i + m.degree()] -= n[i];
            }
            n = std::move(next);
        }
        return n;
    }

    // pivot: the most frequent variable among those in a mixed generator
    // (choosing from a non-pure-power generator guarantees both branches
    // strictly shrink the total degree, so the recursion terminates)
    std::vector<int> freq(nvars, 0);
    for (const auto& m : min)
        for (std::size_t v = 0; v < nvars; ++v)
            if (m.e[v] > 0) ++freq[v];
    std::size_t pivot = nvars;
    int best_freq = -1;
    for (const auto& m : min) {
        int support = 0;
        for (auto e : m.e) support += (e > 0);
        if (support < 2) continue;
        for (std::size_t v = 0; v < nvars; ++v)
            if (m.e[v] > 0 && freq[v] > best_freq) {
                best_freq = freq[v];
                pivot = v;
            }
    }
    assert(pivot < nvars);

    // I + (x): generators not divisible by x, plus x itself
    std::vector<Monomial> plus;
    Monomial xv(nvars);
    xv.e[pivot] = 1;
    plus.push_back(xv);
    for (const auto& m : min)
        if (m.e[pivot] == 0) plus.push_back(m);
    // I : x: divide the x-degree by one where possible
    std::vector<Monomial> colon;
    for (const auto& m : min) {
        Monomial q = m;
        if (q.e[pivot] > 0) q.e[pivot] -= 1;
        colon.push_back(q);
    }
    // multiplication by x gives the exact sequence
    //   0 -> R/(I:x) -> R/I -> R/(I+(x)) -> 0,   so N(I) = N(I+(x)) + t*N(I:x)
    std::vector<Integer> a = hilbert_numerator(std::move(plus), nvars);
    std::vector<Integer> b = hilbert_numerator(std::move(colon), nvars);
    if (a.size() < b.size() + 1) a.resize(b.size() + 1, Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i + 1] += b[i];
    return a;
}

}  // namespace detail

// Degree of the ideal: for dimension zero this is the number of standard
// monomials; in positive dimension it is the degree of the leading-term
// ideal, read off the Hilbert series numerator.
inline long degree(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return 0;
    std::size_t n = gb.ring->nvars();
    if (gb.is_zero_ideal()) return 1;
    std::vector<Monomial> lts;
    for (const auto& g : gb.generators) lts.push_back(g.leading_monomial());
    std::vector<Integer> num = detail::hilbert_numerator(std::move(lts), n);
    // strip (1-t) factors until the value at t = 1 is nonzero
    auto value_at_one = [](const std::vector<Integer>& p) {
        Integer s(0);
        for (const auto& c : p) s += c;
        return s;
    };
    Integer v = value_at_one(num);
    while (v == 0) {
        if (num.size() <= 1) return 0;
        // synthetic division by (1 - t): q_i = sum of p_0..p_i
        std::vector<Integer> q(num.size() - 1, Integer(0));
        Integer acc(0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            acc += num[i];
            q[i] = acc;
        }
        num = std::move(q);
        v = value_at_one(num);
    }
    return static_cast<long>(v.get_si());
}

namespace detail {

inline void collect_monomials_up_to(std::size_t nvars, std::uint32_t budget, std::size_t var,
                                    Monomial& cur, std::vector<Monomial>& out) {
    if (var == nvars) {
        out.push_back(cur);
        return;
    }
    for (std::uint32_t e = 0; e <= budget; ++e) {
        cur.e[var] = e;
        collect_monomials_up_to(nvars, budget - e, var + 1, cur, out);
    }
    cur.e[var] = 0;
}

inline std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, std::uint32_t d) {
    std::vector<Monomial> out;
    Monomial cur(nvars);
    collect_monomials_up_to(nvars, d, 0, cur, out);
    return out;
}

// All polynomials f of degree <= d with w*f in the ideal of gb, i.e. the
// degree-d slice of the quotient (I : w), found as the exact nullspace of
// the linear map m -> NF(w*m).
inline std::vector<Polynomial> quotient_slice(const GroebnerBasis& gb, const Polynomial& w,
                                              std::uint32_t d, std::uint64_t* steps) {
    RingPtr ring = gb.ring;
    std::vector<Monomial> cols = monomials_up_to_degree(ring->nvars(), d);
    std::vector<Polynomial> images;
    images.reserve(cols.size());
    std::map<std::vector<std::uint32_t>, std::size_t> row_index;
    for (const auto& m : cols) {
        Polynomial f = Polynomial::term(ring, m, Rational(1)) * w;
        Polynomial nf = normal_form(f, gb.generators, steps);
        for (const auto& t : nf.terms())
            row_index.emplace(t.mono.e, row_index.size());
        images.push_back(std::move(nf));
    }
    std::size_t rows = row_index.size(), ncols = cols.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(ncols, Rational(0)));
    for (std::size_t j = 0; j < ncols; ++j)
        for (const auto& t : images[j].terms()) a[row_index.at(t.mono.e)][j] = t.coeff;
    // exact nullspace by Gaussian elimination
    std::vector<std::size_t> pivot_of_col(ncols, SIZE_MAX);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != rank) std::swap(a[rank], a[p]);
        Rational inv = Rational(1) / a[rank][c];
        for (std::size_t j = 0; j < ncols; ++j) a[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < ncols; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<Polynomial> out;
    for (std::size_t c = 0; c < ncols; ++c) {
        if (pivot_of_col[c] != SIZE_MAX) continue;  // bound column
        std::vector<Term> terms;
        terms.push_back({cols[c], Rational(1)});
        for (std::size_t c2 = 0; c2 < ncols; ++c2) {
            if (pivot_of_col[c2] == SIZE_MAX) continue;
            Rational v = a[pivot_of_col[c2]][c];
            if (v != 0) terms.push_back({cols[c2], -v});
        }
        Polynomial f = Polynomial::from_terms(ring, std::move(terms));
        if (!f.is_zero()) out.push_back(f.primitive_part());
    }
    return out;
}

}  // namespace detail

// All monomials outside the leading-term ideal, ascending in the ring order.
// Only valid (finite) for zero-dimensional ideals; cap guards runaways.
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& gb,
                                                std::size_t cap = 2'000'000) {
    if (gb.is_unit_ideal()) return {};
    std::size_t n = gb.ring->nvars();
    std::vector<Monomial> lts;
    for (const auto& g : gb.generators) lts.push_back(g.leading_monomial());
    auto in_lt_ideal = [&](const Monomial& m) {
        for (const auto& l : lts)
            if (mono_divides(l, m)) return true;
        return false;
    };
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<Monomial> queue{Monomial(n)}, out;
    seen.insert(queue[0].e);
    while (!queue.empty()) {
        Monomial m = queue.back();
        queue.pop_back();
        out.push_back(m);
        if (out.size() > cap) throw resource_error("standard_monomials: not zero-dimensional?");
        for (std::size_t v = 0; v < n; ++v) {
            Monomial next = m;
            next.e[v] += 1;
            if (in_lt_ideal(next) || seen.count(next.e)) continue;
            seen.insert(next.e);
            queue.push_back(next);
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return gb.ring->compare(a, b) < 0; });
    return out;
}

// Matrix of multiplication by f on the standard-monomial basis of the
// quotient ring (column j holds the normal-form coordinates of f * basis[j]).
inline std::vector<std::vector<Rational>> multiplication_matrix(const GroebnerBasis& gb,
                                                                const Polynomial& f,
                                                                const std::vector<Monomial>& basis) {
    std::size_t d = basis.size();
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    for (std::size_t i = 0; i < d; ++i) index[basis[i].e] = i;
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
        Polynomial nf =
            normal_form(Polynomial::term(gb.ring, basis[j], Rational(1)) * f, gb.generators);
        for (const auto& t : nf.terms()) {
            auto it = index.find(t.mono.e);
            if (it == index.end())
                throw std::logic_error("multiplication_matrix: normal form left the basis");
            m[it->second][j] = t.coeff;
        }
    }
    return m;
}

namespace detail {

// For a zero-dimensional gb, the saturation (I : w^inf) equals I plus the
// polynomials carried by the stable kernel of multiplication by w on the
// Artinian quotient (iterated preimages until the kernel stops growing).
inline std::vector<Polynomial> artinian_saturation_extras(const GroebnerBasis& gb,
                                                          const Polynomial& w) {
    std::vector<Monomial> basis = standard_monomials(gb);
    std::size_t d = basis.size();
    if (d == 0) return {};
    auto m = multiplication_matrix(gb, w, basis);

    // kernel chain: K_{i+1} = { x : M x in span K_i }, starting from K_0 = 0.
    std::vector<std::vector<Rational>> kernel;  // basis vectors, length-d
    while (true) {
        // solve M x = K c as the nullspace of [M | -K] projected to x
        std::size_t cols = d + kernel.size();
        std::vector<std::vector<Rational>> a(d, std::vector<Rational>(cols, Rational(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a[i][j] = m[i][j];
        for (std::size_t k = 0; k < kernel.size(); ++k)
            for (std::size_t i = 0; i < d; ++i) a[i][d + k] = -kernel[k][i];
        // row-reduce
        std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < d; ++c) {
            std::size_t p = rank;
            while (p < d && a[p][c] == 0) ++p;
            if (p == d) continue;
            if (p != rank) std::swap(a[rank], a[p]);
            Rational inv = Rational(1) / a[rank][c];
            for (std::size_t j = 0; j < cols; ++j) a[rank][j] *= inv;
            for (std::size_t i = 0; i < d; ++i) {
                if (i == rank || a[i][c] == 0) continue;
                Rational f = a[i][c];
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[rank][j];
            }
            pivot_of_col[c] = rank;
            ++rank;
        }
        std::vector<std::vector<Rational>> next;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] != SIZE_MAX) continue;
            std::vector<Rational> x(d, Rational(0));
            if (c < d) x[c] = Rational(1);
            for (std::size_t c2 = 0; c2 < d; ++c2)
                if (pivot_of_col[c2] != SIZE_MAX && a[pivot_of_col[c2]][c] != 0)
                    x[c2] = -a[pivot_of_col[c2]][c];
            bool nonzero = false;
            for (const auto& v : x)
                if (v != 0) {
                    nonzero = true;
                    break;
                }
            if (nonzero) next.push_back(std::move(x));
        }
        // span(next) contains span(kernel); stop once the dimension is stable
        if (next.size() <= kernel.size()) break;
        kernel = std::move(next);
        if (kernel.size() >= d) break;
    }

    std::vector<Polynomial> extras;
    for (const auto& x : kernel) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < d; ++i)
            if (x[i] != 0) terms.push_back({basis[i], x[i]});
        Polynomial f = Polynomial::from_terms(gb.ring, std::move(terms));
        if (!f.is_zero()) extras.push_back(f.primitive_part());
    }
    return extras;
}

}  // namespace detail

struct SaturationOptions {
    BuchbergerOptions buchberger{};
    std::uint32_t enrich_degree = 2;  // degree of the low-degree quotient search
    int enrich_rounds = 4;            // quotient-slice passes before falling back
};

// Saturation of the ideal by w. Strategy: harvest low-degree members of
// I : w^k by exact linear algebra against the plain Groebner basis; once the
// enriched ideal is zero-dimensional the saturation closes with the stable
// kernel of multiplication by w on the quotient. Ideals that stay positive-
// dimensional go through the Rabinowitsch construction (adjoin t, add
// t*w - 1, eliminate t with a block order, contract).
inline std::vector<Polynomial> saturate(const std::vector<Polynomial>& gens, const Polynomial& w,
                                        const SaturationOptions& opts = {}) {
    if (w.is_zero()) throw std::invalid_argument("saturate: witness is zero");
    RingPtr ring = gens.empty() ? w.ring() : gens[0].ring();
    if (gens.empty()) return gens;
    if (w.is_constant()) return groebner(gens, opts.buchberger).generators;
    std::uint64_t steps = opts.buchberger.max_steps;

    GroebnerBasis current = groebner(gens, opts.buchberger);
    for (int round = 0; round <= opts.enrich_rounds; ++round) {
        if (current.is_unit_ideal() || current.is_zero_ideal()) return current.generators;
        if (dimension(current) == 0) {
            std::vector<Polynomial> extras = detail::artinian_saturation_extras(current, w);
            if (extras.empty()) return current.generators;  // already saturated
            std::vector<Polynomial> all = current.generators;
            all.insert(all.end(), extras.begin(), extras.end());
            BuchbergerOptions bo = opts.buchberger;
            bo.max_steps = steps;
            return groebner(all, bo).generators;
        }
        if (round == opts.enrich_rounds) break;
        std::vector<Polynomial> found =
            detail::quotient_slice(current, w, opts.enrich_degree, &steps);
        std::vector<Polynomial> enriched = current.generators;
        bool grew = false;
        for (auto& f : found) {
            if (!normal_form(f, current.generators, &steps).is_zero()) {
                enriched.push_back(f);
                grew = true;
            }
        }
        if (!grew) break;
        BuchbergerOptions bo = opts.buchberger;
        bo.max_steps = steps;
        current = groebner(enriched, bo);
    }

    // positive-dimensional (or enrichment-resistant): eliminate t
    std::vector<VariableId> ext_vars;
    ext_vars.push_back(VariableId::aux(0));
    for (const auto& v : ring->vars()) ext_vars.push_back(v);
    RingPtr ext = make_ring(std::move(ext_vars), MonomialOrder::ElimFirst);

    std::vector<Polynomial> ext_gens;
    for (const auto& g : current.generators)
        if (!g.is_zero()) ext_gens.push_back(map_to_ring(g, ext));
    Polynomial t = Polynomial::variable(ext, VariableId::aux(0));
    ext_gens.push_back(t * map_to_ring(w, ext) - Polynomial::constant(ext, 1));

    GroebnerBasis ext_gb = groebner(ext_gens, opts.buchberger);
    std::vector<Polynomial> contraction;
    for (const auto& g : ext_gb.generators) {
        bool has_t = false;
        for (const auto& term : g.terms())
            if (term.mono.e[0] > 0) {
                has_t = true;
                break;
            }
        if (!has_t) contraction.push_back(map_to_ring(g, ring));
    }
    return contraction;
}

}  // namespace gmle
