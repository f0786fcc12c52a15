#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmle/errors.hpp"
#include "gmle/rational.hpp"
#include "gmle/variable.hpp"

namespace gmle {

// Monomial orders. Grevlex is graded reverse lexicographic over the ring's
// variable listing (earlier variable = higher precedence). ElimFirst compares
// the exponent of the first ring variable before grevlex on the rest, making
// the first variable an elimination block.
enum class MonomialOrder { Grevlex, ElimFirst };

struct Monomial {
    std::vector<std::uint32_t> e;

    explicit Monomial(std::size_t nvars = 0) : e(nvars, 0) {}

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_constant() const {
        return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

// b / a; caller guarantees divisibility.
inline Monomial mono_quotient(const Monomial& b, const Monomial& a) {
    Monomial r(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = b.e[i] - a.e[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != 0 && b.e[i] != 0) return false;
    return true;
}

// The variable universe plus a monomial order. Immutable and shared.
class PolyRing {
public:
    explicit PolyRing(std::vector<VariableId> vars, MonomialOrder order = MonomialOrder::Grevlex)
        : vars_(std::move(vars)), order_(order) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!index_.emplace(vars_[i], i).second)
                throw std::invalid_argument("PolyRing: duplicate variable " + vars_[i].name());
        }
    }

    std::size_t nvars() const { return vars_.size(); }
    const VariableId& var(std::size_t i) const { return vars_[i]; }
    const std::vector<VariableId>& vars() const { return vars_; }
    MonomialOrder order() const { return order_; }

    int index_of(const VariableId& v) const {
        auto it = index_.find(v);
        return it == index_.end() ? -1 : static_cast<int>(it->second);
    }

    // > 0 if a comes after b in the order (a > b), 0 if equal, < 0 otherwise.
    int compare(const Monomial& a, const Monomial& b) const {
        assert(a.e.size() == nvars() && b.e.size() == nvars());
        std::size_t lo = 0;
        if (order_ == MonomialOrder::ElimFirst && nvars() > 0) {
            if (a.e[0] != b.e[0]) return a.e[0] < b.e[0] ? -1 : 1;
            lo = 1;
        }
        std::int64_t da = 0, db = 0;
        for (std::size_t i = lo; i < a.e.size(); ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = a.e.size(); i-- > lo;) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
        }
        return 0;
    }

private:
    std::vector<VariableId> vars_;
    std::map<VariableId, std::size_t> index_;
    MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<VariableId> vars,
                         MonomialOrder order = MonomialOrder::Grevlex) {
    return std::make_shared<const PolyRing>(std::move(vars), order);
}

class Polynomial;
inline Polynomial map_to_ring(const Polynomial& p, const RingPtr& target);

struct Term {
    Monomial mono;
    Rational coeff;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are stored in strictly descending monomial order with no zero
// coefficients, so equal polynomials compare equal structurally.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

    static Polynomial constant(RingPtr ring, Rational c) {
        Polynomial p(std::move(ring));
        if (c != 0) p.terms_.push_back({Monomial(p.ring_->nvars()), std::move(c)});
        return p;
    }

    static Polynomial variable(RingPtr ring, const VariableId& v, std::uint32_t power = 1) {
        Polynomial p(ring);
        int idx = ring->index_of(v);
        if (idx < 0) throw std::invalid_argument("Polynomial: variable " + v.name() + " not in ring");
        if (power == 0) return constant(std::move(ring), 1);
        Monomial m(ring->nvars());
        m.e[static_cast<std::size_t>(idx)] = power;
        p.terms_.push_back({std::move(m), Rational(1)});
        return p;
    }

    static Polynomial term(RingPtr ring, Monomial m, Rational c) {
        Polynomial p(std::move(ring));
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    // Builds from an arbitrary term list (sorted, merged, zero-pruned here).
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
        Polynomial p(std::move(ring));
        p.terms_ = std::move(terms);
        p.sort_normalize();
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].mono.is_constant(); }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("constant_value: polynomial not constant");
        return terms_[0].coeff;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::logic_error("leading_monomial of zero polynomial");
        return terms_[0].mono;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) throw std::logic_error("leading_coefficient of zero polynomial");
        return terms_[0].coeff;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    std::set<VariableId> support() const {
        std::set<VariableId> s;
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < t.mono.e.size(); ++i)
                if (t.mono.e[i] > 0) s.insert(ring_->var(i));
        return s;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        return merge(a, b, Rational(1), Rational(1));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        return merge(a, b, Rational(1), Rational(-1));
    }
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        Polynomial r = a;
        r.scale(c);
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    void scale(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return;
        }
        for (auto& t : terms_) t.coeff *= c;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same_ring(a, b);
        Polynomial r(a.ring_);
        if (a.is_zero() || b.is_zero()) return r;
        // multiply the shorter operand into the longer one
        const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const Polynomial& big = a.terms_.size() <= b.terms_.size() ? b : a;
        for (const auto& t : small.terms_) {
            Polynomial shifted(big.ring_);
            shifted.terms_.reserve(big.terms_.size());
            for (const auto& u : big.terms_)
                shifted.terms_.push_back({mono_mul(t.mono, u.mono), t.coeff * u.coeff});
            r = merge(r, shifted, Rational(1), Rational(1));
        }
        return r;
    }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    Polynomial pow(std::uint32_t e) const {
        Polynomial r = constant(ring_, 1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    // this = alpha*this + beta * mono * g   (single merge pass)
    void linear_combine(const Rational& alpha, const Rational& beta, const Monomial& shift,
                        const Polynomial& g) {
        Polynomial shifted(ring_);
        shifted.terms_.reserve(g.terms_.size());
        for (const auto& t : g.terms_)
            shifted.terms_.push_back({mono_mul(shift, t.mono), beta * t.coeff});
        *this = merge(*this, shifted, alpha, Rational(1));
    }

    Polynomial derivative(const VariableId& v) const {
        int idx = ring_->index_of(v);
        if (idx < 0) throw std::invalid_argument("derivative: variable not in ring");
        auto ui = static_cast<std::size_t>(idx);
        Polynomial r(ring_);
        for (const auto& t : terms_) {
            if (t.mono.e[ui] == 0) continue;
            Term d;
            d.mono = t.mono;
            d.coeff = t.coeff * Rational(static_cast<long>(t.mono.e[ui]));
            d.mono.e[ui] -= 1;
            r.terms_.push_back(std::move(d));
        }
        r.sort_normalize();
        return r;
    }

    // Degree in one variable.
    std::uint32_t degree_in(const VariableId& v) const {
        int idx = ring_->index_of(v);
        if (idx < 0) return 0;
        auto ui = static_cast<std::size_t>(idx);
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.e[ui]);
        return d;
    }

    // Coefficient of v^d, a polynomial free of v.
    Polynomial coeff_of_power(const VariableId& v, std::uint32_t d) const {
        int idx = ring_->index_of(v);
        if (idx < 0) return d == 0 ? *this : zero(ring_);
        auto ui = static_cast<std::size_t>(idx);
        Polynomial r(ring_);
        for (const auto& t : terms_) {
            if (t.mono.e[ui] != d) continue;
            Term u = t;
            u.mono.e[ui] = 0;
            r.terms_.push_back(std::move(u));
        }
        r.sort_normalize();
        return r;
    }

    Rational evaluate(const std::vector<Rational>& values) const {
        if (values.size() != ring_->nvars())
            throw std::invalid_argument("evaluate: assignment does not cover the ring");
        Rational acc(0);
        for (const auto& t : terms_) {
            Rational m = t.coeff;
            for (std::size_t i = 0; i < t.mono.e.size(); ++i)
                for (std::uint32_t k = 0; k < t.mono.e[i]; ++k) m *= values[i];
            acc += m;
        }
        return acc;
    }

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const {
        if (values.size() != ring_->nvars())
            throw std::invalid_argument("evaluate: assignment does not cover the ring");
        std::complex<double> acc(0.0, 0.0);
        for (const auto& t : terms_) {
            std::complex<double> m(to_double(t.coeff), 0.0);
            for (std::size_t i = 0; i < t.mono.e.size(); ++i) {
                std::complex<double> b = values[i];
                std::uint32_t e = t.mono.e[i];
                while (e > 0) {
                    if (e & 1) m *= b;
                    b *= b;
                    e >>= 1;
                }
            }
            acc += m;
        }
        return acc;
    }

    // Rational content: gcd of numerators over lcm of denominators, signed so
    // that content * primitive_part == *this with a positive leading
    // coefficient on the primitive part.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        Integer num_gcd = 0, den_lcm = 1;
        for (const auto& t : terms_) {
            num_gcd = int_gcd(num_gcd, t.coeff.get_num());
            den_lcm = int_lcm(den_lcm, t.coeff.get_den());
        }
        Rational c = make_rational(num_gcd, den_lcm);
        if (terms_[0].coeff < 0) c = -c;
        return c;
    }

    Polynomial primitive_part() const {
        if (terms_.empty()) return *this;
        Rational c = content();
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff /= c;
        return r;
    }

    // Leading coefficient scaled to 1.
    Polynomial monic() const {
        if (terms_.empty()) return *this;
        Rational lc = terms_[0].coeff;
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff /= lc;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            if (first) {
                if (c < 0) {
                    out += "-";
                    c = -c;
                }
            } else {
                out += (c < 0) ? " - " : " + ";
                if (c < 0) c = -c;
            }
            first = false;
            std::string mono_str;
            for (std::size_t i = 0; i < t.mono.e.size(); ++i) {
                if (t.mono.e[i] == 0) continue;
                if (!mono_str.empty()) mono_str += "*";
                mono_str += ring_->var(i).name();
                if (t.mono.e[i] > 1) mono_str += "^" + std::to_string(t.mono.e[i]);
            }
            if (mono_str.empty()) {
                out += gmle::to_string(c);
            } else if (c == 1) {
                out += mono_str;
            } else {
                out += gmle::to_string(c) + "*" + mono_str;
            }
        }
        return out;
    }

    static void check_same_ring(const Polynomial& a, const Polynomial& b) {
        if (a.ring_ != b.ring_)
            throw std::invalid_argument("polynomial operands come from different rings");
    }

private:
    // r = alpha*a + beta*b by merging the sorted term lists.
    static Polynomial merge(const Polynomial& a, const Polynomial& b, const Rational& alpha,
                            const Rational& beta) {
        check_same_ring(a, b);
        Polynomial r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        const auto& ring = *a.ring_;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int cmp = ring.compare(a.terms_[i].mono, b.terms_[j].mono);
            if (cmp > 0) {
                push_scaled(r, a.terms_[i], alpha);
                ++i;
            } else if (cmp < 0) {
                push_scaled(r, b.terms_[j], beta);
                ++j;
            } else {
                Rational c = alpha * a.terms_[i].coeff + beta * b.terms_[j].coeff;
                if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) push_scaled(r, a.terms_[i], alpha);
        for (; j < b.terms_.size(); ++j) push_scaled(r, b.terms_[j], beta);
        return r;
    }

    static void push_scaled(Polynomial& r, const Term& t, const Rational& s) {
        if (s == 0) return;
        Rational c = t.coeff * s;
        if (c != 0) r.terms_.push_back({t.mono, std::move(c)});
    }

    void sort_normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [this](const Term& x, const Term& y) { return ring_->compare(x.mono, y.mono) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.coeff == 0; }),
                  out.end());
        terms_ = std::move(out);
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

// Maps a polynomial into another ring containing (at least) its variables.
inline Polynomial map_to_ring(const Polynomial& p, const RingPtr& target) {
    std::vector<Term> terms;
    terms.reserve(p.terms().size());
    const auto& src = *p.ring();
    for (const auto& t : p.terms()) {
        Monomial m(target->nvars());
        for (std::size_t v = 0; v < src.nvars(); ++v) {
            if (t.mono.e[v] == 0) continue;
            int idx = target->index_of(src.var(v));
            if (idx < 0)
                throw std::invalid_argument("map_to_ring: target ring lacks " + src.var(v).name());
            m.e[static_cast<std::size_t>(idx)] = t.mono.e[v];
        }
        terms.push_back({std::move(m), t.coeff});
    }
    return Polynomial::from_terms(target, std::move(terms));
}

}  // namespace gmle
