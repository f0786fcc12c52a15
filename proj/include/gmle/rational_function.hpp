#pragma once

#include <complex>
#include <utility>

#include "gmle/poly_gcd.hpp"
#include "gmle/polynomial.hpp"

namespace gmle {

// Quotient of two polynomials, always kept in canonical form: numerator and
// denominator coprime, denominator integer-primitive with positive leading
// coefficient, zero stored as 0/1. Equality is structural.
class RationalFunction {
public:
    RationalFunction() = default;

    explicit RationalFunction(Polynomial num)
        : num_(std::move(num)), den_(Polynomial::constant(num_.ring(), 1)) {}

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
        reduce();
    }

    static RationalFunction zero(const RingPtr& ring) {
        return RationalFunction(Polynomial::zero(ring));
    }
    static RationalFunction constant(const RingPtr& ring, const Rational& c) {
        return RationalFunction(Polynomial::constant(ring, c));
    }
    static RationalFunction variable(const RingPtr& ring, const VariableId& v) {
        return RationalFunction(Polynomial::variable(ring, v));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return add(a, b, false);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return add(a, b, true);
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.ring());
        // cross-cancel before multiplying to keep the gcds small
        Polynomial g1 = poly_gcd(a.num_, b.den_);
        Polynomial g2 = poly_gcd(b.num_, a.den_);
        RationalFunction r;
        r.num_ = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
        r.den_ = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
        r.normalize_units();
        return r;
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::invalid_argument("RationalFunction: division by zero");
        RationalFunction inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        inv.normalize_units();
        return a * inv;
    }

    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
    RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

    // Quotient-rule derivative. Shared factors between the denominator and
    // its derivative are pulled out first so the final reduction stays small.
    RationalFunction derivative(const VariableId& v) const {
        Polynomial dn = num_.derivative(v);
        Polynomial dd = den_.derivative(v);
        if (dd.is_zero()) {
            if (den_.is_constant()) {
                RationalFunction r;
                r.num_ = dn;
                r.den_ = den_;
                r.reduce();
                return r;
            }
            return RationalFunction(dn, den_);
        }
        Polynomial g = poly_gcd(den_, dd);
        Polynomial d1 = divide_exact(den_, g);   // den = g*d1
        Polynomial e = divide_exact(dd, g);      // dd  = g*e
        // (n/d)' = (n'*d1 - n*e) / (g*d1^2)
        RationalFunction r;
        r.num_ = dn * d1 - num_ * e;
        r.den_ = g * d1 * d1;
        r.reduce();
        return r;
    }

    Rational evaluate(const std::vector<Rational>& values) const {
        Rational d = den_.evaluate(values);
        if (d == 0) throw pole_error("rational function evaluated at a pole");
        return num_.evaluate(values) / d;
    }

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const {
        std::complex<double> d = den_.evaluate(values);
        if (d == std::complex<double>(0.0, 0.0))
            throw pole_error("rational function evaluated at a pole");
        return num_.evaluate(values) / d;
    }

    std::string to_string() const {
        if (is_polynomial() && den_ == Polynomial::constant(ring(), 1)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool sub) {
        Polynomial::check_same_ring(a.num_, b.num_);
        Polynomial g = poly_gcd(a.den_, b.den_);
        Polynomial bq = divide_exact(b.den_, g);
        Polynomial aq = divide_exact(a.den_, g);
        RationalFunction r;
        r.num_ = sub ? a.num_ * bq - b.num_ * aq : a.num_ * bq + b.num_ * aq;
        r.den_ = a.den_ * bq;
        // the only possible new common factor lives in g
        if (!g.is_constant() && !r.num_.is_zero()) {
            Polynomial h = poly_gcd(r.num_, g);
            if (!h.is_constant()) {
                r.num_ = divide_exact(r.num_, h);
                r.den_ = divide_exact(r.den_, h);
            }
        }
        r.normalize_units();
        return r;
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(num_.ring(), 1);
            return;
        }
        if (!den_.is_constant()) {
            Polynomial g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = divide_exact(num_, g);
                den_ = divide_exact(den_, g);
            }
        }
        normalize_units();
    }

    // Scale so the denominator is integer-primitive with positive lead.
    void normalize_units() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(num_.ring(), 1);
            return;
        }
        Rational c = den_.content();
        if (c != 1) {
            den_ = den_ * (Rational(1) / c);
            num_ = num_ * (Rational(1) / c);
        }
    }

    Polynomial num_, den_;
};

}  // namespace gmle
