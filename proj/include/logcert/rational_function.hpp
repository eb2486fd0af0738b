#pragma once

/**
 * @file rational_function.hpp
 * @brief Canonical rational functions num(n)/den(n) over an exact field.
 *
 * Canonical form: gcd(num, den) = 1 and den is monic. Two rational functions
 * are equal iff their canonical forms are structurally equal.
 */

#include "logcert/polynomial.hpp"

#include <optional>
#include <utility>

namespace logcert {

template <ExactField F>
class RationalFunction {
public:
    using poly_type = Polynomial<F>;

    RationalFunction() : den_(poly_type::constant(F(1))) {}
    RationalFunction(poly_type num)  // NOLINT(google-explicit-constructor)
        : num_(std::move(num)), den_(poly_type::constant(F(1))) {}
    RationalFunction(poly_type num, poly_type den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        normalize();
    }

    static RationalFunction constant(F v) { return RationalFunction(poly_type::constant(std::move(v))); }
    static RationalFunction variable() { return RationalFunction(poly_type::variable()); }

    const poly_type& num() const { return num_; }
    const poly_type& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    /// Value at a point; throws DivisionByZero at a pole.
    F operator()(const F& x) const {
        F d = den_(x);
        if (sign(d) == 0) throw DivisionByZero("pole of rational function at evaluation point");
        return num_(x) / d;
    }

    RationalFunction operator-() const { return raw(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
        return add(x, y, false);
    }
    friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) {
        return add(x, y, true);
    }
    friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
        if (x.is_zero() || y.is_zero()) return {};
        // Cross-cancel before multiplying to keep degrees small.
        poly_type g1 = gcd(x.num_, y.den_);
        poly_type g2 = gcd(y.num_, x.den_);
        poly_type n = x.num_.exact_div(g1) * y.num_.exact_div(g2);
        poly_type d = x.den_.exact_div(g2) * y.den_.exact_div(g1);
        return make_monic(std::move(n), std::move(d));
    }
    friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
        return x * y.inverse();
    }

    RationalFunction inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero rational function");
        return make_monic(den_, num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction pow(unsigned e) const { return raw(num_.pow(e), den_.pow(e)); }

    /// x(n + k).
    RationalFunction shift(long k) const {
        if (k == 0) return *this;
        return make_monic(num_.shifted(F(k)), den_.shifted(F(k)));
    }

    /// If x / y is a nonzero constant, returns it.
    friend std::optional<F> proportionality(const RationalFunction& x, const RationalFunction& y) {
        if (x.is_zero() || y.is_zero()) return std::nullopt;
        RationalFunction q = x / y;
        if (!q.is_constant()) return std::nullopt;
        return q.num_.leading() / q.den_.leading();
    }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    struct NoNormalize {};
    RationalFunction(poly_type num, poly_type den, NoNormalize)
        : num_(std::move(num)), den_(std::move(den)) {}

    // Already coprime; only fix the unit so that den is monic.
    static RationalFunction raw(poly_type num, poly_type den) {
        return make_monic(std::move(num), std::move(den));
    }

    static RationalFunction make_monic(poly_type num, poly_type den) {
        if (num.is_zero()) return {};
        F lead = den.leading();
        if (!(lead == F(1))) {
            F inv = F(1) / lead;
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
        return RationalFunction(std::move(num), std::move(den), NoNormalize{});
    }

    static RationalFunction add(const RationalFunction& x, const RationalFunction& y, bool subtract) {
        if (y.is_zero()) return x;
        if (x.is_zero()) return subtract ? -y : y;
        if (x.den_ == y.den_) {
            poly_type n = subtract ? x.num_ - y.num_ : x.num_ + y.num_;
            return RationalFunction(std::move(n), x.den_);
        }
        poly_type g = gcd(x.den_, y.den_);
        poly_type xr = x.den_.exact_div(g);
        poly_type yr = y.den_.exact_div(g);
        poly_type n = subtract ? x.num_ * yr - y.num_ * xr : x.num_ * yr + y.num_ * xr;
        if (n.is_zero()) return {};
        // Any common factor of n and the product lies in g.
        poly_type h = gcd(n, g);
        if (h.degree() > 0) {
            n = n.exact_div(h);
            g = g.exact_div(h);
        }
        return make_monic(std::move(n), xr * yr * g);
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = poly_type::constant(F(1));
            return;
        }
        poly_type g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
        *this = make_monic(std::move(num_), std::move(den_));
    }

    poly_type num_;
    poly_type den_;
};

using RatFunc = RationalFunction<Qrt2>;

}  // namespace logcert
