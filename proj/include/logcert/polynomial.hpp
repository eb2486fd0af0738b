#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials in the index variable n over an exact field.
 *
 * Coefficients are stored constant term first with no trailing zeros, so the
 * zero polynomial is the empty vector and degree() == -1 for it.
 */

#include "logcert/qfield.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace logcert {

template <class F>
concept ExactField = std::regular<F> && requires(F x, F y) {
    { x + y } -> std::convertible_to<F>;
    { x - y } -> std::convertible_to<F>;
    { x * y } -> std::convertible_to<F>;
    { x / y } -> std::convertible_to<F>;
    { -x } -> std::convertible_to<F>;
    { sign(x) } -> std::convertible_to<int>;
    F(0);
    F(1);
};

template <ExactField F>
class Polynomial {
public:
    using coefficient_type = F;

    Polynomial() = default;
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(F v) { return Polynomial(std::vector<F>{std::move(v)}); }
    /// The monomial c * n^k.
    static Polynomial monomial(F c, std::size_t k) {
        std::vector<F> v(k + 1, F(0));
        v[k] = std::move(c);
        return Polynomial(std::move(v));
    }
    /// The index variable n.
    static Polynomial variable() { return monomial(F(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::span<const F> coefficients() const { return c_; }
    /// Coefficient of n^k (zero beyond the degree).
    F coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
    const F& leading() const { return c_.back(); }

    F operator()(const F& x) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        if (x.is_zero() || y.is_zero()) return {};
        std::vector<F> r(x.c_.size() + y.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (sign(x.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
        }
        return Polynomial(std::move(r));
    }

    Polynomial scaled(const F& k) const {
        if (sign(k) == 0) return {};
        Polynomial r = *this;
        for (auto& v : r.c_) v *= k;
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(F(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return result;
    }

    /// Quotient and remainder; throws on division by the zero polynomial.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (degree() < d.degree()) return {Polynomial{}, *this};
        std::vector<F> rem = c_;
        std::vector<F> quo(c_.size() - d.c_.size() + 1, F(0));
        const F inv_lead = F(1) / d.leading();
        for (std::size_t k = quo.size(); k-- > 0;) {
            F q = rem[k + d.c_.size() - 1] * inv_lead;
            if (sign(q) != 0) {
                for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
            }
            quo[k] = std::move(q);
        }
        rem.resize(d.c_.size() - 1);
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    /// Exact division; the caller guarantees d | *this.
    Polynomial exact_div(const Polynomial& d) const { return divmod(d).first; }

    Polynomial monic() const {
        if (is_zero()) return {};
        return scaled(F(1) / leading());
    }

    /// p(n + k) via repeated synthetic division (Taylor shift).
    Polynomial shifted(const F& k) const {
        std::vector<F> a = c_;
        const std::size_t m = a.size();
        if (m <= 1 || sign(k) == 0) return *this;
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = m - 1; j-- > i;) a[j] += k * a[j + 1];
        return Polynomial(std::move(a));
    }

    /// p(q(n)).
    Polynomial compose(const Polynomial& q) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> r(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long>(i));
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
    }

    std::vector<F> c_;
};

/// Monic greatest common divisor (zero if both are zero).
template <ExactField F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a.monic();
    if (b.is_constant()) return Polynomial<F>::constant(F(1));
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        auto r = a.divmod(b).second.monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

using Poly = Polynomial<Qrt2>;

}  // namespace logcert
