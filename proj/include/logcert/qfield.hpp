#pragma once

/**
 * @file qfield.hpp
 * @brief Exact scalars: big integers, rationals and the quadratic field Q(sqrt 2).
 *
 * BigInt and BigRational are GMP's mpz_class / mpq_class. mpq_class keeps the
 * canonical form we rely on everywhere (positive denominator, coprime parts,
 * zero as 0/1) as long as every value is built through canonicalize().
 *
 * Qrt2 is a + b*sqrt(2) with rational a, b. Its sign is decided by integer
 * comparisons only; no floating point is used in any decision.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace logcert {

using BigInt = mpz_class;
using BigRational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
    using std::domain_error::domain_error;
};

struct ParseError : Error {
    using Error::Error;
};

/// A rational function was evaluated at one of its integer poles.
struct PoleError : Error {
    explicit PoleError(std::int64_t at) : Error("integer pole at n=" + std::to_string(at)), pole(at) {}
    std::int64_t pole;
};

inline int sign(const BigInt& x) { return sgn(x); }
inline int sign(const BigRational& x) { return sgn(x); }

/// Builds a canonical rational from numerator and denominator.
inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" (optional surrounding whitespace).
inline BigRational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        return BigInt(std::string(s), 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw ParseError("not a rational number: '" + std::string(text) + "'");
        return BigRational(to_int(text));
    }
    auto num = trim(text.substr(0, slash));
    auto den = trim(text.substr(slash + 1));
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("not a rational number: '" + std::string(text) + "'");
    BigInt d = to_int(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(to_int(num), d);
}

inline std::string to_string(const BigRational& x) { return x.get_str(10); }
inline std::string to_string(const BigInt& x) { return x.get_str(10); }

/// Floor of a rational as a big integer.
inline BigInt floor_of(const BigRational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline BigInt ceil_of(const BigRational& x) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// Sign of a + b*sqrt(2) for exact a, b (rational or integer).
template <class T>
int sign_a_plus_b_sqrt2(const T& a, const T& b) {
    const int sa = sgn(a);
    const int sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 2 b^2.
    T a2 = a * a;
    T b2 = 2 * b * b;
    int c = cmp(a2, b2);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

/// Exact element a + b*sqrt(2) of Q(sqrt 2).
class Qrt2 {
public:
    Qrt2() = default;
    Qrt2(long v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
    Qrt2(const BigInt& v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
    // Callers may hand in unreduced fractions like BigRational(33, 12).
    Qrt2(BigRational v) : rat_(std::move(v)) { rat_.canonicalize(); }  // NOLINT(google-explicit-constructor)
    Qrt2(BigRational rat, BigRational irr) : rat_(std::move(rat)), irr_(std::move(irr)) {
        rat_.canonicalize();
        irr_.canonicalize();
    }

    static Qrt2 sqrt2() { return {BigRational(0), BigRational(1)}; }

    const BigRational& rat() const { return rat_; }
    const BigRational& irr() const { return irr_; }

    bool is_zero() const { return sgn(rat_) == 0 && sgn(irr_) == 0; }
    bool is_rational() const { return sgn(irr_) == 0; }

    /// Exact sign of the real number rat + irr*sqrt(2).
    int sign() const { return sign_a_plus_b_sqrt2(rat_, irr_); }

    Qrt2 conjugate() const { return {rat_, -irr_}; }
    /// a^2 - 2 b^2; nonzero for every nonzero element.
    BigRational norm() const { return rat_ * rat_ - 2 * irr_ * irr_; }

    Qrt2 inverse() const {
        if (is_zero()) throw DivisionByZero();
        BigRational n = norm();
        return {BigRational(rat_ / n), BigRational(-irr_ / n)};
    }

    Qrt2 operator-() const { return {BigRational(-rat_), BigRational(-irr_)}; }

    Qrt2& operator+=(const Qrt2& o) {
        rat_ += o.rat_;
        irr_ += o.irr_;
        return *this;
    }
    Qrt2& operator-=(const Qrt2& o) {
        rat_ -= o.rat_;
        irr_ -= o.irr_;
        return *this;
    }
    Qrt2& operator*=(const Qrt2& o) {
        if (is_rational() && o.is_rational()) {
            rat_ *= o.rat_;
            return *this;
        }
        BigRational r = rat_ * o.rat_ + 2 * irr_ * o.irr_;
        BigRational i = rat_ * o.irr_ + irr_ * o.rat_;
        rat_ = std::move(r);
        irr_ = std::move(i);
        return *this;
    }
    Qrt2& operator/=(const Qrt2& o) {
        if (o.is_zero()) throw DivisionByZero();
        if (o.is_rational()) {
            rat_ /= o.rat_;
            irr_ /= o.rat_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend Qrt2 operator+(Qrt2 x, const Qrt2& y) { return x += y; }
    friend Qrt2 operator-(Qrt2 x, const Qrt2& y) { return x -= y; }
    friend Qrt2 operator*(Qrt2 x, const Qrt2& y) { return x *= y; }
    friend Qrt2 operator/(Qrt2 x, const Qrt2& y) { return x /= y; }

    friend bool operator==(const Qrt2& x, const Qrt2& y) {
        return x.rat_ == y.rat_ && x.irr_ == y.irr_;
    }

    /// Total order of the underlying reals.
    friend std::strong_ordering operator<=>(const Qrt2& x, const Qrt2& y) {
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    BigRational rat_{0};
    BigRational irr_{0};
};

inline int sign(const Qrt2& x) { return x.sign(); }

/// Textual form "a", "b*sqrt2" or "a+b*sqrt2" / "a-b*sqrt2".
inline std::string to_string(const Qrt2& x) {
    if (x.is_rational()) return to_string(x.rat());
    std::string irr;
    const BigRational& b = x.irr();
    if (b == 1)
        irr = "sqrt2";
    else if (b == -1)
        irr = "-sqrt2";
    else
        irr = to_string(b) + "*sqrt2";
    if (sgn(x.rat()) == 0) return irr;
    std::string out = to_string(x.rat());
    if (irr.front() != '-') out += '+';
    return out + irr;
}

/// Parses the textual form produced by to_string, also accepting "+-".
inline Qrt2 parse_qrt2(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw ParseError("empty Q(sqrt2) literal");
    auto pos = s.find("sqrt2");
    if (pos == std::string::npos) return Qrt2(parse_rational(s));
    if (pos + 5 != s.size()) throw ParseError("malformed Q(sqrt2) literal: '" + s + "'");
    std::string head = s.substr(0, pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    // head is "[a(+|-)][b]" with b possibly empty, "+", "-".
    std::size_t split = std::string::npos;
    for (std::size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] >= '0' && head[i - 1] <= '9') {
            split = i;
            break;
        }
    }
    std::string a_part, b_part = head;
    if (split != std::string::npos) {
        a_part = head.substr(0, split);
        b_part = head.substr(split);
        if (b_part.size() >= 2 && b_part[0] == '+' && (b_part[1] == '-' || b_part[1] == '+'))
            b_part.erase(0, 1);
    }
    if (!a_part.empty() && (a_part.back() == '+' || a_part.back() == '-'))
        throw ParseError("malformed Q(sqrt2) literal: '" + s + "'");
    BigRational b;
    if (b_part.empty() || b_part == "+")
        b = 1;
    else if (b_part == "-")
        b = -1;
    else
        b = parse_rational(b_part);
    BigRational a = a_part.empty() ? BigRational(0) : parse_rational(a_part);
    return {a, b};
}

}  // namespace logcert
