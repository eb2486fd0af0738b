#pragma once

/**
 * @file parse.hpp
 * @brief Text syntax for Q(sqrt 2) polynomials and rational functions in n.
 *
 * Input is an arithmetic expression over integers, the variable n and the
 * constant sqrt2 with + - * / ^ and parentheses; juxtaposition such as
 * "16(n+1)" multiplies. A polynomial may also be given as an ascending
 * coefficient list "[c0, c1, ...]" whose entries use the Qrt2 syntax.
 *
 * Output is "c_k*n^k + ... + c_0", with mixed Q(sqrt 2) coefficients in
 * parentheses, and "(num)/(den)" for proper rational functions.
 */

#include "logcert/rational_function.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace logcert {

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_factor() {
        char c = peek();
        return c == '(' || c == 'n' || c == 's' || std::isdigit(static_cast<unsigned char>(c));
    }

    RatFunc expr() {
        RatFunc acc = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= unary();
            } else if (c == '/') {
                ++pos_;
                RatFunc d = unary();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else if (starts_factor()) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    RatFunc power() {
        RatFunc base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
            if (e > 4096) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    RatFunc atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFunc::constant(Qrt2(BigInt(std::string(s_.substr(start, pos_ - start)), 10)));
        }
        if (s_.substr(pos_, 5) == "sqrt2") {
            pos_ += 5;
            return RatFunc::constant(Qrt2::sqrt2());
        }
        if (c == 'n') {
            ++pos_;
            return RatFunc::variable();
        }
        fail("expected number, n, sqrt2 or '('");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline std::vector<std::string> split_list(std::string_view body) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            items.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !items.empty()) items.push_back(cur);
    return items;
}

inline bool is_blank(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view text) {
    if (detail::is_blank(text)) throw ParseError("empty expression");
    return detail::ExprParser(text).parse();
}

/// Ascending coefficient list in Qrt2 syntax.
inline Poly poly_from_coefficients(const std::vector<std::string>& coeffs) {
    std::vector<Qrt2> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(parse_qrt2(s));
    return Poly(std::move(c));
}

/// Accepts either an expression in n or a bracketed coefficient list.
inline Poly parse_polynomial(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '[') {
        auto close = text.rfind(']');
        if (close == std::string_view::npos || close < i) throw ParseError("unterminated coefficient list");
        if (!detail::is_blank(text.substr(close + 1))) throw ParseError("trailing text after coefficient list");
        auto items = detail::split_list(text.substr(i + 1, close - i - 1));
        if (items.size() == 1 && detail::is_blank(items[0])) items.clear();
        return poly_from_coefficients(items);
    }
    RatFunc r = parse_ratfunc(text);
    if (!r.is_polynomial()) throw ParseError("expected a polynomial: '" + std::string(text) + "'");
    return r.num().scaled(Qrt2(1) / r.den().leading());
}

namespace detail {

inline std::string monomial_text(std::size_t k) {
    if (k == 0) return "";
    if (k == 1) return "n";
    return "n^" + std::to_string(k);
}

}  // namespace detail

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    auto coeffs = p.coefficients();
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Qrt2& c = coeffs[k];
        if (c.is_zero()) continue;
        const bool mixed = !c.is_rational() && sgn(c.rat()) != 0;
        bool negative = !mixed && c.sign() < 0;
        Qrt2 mag = negative ? -c : c;
        std::string body;
        std::string mono = detail::monomial_text(k);
        if (mixed) {
            body = "(" + to_string(mag) + ")";
            if (!mono.empty()) body += "*" + mono;
        } else if (mag == Qrt2(1) && !mono.empty()) {
            body = mono;
        } else {
            body = to_string(mag);
            if (!mono.empty()) body += "*" + mono;
        }
        if (first)
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline std::string to_string(const RatFunc& r) {
    if (r.is_polynomial()) return to_string(r.num());
    return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

/// Ascending coefficient strings, the form used in recurrence files.
inline std::vector<std::string> coefficient_strings(const Poly& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coefficients()) out.push_back(to_string(c));
    return out;
}

}  // namespace logcert
