#pragma once

/**
 * @file seqcheck.hpp
 * @brief Exact finite-range checks of log-behavior, L/R iterates and conjecture evidence.
 *
 * Every comparison is done on exact rationals. A check "at n" compares the
 * terms around index n, so check_range(s, p, from, to) inspects the centers
 * n in [from, to] that have all neighbours inside the sequence. Reports from
 * this module are empirical; they never claim a proof.
 */

#include "logcert/recurrence.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logcert {

enum class Property {
    LogConcave,
    StrictLogConcave,
    LogConvex,
    StrictLogConvex,
    RatioLogConcave,
    RatioLogConvex,
    NthRootLogConcave,
    FactorialLogConvex,
    LogBalanced,
};

inline const char* to_string(Property p) {
    switch (p) {
        case Property::LogConcave: return "log-concave";
        case Property::StrictLogConcave: return "strict-log-concave";
        case Property::LogConvex: return "log-convex";
        case Property::StrictLogConvex: return "strict-log-convex";
        case Property::RatioLogConcave: return "ratio-log-concave";
        case Property::RatioLogConvex: return "ratio-log-convex";
        case Property::NthRootLogConcave: return "nth-root-log-concave";
        case Property::FactorialLogConvex: return "factorial-log-convex";
        case Property::LogBalanced: return "log-balanced";
    }
    return "?";
}

inline Property parse_property(std::string_view s) {
    for (Property p : {Property::LogConcave, Property::StrictLogConcave, Property::LogConvex,
                       Property::StrictLogConvex, Property::RatioLogConcave, Property::RatioLogConvex,
                       Property::NthRootLogConcave, Property::FactorialLogConvex, Property::LogBalanced})
        if (s == to_string(p)) return p;
    throw Error("unknown property '" + std::string(s) + "'");
}

struct CheckOptions {
    /// n-th root comparisons raise terms to powers of order n^2.
    std::int64_t nth_root_cap = 200;
    /// Skip the truncated-bound shortcut and always raise to the full powers.
    bool exact_powers = false;
    bool collect_margins = false;
};

struct Comparison {
    std::int64_t n = 0;
    bool holds = false;
    std::optional<BigRational> lhs, rhs;
    std::string relation;
    std::string detail;
};

struct PropertyReport {
    std::string property;
    std::string sequence;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::int64_t from = 0;
    std::int64_t to = 0;
    bool holds = true;
    std::optional<std::int64_t> fails_at;
    std::optional<Comparison> counterexample;
    std::string label = "empirical";
    std::string note;
    double elapsed_ms = 0;
    std::vector<PropertyReport> levels;
    /// lhs - rhs per checked n (only when requested).
    std::vector<std::pair<std::int64_t, BigRational>> margins;
};

namespace detail {

/// Sign of a - b for positive rationals given as products of powers.
inline int compare_nth_root(const BigRational& prev, const BigRational& mid, const BigRational& next, std::int64_t n) {
    const auto un = static_cast<unsigned long>(n);
    // mid^(2(n-1)(n+1)) vs prev^(n(n+1)) * next^(n(n-1)), cross-multiplied.
    BigInt lhs_num, lhs_den, a, b, c, d;
    const unsigned long e_mid = 2 * (un - 1) * (un + 1), e_prev = un * (un + 1), e_next = un * (un - 1);
    mpz_pow_ui(lhs_num.get_mpz_t(), mid.get_num_mpz_t(), e_mid);
    mpz_pow_ui(lhs_den.get_mpz_t(), mid.get_den_mpz_t(), e_mid);
    mpz_pow_ui(a.get_mpz_t(), prev.get_num_mpz_t(), e_prev);
    mpz_pow_ui(b.get_mpz_t(), prev.get_den_mpz_t(), e_prev);
    mpz_pow_ui(c.get_mpz_t(), next.get_num_mpz_t(), e_next);
    mpz_pow_ui(d.get_mpz_t(), next.get_den_mpz_t(), e_next);
    BigInt left = lhs_num * b * d;
    BigInt right = a * c * lhs_den;
    return cmp(left, right);
}

/// m * 2^e with m > 0, used as a one-sided bound on a huge positive integer.
struct ScaledBound {
    BigInt m;
    long e = 0;
};

/// Drops low bits of m beyond `bits`, rounding down or up.
inline void truncate_bound(ScaledBound& x, std::size_t bits, bool up) {
    const std::size_t size = mpz_sizeinbase(x.m.get_mpz_t(), 2);
    if (size <= bits) return;
    const auto drop = static_cast<mp_bitcnt_t>(size - bits);
    const bool inexact = mpz_scan1(x.m.get_mpz_t(), 0) < drop;
    mpz_fdiv_q_2exp(x.m.get_mpz_t(), x.m.get_mpz_t(), drop);
    if (up && inexact) x.m += 1;
    x.e += static_cast<long>(drop);
}

inline ScaledBound multiply_bound(const ScaledBound& a, const ScaledBound& b, std::size_t bits, bool up) {
    ScaledBound r{a.m * b.m, a.e + b.e};
    truncate_bound(r, bits, up);
    return r;
}

/// Lower (up = false) or upper bound on x^k for a positive integer x.
inline ScaledBound power_bound(const BigInt& x, unsigned long k, std::size_t bits, bool up) {
    ScaledBound result{BigInt(1), 0}, base{x, 0};
    truncate_bound(base, bits, up);
    while (k) {
        if (k & 1) result = multiply_bound(result, base, bits, up);
        k >>= 1;
        if (k) base = multiply_bound(base, base, bits, up);
    }
    return result;
}

/// Exact comparison of m1 * 2^e1 with m2 * 2^e2.
inline int compare_bounds(const ScaledBound& a, const ScaledBound& b) {
    BigInt x = a.m, y = b.m;
    if (a.e > b.e) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(a.e - b.e));
    else mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e - a.e));
    return cmp(x, y);
}

/// Sign of mid^(2(n-1)(n+1)) - prev^(n(n+1)) next^(n(n-1)) decided from
/// truncated integer bounds; 0 when the bounds overlap at every precision tried.
inline int bounded_nth_root(const BigRational& prev, const BigRational& mid, const BigRational& next, std::int64_t n) {
    const auto un = static_cast<unsigned long>(n);
    const unsigned long e_mid = 2 * (un - 1) * (un + 1), e_prev = un * (un + 1), e_next = un * (un - 1);
    for (std::size_t bits : {256u, 1024u, 4096u}) {
        auto side = [&](bool up, bool left) {
            // left:  mid_num^e_mid * prev_den^e_prev * next_den^e_next
            // right: prev_num^e_prev * next_num^e_next * mid_den^e_mid
            const BigInt& x = left ? mid.get_num() : prev.get_num();
            const BigInt& y = left ? prev.get_den() : next.get_num();
            const BigInt& z = left ? next.get_den() : mid.get_den();
            const unsigned long ex = left ? e_mid : e_prev, ey = left ? e_prev : e_next, ez = left ? e_next : e_mid;
            ScaledBound r = multiply_bound(power_bound(x, ex, bits, up), power_bound(y, ey, bits, up), bits, up);
            return multiply_bound(r, power_bound(z, ez, bits, up), bits, up);
        };
        if (compare_bounds(side(false, true), side(true, false)) > 0) return 1;
        if (compare_bounds(side(true, true), side(false, false)) < 0) return -1;
    }
    return 0;
}

inline int needed_back(Property p) {
    switch (p) {
        case Property::RatioLogConcave:
        case Property::RatioLogConvex: return 2;
        default: return 1;
    }
}

inline Comparison compare_at(const SequenceView& s, Property p, std::int64_t n, bool exact_powers = false) {
    Comparison c;
    c.n = n;
    auto S = [&](std::int64_t k) { return s.term(k); };
    switch (p) {
        case Property::LogConcave:
        case Property::StrictLogConcave:
        case Property::LogConvex:
        case Property::StrictLogConvex: {
            BigRational lhs = S(n) * S(n);
            BigRational rhs = S(n - 1) * S(n + 1);
            int k = cmp(lhs, rhs);
            if (p == Property::LogConcave) c.holds = k >= 0, c.relation = ">=";
            if (p == Property::StrictLogConcave) c.holds = k > 0, c.relation = ">";
            if (p == Property::LogConvex) c.holds = k <= 0, c.relation = "<=";
            if (p == Property::StrictLogConvex) c.holds = k < 0, c.relation = "<";
            c.lhs = std::move(lhs);
            c.rhs = std::move(rhs);
            break;
        }
        case Property::RatioLogConcave:
        case Property::RatioLogConvex: {
            const BigRational s2 = S(n - 2), s1 = S(n - 1), s0 = S(n), sp = S(n + 1);
            int k;
            if (sgn(s2) * sgn(s0) > 0) {
                // (S_n/S_{n-1})^2 vs (S_{n-1}/S_{n-2})(S_{n+1}/S_n), times S_{n-1}^2 S_{n-2} S_n > 0.
                BigRational lhs = s0 * s0 * s0 * s2;
                BigRational rhs = s1 * s1 * s1 * sp;
                k = cmp(lhs, rhs);
                c.lhs = std::move(lhs);
                c.rhs = std::move(rhs);
                c.detail = "cross-multiplied";
            } else {
                if (sgn(s1) == 0 || sgn(s2) == 0 || sgn(s0) == 0) throw DivisionByZero("zero term in ratio check");
                BigRational r = s0 / s1;
                BigRational lhs = r * r;
                BigRational rhs = (s1 / s2) * (sp / s0);
                k = cmp(lhs, rhs);
                c.lhs = std::move(lhs);
                c.rhs = std::move(rhs);
                c.detail = "ratio form";
            }
            c.holds = p == Property::RatioLogConcave ? k >= 0 : k <= 0;
            c.relation = p == Property::RatioLogConcave ? ">=" : "<=";
            break;
        }
        case Property::NthRootLogConcave: {
            const BigRational prev = S(n - 1), mid = S(n), next = S(n + 1);
            if (sgn(prev) <= 0 || sgn(mid) <= 0 || sgn(next) <= 0)
                throw Error("n-th root check needs positive terms");
            int k = exact_powers ? 0 : bounded_nth_root(prev, mid, next, n);
            c.detail = "S_n^(2(n-1)(n+1)) vs S_{n-1}^(n(n+1)) S_{n+1}^(n(n-1))";
            if (k == 0) {
                k = compare_nth_root(prev, mid, next, n);
                c.detail += ", full powers";
            } else {
                c.detail += ", truncated bounds";
            }
            c.holds = k > 0;
            c.relation = ">";
            break;
        }
        case Property::FactorialLogConvex: {
            BigRational lhs = BigRational(static_cast<long>(n)) * S(n) * S(n);
            BigRational rhs = BigRational(static_cast<long>(n + 1)) * S(n - 1) * S(n + 1);
            c.holds = lhs < rhs;
            c.relation = "<";
            c.lhs = std::move(lhs);
            c.rhs = std::move(rhs);
            break;
        }
        case Property::LogBalanced: {
            // Log-convex, and S_n/n! log-concave: S_n^2 (n+1)/n >= S_{n-1} S_{n+1}.
            BigRational sq = S(n) * S(n);
            BigRational rhs = S(n - 1) * S(n + 1);
            bool convex = sq <= rhs;
            BigRational scaled = sq * BigRational(static_cast<long>(n + 1), static_cast<long>(n));
            bool concave_over_fact = scaled >= rhs;
            c.holds = convex && concave_over_fact;
            c.relation = "S_n^2 <= S_{n-1}S_{n+1} <= S_n^2 (n+1)/n";
            c.lhs = std::move(sq);
            c.rhs = std::move(rhs);
            if (!convex) c.detail = "not log-convex";
            else if (!concave_over_fact) c.detail = "S_n/n! not log-concave";
            break;
        }
    }
    return c;
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Checks the property at every center n in [from, to] (the start is raised to
/// the first index with all neighbours available).
inline PropertyReport check_range(const SequenceView& s, Property p, std::int64_t from, std::int64_t to,
                                  const CheckOptions& options = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    PropertyReport r;
    r.property = to_string(p);
    r.sequence = s.name();
    std::int64_t start = std::max(from, s.first_index() + detail::needed_back(p));
    if (p == Property::NthRootLogConcave || p == Property::FactorialLogConvex || p == Property::LogBalanced)
        start = std::max<std::int64_t>(start, p == Property::NthRootLogConcave ? 2 : 1);
    std::int64_t end = to;
    if (s.last_index()) end = std::min(end, *s.last_index() - 1);
    if (p == Property::NthRootLogConcave && end > options.nth_root_cap) {
        end = options.nth_root_cap;
        r.note = "range truncated at nth-root cap " + std::to_string(options.nth_root_cap);
    }
    if (from > to || start > end)
        throw Error("insufficient range for " + r.property + " on " + r.sequence + ": [" + std::to_string(from) +
                    ", " + std::to_string(to) + "]");
    r.from = start;
    r.to = end;
    for (std::int64_t n = start; n <= end; ++n) {
        Comparison c = detail::compare_at(s, p, n, options.exact_powers);
        if (options.collect_margins && c.lhs && c.rhs) r.margins.emplace_back(n, *c.lhs - *c.rhs);
        if (!c.holds) {
            r.holds = false;
            r.fails_at = n;
            r.counterexample = std::move(c);
            break;
        }
    }
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// Log-convexity of L^i(s) for 0 <= i < k, each on the centers of [from, to]
/// that survive the index shift.
inline PropertyReport check_k_logconvex(const SequenceView& s, int k, std::int64_t from, std::int64_t to,
                                        const CheckOptions& options = {}) {
    if (k < 1) throw Error("k-log-convexity needs k >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    PropertyReport r;
    r.property = "k-log-convex";
    r.sequence = s.name();
    r.parameters.emplace_back("k", std::to_string(k));
    r.from = from;
    r.to = to;
    SequenceView level = s;
    for (int i = 0; i < k; ++i) {
        if (i > 0) level = l_operator(level);
        PropertyReport lr = check_range(level, Property::LogConvex, from, to, options);
        lr.parameters.emplace_back("level", std::to_string(i));
        if (!lr.holds && r.holds) {
            r.holds = false;
            r.fails_at = lr.fails_at;
            r.counterexample = lr.counterexample;
            r.note = "fails at L-level " + std::to_string(i);
        }
        r.levels.push_back(std::move(lr));
        if (!r.holds) break;
    }
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// {V_n^2 - V_{n-1} V_{n+1}}_{n >= 2}.
inline SequenceView flf_lseq() { return l_operator(SequenceView::of(builtin("flf"))).negated().restrict_from(2); }

/// R^k(s) with indices below first(s) + k dropped.
inline SequenceView r_iterate_dropped(const SequenceView& s, int k) {
    SequenceView out = s;
    for (int i = 0; i < k; ++i) out = r_operator(out);
    return out.restrict_from(s.first_index() + k);
}

/// Finite-depth, finite-range evidence for the three open conjectures:
///   infinite log-convexity of {V_n^2 - V_{n-1}V_{n+1}},
///   R^k(P) log-concave for odd k and log-convex for even k,
///   R^k(V_{n>=1}) log-convex for odd k and log-concave for even k.
inline std::vector<PropertyReport> check_conjectures(int depth_cap, std::int64_t range_cap,
                                                     const CheckOptions& options = {}) {
    if (depth_cap < 1) throw Error("depth cap must be at least 1");
    if (range_cap < 10) throw Error("range cap must be at least 10");
    std::vector<PropertyReport> out;

    auto finish = [&](PropertyReport& r, std::chrono::steady_clock::time_point t0) {
        for (const auto& lvl : r.levels) {
            if (!lvl.holds && r.holds) {
                r.holds = false;
                r.fails_at = lvl.fails_at;
                r.counterexample = lvl.counterexample;
            }
        }
        r.label = "empirical evidence only";
        r.elapsed_ms = detail::ms_since(t0);
        out.push_back(std::move(r));
    };

    {
        const auto t0 = std::chrono::steady_clock::now();
        PropertyReport r = check_k_logconvex(flf_lseq(), depth_cap, 2, range_cap, options);
        r.property = "conjecture: infinitely log-convex";
        r.parameters.emplace_back("depth", std::to_string(depth_cap));
        finish(r, t0);
    }

    auto parity = [&](const char* title, const SequenceView& base, bool odd_concave) {
        const auto t0 = std::chrono::steady_clock::now();
        PropertyReport r;
        r.property = title;
        r.sequence = base.name();
        r.parameters.emplace_back("depth", std::to_string(depth_cap));
        r.from = base.first_index();
        r.to = range_cap;
        for (int k = 1; k <= depth_cap; ++k) {
            const bool concave = (k % 2 == 1) == odd_concave;
            PropertyReport lr = check_range(r_iterate_dropped(base, k),
                                            concave ? Property::LogConcave : Property::LogConvex, 0, range_cap, options);
            lr.parameters.emplace_back("k", std::to_string(k));
            r.levels.push_back(std::move(lr));
        }
        finish(r, t0);
    };
    parity("conjecture: R^k(P) parity pattern", SequenceView::of(builtin("clf")), true);
    parity("conjecture: R^k(V) parity pattern", SequenceView::of(builtin("flf")).restrict_from(1), false);
    return out;
}

}  // namespace logcert
