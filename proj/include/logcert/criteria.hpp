#pragma once

/**
 * @file criteria.hpp
 * @brief Certification schemas for log-behavior of order-2 recurrence sequences.
 *
 * Each schema reduces an infinite family of inequalities to a handful of sign
 * conditions on explicit rational functions of n (proved by sign_for_all),
 * plus ratio bounds proved by induction and an exact check of the small
 * indices below the certified start.
 *
 *   thm31      (S_n^2 - S_{n-1}S_{n+1}) strictly log-convex, via the cubic
 *              c3 x^3 + c2 x^2 + c1 x + c0 in x = S_n/S_{n-1}.
 *   thm41      ratio log-concave, via the quartic
 *              h(x) = x^4 - a(n)x^3 - a(n+1)b(n)x - b(n)b(n+1).
 *   thm42      ratio log-convex, same quartic with a single lower bound.
 *   factorial  n! S_n strictly log-convex, via r(n)/r(n+1) < (n+1)/n.
 *
 * Indices in small cases and conclusion_from always refer to the concluded
 * inequality at index n as listed in concluded_inequality().
 */

#include "logcert/bounds.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logcert {

enum class Schema { Thm31, Thm41, Thm42, Factorial };

inline const char* to_string(Schema s) {
    switch (s) {
        case Schema::Thm31: return "thm31";
        case Schema::Thm41: return "thm41";
        case Schema::Thm42: return "thm42";
        case Schema::Factorial: return "factorial";
    }
    return "?";
}

inline Schema parse_schema(std::string_view s) {
    if (s == "thm31") return Schema::Thm31;
    if (s == "thm41") return Schema::Thm41;
    if (s == "thm42") return Schema::Thm42;
    if (s == "factorial") return Schema::Factorial;
    throw Error("unknown schema '" + std::string(s) + "' (expected thm31, thm41, thm42 or factorial)");
}

struct CubicCoefficients {
    RatFunc c0, c1, c2, c3;
    RatFunc delta;
};

/// c0..c3 and delta = 4 c2^2 - 12 c1 c3 built from shifts of a and b.
inline CubicCoefficients cubic_coeffs(const Recurrence2& rec) {
    const RatFunc a1 = rec.a().shift(1), a2 = rec.a().shift(2), a3 = rec.a().shift(3);
    const RatFunc b1 = rec.b().shift(1), b2 = rec.b().shift(2), b3 = rec.b().shift(3);
    auto k = [](long v) { return RatFunc::constant(Qrt2(v)); };

    CubicCoefficients c;
    c.c0 = -(b1 * b1) * (a2 * a2 + b1 - a2 * a3 - b3);
    c.c1 = b1 * (k(2) * a2 * b1 + k(2) * a3 * a2 * a1 + a3 * b2 + k(2) * a1 * b3 - k(2) * a2 * a2 * a1 -
                 k(2) * a2 * b2 - k(3) * a1 * b1);
    c.c2 = k(4) * a1 * a2 * b1 + k(2) * b1 * b2 + a1 * a1 * a2 * a3 + a1 * a3 * b2 + a1 * a1 * b3 -
           k(3) * a1 * a1 * b1 - a3 * a2 * b1 - a2 * a2 * a1 * a1 - b3 * b1 - k(2) * a2 * a1 * b2 - b2 * b2;
    c.c3 = k(2) * a1 * a1 * a2 + k(2) * a1 * b2 - a1 * b3 - a1 * a1 * a1 - a1 * a2 * a3 - a3 * b2;
    c.delta = k(4) * c.c2 * c.c2 - k(12) * c.c1 * c.c3;
    return c;
}

/// Discriminant of w'(x) = 3 c3 x^2 + 2 c2 x + c1.
inline RatFunc derivative_discriminant(const CubicCoefficients& c) {
    const RatFunc two_c2 = RatFunc::constant(Qrt2(2)) * c.c2;
    return two_c2 * two_c2 - RatFunc::constant(Qrt2(4)) * (RatFunc::constant(Qrt2(3)) * c.c3) * c.c1;
}

struct NamedCondition {
    std::string name;
    PositivityCertificate cert;
};

/// One exact evaluation of the concluded inequality, lhs (relation) rhs.
struct SmallCase {
    std::int64_t n = 0;
    BigRational lhs;
    BigRational rhs;
    std::string relation;
    bool holds = false;
};

struct CriterionCertificate {
    Schema schema = Schema::Thm31;
    std::string recurrence;
    std::vector<BoundCertificate> bound_inputs;
    std::vector<NamedCondition> conditions;
    std::vector<SmallCase> small_cases;
    Verdict verdict = Verdict::Inconclusive;
    /// First index of the concluded inequality (small cases included).
    std::int64_t conclusion_from = 0;
    /// First index covered by the symbolic argument.
    std::int64_t certified_from = 0;
    std::optional<std::int64_t> refuted_at;
    std::string diagnostics;
    std::string variant;

    bool proved() const { return verdict == Verdict::Proved; }

    const NamedCondition* condition(std::string_view name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Smallest index at which the schema's concluded inequality makes sense.
inline std::int64_t first_meaningful_index(Schema schema) {
    switch (schema) {
        case Schema::Thm31: return 2;
        case Schema::Thm41:
        case Schema::Thm42: return 2;
        case Schema::Factorial: return 1;
    }
    return 1;
}

/// The schema's conclusion at index n, evaluated exactly from terms:
///   thm31      (S_n^2 - S_{n-1}S_{n+1})^2 < (S_{n-1}^2 - S_{n-2}S_n)(S_{n+1}^2 - S_nS_{n+2})
///   thm41      (S_n/S_{n-1})^2 >= (S_{n-1}/S_{n-2})(S_{n+1}/S_n)
///   thm42      (S_n/S_{n-1})^2 <= (S_{n-1}/S_{n-2})(S_{n+1}/S_n)
///   factorial  n S_n^2 < (n+1) S_{n-1} S_{n+1}
inline SmallCase concluded_inequality(Schema schema, const Recurrence2& rec, std::int64_t n) {
    auto S = [&](std::int64_t k) { return rec.term(k); };
    SmallCase sc;
    sc.n = n;
    switch (schema) {
        case Schema::Thm31: {
            BigRational mid = S(n) * S(n) - S(n - 1) * S(n + 1);
            BigRational lo = S(n - 1) * S(n - 1) - S(n - 2) * S(n);
            BigRational hi = S(n + 1) * S(n + 1) - S(n) * S(n + 2);
            sc.lhs = mid * mid;
            sc.rhs = lo * hi;
            sc.relation = "<";
            sc.holds = sc.lhs < sc.rhs;
            break;
        }
        case Schema::Thm41:
        case Schema::Thm42: {
            BigRational r = S(n) / S(n - 1);
            sc.lhs = r * r;
            sc.rhs = (S(n - 1) / S(n - 2)) * (S(n + 1) / S(n));
            sc.relation = schema == Schema::Thm41 ? ">=" : "<=";
            sc.holds = schema == Schema::Thm41 ? sc.lhs >= sc.rhs : sc.lhs <= sc.rhs;
            break;
        }
        case Schema::Factorial: {
            sc.lhs = BigRational(static_cast<long>(n)) * S(n) * S(n);
            sc.rhs = BigRational(static_cast<long>(n + 1)) * S(n - 1) * S(n + 1);
            sc.relation = "<";
            sc.holds = sc.lhs < sc.rhs;
            break;
        }
    }
    return sc;
}

namespace detail {

class CriterionBuilder {
public:
    CriterionBuilder(Schema schema, const Recurrence2& rec, const ProverConfig& config)
        : rec_(rec), config_(config) {
        cert_.schema = schema;
        cert_.recurrence = rec.name();
        cert_.verdict = Verdict::Proved;
    }

    const PositivityCertificate& require(std::string name, const RatFunc& x, std::int64_t from, Relation rel) {
        PositivityCertificate pc;
        try {
            pc = sign_for_all(x, from, rel, config_);
        } catch (const PoleError& e) {
            pc.subject = x;
            pc.from = from;
            pc.relation = rel;
            pc.verdict = Verdict::Inconclusive;
            pc.diagnostics = e.what();
        }
        note(name, pc.verdict, pc.refuted_at, pc.diagnostics);
        cert_.conditions.push_back({std::move(name), std::move(pc)});
        return cert_.conditions.back().cert;
    }

    /// Tries the relation without recording it.
    std::optional<PositivityCertificate> attempt(const RatFunc& x, std::int64_t from, Relation rel) {
        try {
            auto pc = sign_for_all(x, from, rel, config_);
            if (pc.proved()) return pc;
        } catch (const PoleError&) {
        }
        return std::nullopt;
    }

    void bound(const BoundSpec& spec, const std::optional<BoundSpec>& companion = std::nullopt) {
        auto bc = verify_ratio_bound(rec_, spec, companion, config_);
        note("bound " + spec.name, bc.verdict, bc.refuted_at, bc.diagnostics);
        cert_.bound_inputs.push_back(std::move(bc));
    }

    CriterionCertificate finish(std::int64_t certified_from, std::optional<std::int64_t> conclusion_start) {
        const Schema schema = cert_.schema;
        cert_.certified_from = certified_from;
        cert_.conclusion_from = conclusion_start.value_or(certified_from);
        if (cert_.conclusion_from < first_meaningful_index(schema))
            throw Error("conclusion start below the first meaningful index");
        for (std::int64_t n = cert_.conclusion_from; n < certified_from; ++n) {
            SmallCase sc = concluded_inequality(schema, rec_, n);
            if (!sc.holds && cert_.verdict != Verdict::Refuted) {
                cert_.verdict = Verdict::Refuted;
                cert_.refuted_at = n;
                cert_.diagnostics = "small case fails at n=" + std::to_string(n);
            }
            cert_.small_cases.push_back(std::move(sc));
        }
        return std::move(cert_);
    }

    CriterionCertificate& cert() { return cert_; }

private:
    void note(const std::string& name, Verdict v, std::optional<std::int64_t> at, const std::string& why) {
        if (cert_.verdict == Verdict::Refuted) return;
        if (v == Verdict::Refuted) {
            cert_.verdict = Verdict::Refuted;
            cert_.refuted_at = at;
            cert_.diagnostics = name + " fails" + (at ? " at n=" + std::to_string(*at) : std::string());
        } else if (v == Verdict::Inconclusive && cert_.verdict == Verdict::Proved) {
            cert_.verdict = Verdict::Inconclusive;
            cert_.diagnostics = name + " inconclusive" + (why.empty() ? std::string() : ": " + why);
        }
    }

    const Recurrence2& rec_;
    ProverConfig config_;
    CriterionCertificate cert_;
};

inline void require_side(const BoundSpec& b, Side side, const char* role) {
    if (b.side != side)
        throw Error(std::string(role) + " bound '" + b.name + "' must be a " + to_string(side) + " bound");
}

inline RatFunc constant(long v) { return RatFunc::constant(Qrt2(v)); }

}  // namespace detail

/// Strict log-convexity of {S_n^2 - S_{n-1}S_{n+1}} from a lower ratio bound f
/// valid from N; certified for the concluded inequality at n >= N + 1.
inline CriterionCertificate certify_Lseq_logconvex(const Recurrence2& rec, const BoundSpec& f, std::int64_t N,
                                                   std::optional<std::int64_t> conclusion_start = std::nullopt,
                                                   const ProverConfig& config = {}) {
    detail::require_side(f, Side::Lower, "thm31");
    detail::CriterionBuilder b(Schema::Thm31, rec, config);
    b.bound(f.from(N));

    const CubicCoefficients c = cubic_coeffs(rec);
    b.require("c3>0", c.c3, N, Relation::Positive);
    if (auto neg = b.attempt(c.delta, N, Relation::Negative)) {
        // w is increasing everywhere, so (II) is not needed.
        b.cert().variant = "delta<0";
        b.cert().conditions.push_back({"delta<0", std::move(*neg)});
    } else {
        b.require("delta>0", c.delta, N, Relation::Positive);
        const RatFunc lin = detail::constant(6) * c.c3 * f.f + detail::constant(2) * c.c2;
        b.require("6c3f+2c2>0", lin, N, Relation::Positive);
        b.require("(6c3f+2c2)^2-delta>0", lin * lin - c.delta, N, Relation::Positive);
    }
    const RatFunc w = ((c.c3 * f.f + c.c2) * f.f + c.c1) * f.f + c.c0;
    b.require("c3f^3+c2f^2+c1f+c0>0", w, N, Relation::Positive);
    return b.finish(N + 1, conclusion_start);
}

/// Ratio log-concavity from a(n) > 0, b(n) < 0 for n >= N and bounds
/// u <= S_n/S_{n-1} <= v; certified for n >= N + 2.
inline CriterionCertificate certify_ratio_logconcave(const Recurrence2& rec, const BoundSpec& u, const BoundSpec& v,
                                                     std::int64_t N,
                                                     std::optional<std::int64_t> conclusion_start = std::nullopt,
                                                     const ProverConfig& config = {}) {
    detail::require_side(u, Side::Lower, "thm41");
    detail::require_side(v, Side::Upper, "thm41");
    detail::CriterionBuilder b(Schema::Thm41, rec, config);
    const std::int64_t M = N + 2;
    const RatFunc& a = rec.a();
    const RatFunc& bb = rec.b();
    const RatFunc a_next = a.shift(1);
    b.require("a>0", a, N, Relation::Positive);
    b.require("b<0", bb, N, Relation::Negative);
    b.bound(u.from(M));
    b.bound(v.from(M), u);
    b.require("u-a/2>=0", u.f - a * RatFunc::constant(Qrt2(BigRational(1, 2))), M, Relation::NonNegative);
    const RatFunc& x = u.f;
    b.require("(ii)", detail::constant(4) * x.pow(3) - detail::constant(3) * a * x * x - a_next * bb, M,
              Relation::NonNegative);
    const RatFunc& y = v.f;
    b.require("(iii)", y.pow(4) - a * y.pow(3) - a_next * bb * y - bb * bb.shift(1), M, Relation::NonPositive);
    return b.finish(M, conclusion_start);
}

/// Ratio log-convexity from a(n) > 0, b(n) < 0 for n >= N and a lower bound
/// g <= S_n/S_{n-1}; certified for n >= N + 2.
inline CriterionCertificate certify_ratio_logconvex(const Recurrence2& rec, const BoundSpec& g, std::int64_t N,
                                                    std::optional<std::int64_t> conclusion_start = std::nullopt,
                                                    const ProverConfig& config = {}) {
    detail::require_side(g, Side::Lower, "thm42");
    detail::CriterionBuilder b(Schema::Thm42, rec, config);
    const std::int64_t M = N + 2;
    const RatFunc& a = rec.a();
    const RatFunc& bb = rec.b();
    const RatFunc a_next = a.shift(1);
    b.require("a>0", a, N, Relation::Positive);
    b.require("b<0", bb, N, Relation::Negative);
    b.bound(g.from(M));
    const RatFunc& x = g.f;
    b.require("g-a/2>=0", x - a * RatFunc::constant(Qrt2(BigRational(1, 2))), M, Relation::NonNegative);
    b.require("(ii')", detail::constant(4) * x.pow(3) - detail::constant(3) * a * x * x - a_next * bb, M,
              Relation::NonNegative);
    b.require("(iii')", x.pow(4) - a * x.pow(3) - a_next * bb * x - bb * bb.shift(1), M, Relation::NonNegative);
    return b.finish(M, conclusion_start);
}

/// U(n) / (a(n+1) + b(n+1)/L(n)) - (n+1)/n, the bound on r(n)/r(n+1) - (n+1)/n.
inline RatFunc factorial_difference(const Recurrence2& rec, const RatFunc& lower, const RatFunc& upper) {
    const RatFunc den = rec.a().shift(1) + rec.b().shift(1) / lower;
    return upper / den - parse_ratfunc("(n+1)/n");
}

/// Strict log-convexity of {n! S_n} from bounds L <= S_n/S_{n-1} <= U valid
/// from N; certified for n >= N.
inline CriterionCertificate certify_factorial_logconvex(const Recurrence2& rec, const BoundSpec& L, const BoundSpec& U,
                                                        std::int64_t N,
                                                        std::optional<std::int64_t> conclusion_start = std::nullopt,
                                                        const ProverConfig& config = {}) {
    detail::require_side(L, Side::Lower, "factorial");
    detail::require_side(U, Side::Upper, "factorial");
    if (N < 1) throw Error("factorial schema needs N >= 1");
    detail::CriterionBuilder b(Schema::Factorial, rec, config);
    b.require("b(n+1)<0", rec.b().shift(1), N, Relation::Negative);
    b.bound(L.from(N));
    b.bound(U.from(N), L);
    b.require("a(n+1)+b(n+1)/L>0", rec.a().shift(1) + rec.b().shift(1) / L.f, N, Relation::Positive);
    b.require("difference<0", factorial_difference(rec, L.f, U.f), N, Relation::Negative);
    return b.finish(N, conclusion_start);
}

/// Runs one schema. thm31 and thm42 use only the lower bound.
inline CriterionCertificate certify(Schema schema, const Recurrence2& rec, const BoundSpec& lower,
                                   const std::optional<BoundSpec>& upper, std::int64_t N,
                                   std::optional<std::int64_t> conclusion_start = std::nullopt,
                                   const ProverConfig& config = {}) {
    auto need_upper = [&]() -> const BoundSpec& {
        if (!upper) throw Error(std::string(to_string(schema)) + " needs an upper bound");
        return *upper;
    };
    switch (schema) {
        case Schema::Thm31: return certify_Lseq_logconvex(rec, lower, N, conclusion_start, config);
        case Schema::Thm41: return certify_ratio_logconcave(rec, lower, need_upper(), N, conclusion_start, config);
        case Schema::Thm42: return certify_ratio_logconvex(rec, lower, N, conclusion_start, config);
        case Schema::Factorial: return certify_factorial_logconvex(rec, lower, need_upper(), N, conclusion_start, config);
    }
    throw Error("unknown schema");
}

}  // namespace logcert
