#pragma once

/**
 * @file bounds.hpp
 * @brief Ratio bounds f(n) on S_n / S_{n-1} and their induction certificates.
 *
 * With r(n) = S_n / S_{n-1} the recurrence gives r(n+1) = a(n+1) + b(n+1)/r(n).
 * When b(n+1) < 0 the right side increases with r(n), so a strict base case
 * r(N) > f(N) together with a(n+1) + b(n+1)/f(n) - f(n+1) >= 0 for n >= N
 * gives r(n) > f(n) for all n >= N; upper bounds flip both signs. The
 * monotonicity step needs r(n) > 0, which a lower bound provides by itself
 * (f > 0) and an upper bound borrows from a companion lower bound.
 */

#include "logcert/positivity.hpp"
#include "logcert/recurrence.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace logcert {

enum class Side { Lower, Upper };

inline const char* to_string(Side s) { return s == Side::Lower ? "lower" : "upper"; }

struct BoundSpec {
    std::string name;
    Side side = Side::Lower;
    RatFunc f;
    std::int64_t valid_from = 1;
    bool strict = true;

    /// The same bound claimed from a different index.
    BoundSpec from(std::int64_t k) const {
        BoundSpec b = *this;
        b.valid_from = k;
        return b;
    }
};

/// s, t, l, ell, p, q and tau with their declared sides and windows.
inline BoundSpec builtin_bound(const std::string& name) {
    if (name == "s") return {"s", Side::Lower, parse_ratfunc("16(n^5+n^2+3n+12)/n^5"), 6};
    if (name == "t") return {"t", Side::Upper, parse_ratfunc("16(n+1)/n"), 6};
    if (name == "l") return {"l", Side::Lower, parse_ratfunc("24(3n^2-3n+1)/(5n^2)"), 1};
    if (name == "ell") return {"ell", Side::Upper, parse_ratfunc("16(n^3-n^2-1)/n^3"), 6};
    if (name == "p") return {"p", Side::Lower, parse_ratfunc("(33n^3-48n^2+24n-4)/n^3"), 2};
    if (name == "q")
        return {"q", Side::Upper,
                parse_ratfunc("17 + 12sqrt2 - (51/2 + 18sqrt2)/n + (27/2 + 609/64 sqrt2)/n^2"
                              " - (645/256 + 225/128 sqrt2)/n^3"),
                2};
    // V_2/V_1 = 18 = tau(2), so tau only bounds the ratio weakly.
    if (name == "tau") return {"tau", Side::Lower, parse_ratfunc("16(n^3+1)/n^3"), 2, false};
    throw Error("unknown built-in bound '" + name + "' (expected s, t, l, ell, p, q or tau)");
}

/// Built-in lower bound paired with a built-in upper bound for positivity.
inline std::optional<std::string> companion_of(const std::string& upper_name) {
    if (upper_name == "t") return "s";
    if (upper_name == "ell") return "l";
    if (upper_name == "q") return "p";
    return std::nullopt;
}

/// Ratios checked exactly before the induction takes over.
inline constexpr std::int64_t kMaxExtraBaseCases = 1000;

struct BaseCase {
    std::int64_t index = 0;
    BigRational ratio;
    Qrt2 bound_value;
    bool holds = false;
};

struct BoundCertificate {
    BoundSpec bound;
    std::string recurrence;
    /// Exact checks at valid_from .. induction_from.
    std::vector<BaseCase> base_cases;
    std::int64_t induction_from = 0;
    /// S_0 .. S_{valid_from} checked positive exactly.
    bool initial_terms_positive = false;
    /// f(n) > 0 (lower bounds only).
    std::optional<PositivityCertificate> bound_positive;
    /// Lower bound that keeps r(n) positive (upper bounds only).
    std::shared_ptr<const BoundCertificate> companion;
    std::optional<PositivityCertificate> b_sign;
    std::optional<PositivityCertificate> step;
    RatFunc step_function;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::int64_t> refuted_at;
    std::string diagnostics;

    bool proved() const { return verdict == Verdict::Proved; }
};

/// a(n+1) + b(n+1)/f(n) - f(n+1).
inline RatFunc induction_step_function(const Recurrence2& rec, const RatFunc& f) {
    return rec.a().shift(1) + rec.b().shift(1) / f - f.shift(1);
}

namespace detail {

inline void merge_verdict(BoundCertificate& cert, const PositivityCertificate& sub, const std::string& what) {
    if (cert.verdict == Verdict::Refuted) return;
    if (sub.verdict == Verdict::Refuted) {
        cert.verdict = Verdict::Refuted;
        cert.refuted_at = sub.refuted_at;
        cert.diagnostics = what + " fails at n=" + std::to_string(*sub.refuted_at);
    } else if (sub.verdict == Verdict::Inconclusive && cert.verdict == Verdict::Proved) {
        cert.verdict = Verdict::Inconclusive;
        cert.diagnostics = what + " inconclusive: " + sub.diagnostics;
    }
}

}  // namespace detail

inline BoundCertificate verify_ratio_bound(const Recurrence2& rec, const BoundSpec& bound,
                                           const std::optional<BoundSpec>& companion = std::nullopt,
                                           const ProverConfig& config = {}) {
    BoundCertificate cert;
    cert.bound = bound;
    cert.recurrence = rec.name();
    cert.verdict = Verdict::Proved;
    const std::int64_t n0 = bound.valid_from;
    try {
        if (n0 < 1) throw Error("bound window must start at n >= 1");

        cert.initial_terms_positive = true;
        for (std::int64_t k = 0; k <= n0; ++k)
            if (sgn(rec.term(k)) <= 0) cert.initial_terms_positive = false;
        if (!cert.initial_terms_positive) {
            cert.verdict = Verdict::Inconclusive;
            cert.diagnostics = "sequence not positive on [0, valid_from]";
            return cert;
        }

        auto check_base = [&](std::int64_t k) {
            BaseCase base;
            base.index = k;
            base.ratio = ratio(rec, k);
            base.bound_value = bound.f(Qrt2(static_cast<long>(k)));
            int s = (Qrt2(base.ratio) - base.bound_value).sign();
            if (bound.side == Side::Upper) s = -s;
            base.holds = bound.strict ? s > 0 : s >= 0;
            cert.base_cases.push_back(base);
            return base.holds;
        };
        if (!check_base(n0)) {
            cert.verdict = Verdict::Refuted;
            cert.refuted_at = n0;
            cert.diagnostics = "base case fails at n=" + std::to_string(n0);
            return cert;
        }

        cert.step_function = induction_step_function(rec, bound.f);
        const Relation step_relation = bound.side == Side::Lower ? Relation::NonNegative : Relation::NonPositive;
        // Where the step fails for small n, check those ratios exactly and
        // start the induction later.
        std::int64_t start = n0;
        for (;;) {
            cert.step = sign_for_all(cert.step_function, start, step_relation, config);
            if (cert.step->verdict != Verdict::Refuted || *cert.step->refuted_at - n0 >= kMaxExtraBaseCases) break;
            const std::int64_t next = *cert.step->refuted_at + 1;
            bool ok = true;
            for (std::int64_t k = start + 1; k <= next && ok; ++k) ok = check_base(k);
            if (!ok) {
                cert.verdict = Verdict::Refuted;
                cert.refuted_at = cert.base_cases.back().index;
                cert.diagnostics = "bound fails at n=" + std::to_string(*cert.refuted_at);
                return cert;
            }
            start = next;
        }
        cert.induction_from = start;
        detail::merge_verdict(cert, *cert.step, "induction step");

        if (bound.side == Side::Lower) {
            cert.bound_positive = sign_for_all(bound.f, start, Relation::Positive, config);
            detail::merge_verdict(cert, *cert.bound_positive, "bound positivity");
        } else {
            BoundSpec lower = companion ? companion->from(start)
                                        : BoundSpec{"a/2", Side::Lower,
                                                    rec.a() * RatFunc::constant(Qrt2(BigRational(1, 2))), start};
            if (lower.side != Side::Lower) throw Error("companion of an upper bound must be a lower bound");
            cert.companion = std::make_shared<BoundCertificate>(verify_ratio_bound(rec, lower, std::nullopt, config));
            if (!cert.companion->proved() && cert.verdict == Verdict::Proved) {
                cert.verdict = Verdict::Inconclusive;
                cert.diagnostics = "companion lower bound '" + lower.name + "' not proved; ratio positivity unknown";
            }
        }

        cert.b_sign = sign_for_all(rec.b().shift(1), start, Relation::Negative, config);
        detail::merge_verdict(cert, *cert.b_sign, "b(n+1) < 0");
    } catch (const PoleError& e) {
        cert.verdict = Verdict::Inconclusive;
        cert.diagnostics = e.what();
    }
    return cert;
}

/// Exact comparison of f(n) with S_n / S_{n-1} for every n in [from, to].
struct EmpiricalBoundCheck {
    std::string bound;
    std::int64_t from = 0;
    std::int64_t to = 0;
    bool holds = true;
    std::optional<std::int64_t> fails_at;
};

inline EmpiricalBoundCheck empirical_bound_check(const Recurrence2& rec, const BoundSpec& bound, std::int64_t to) {
    EmpiricalBoundCheck out;
    out.bound = bound.name;
    out.from = bound.valid_from;
    out.to = to;
    for (std::int64_t n = bound.valid_from; n <= to; ++n) {
        int s = (Qrt2(ratio(rec, n)) - bound.f(Qrt2(static_cast<long>(n)))).sign();
        if (bound.side == Side::Upper) s = -s;
        if (bound.strict ? s <= 0 : s < 0) {
            out.holds = false;
            out.fails_at = n;
            break;
        }
    }
    return out;
}

}  // namespace logcert
