#pragma once

/**
 * @file positivity.hpp
 * @brief Certified sign of polynomials and rational functions at all integers n >= N.
 *
 * A polynomial p with positive leading coefficient has p(n + M) with only
 * nonnegative coefficients once M is large enough, and then p(n) >= p(M) for
 * every n >= M. The prover searches such a shift M by doubling the distance
 * from N, evaluates p exactly at every integer of [N, M), and stops at the
 * first integer that violates the relation.
 *
 * The search runs on an integer copy of p (denominators cleared by a positive
 * factor). replay() re-checks a certificate through the independent route
 * p^(k)(M)/k! over Q(sqrt 2).
 */

#include "logcert/rational_function.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logcert {

enum class Relation { Positive, NonNegative, Negative, NonPositive };
enum class Verdict { Proved, Refuted, Inconclusive };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Positive: return ">0";
        case Relation::NonNegative: return ">=0";
        case Relation::Negative: return "<0";
        case Relation::NonPositive: return "<=0";
    }
    return "?";
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "proved";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Relation with the opposite orientation (> becomes <).
inline Relation flipped(Relation r) {
    switch (r) {
        case Relation::Positive: return Relation::Negative;
        case Relation::NonNegative: return Relation::NonPositive;
        case Relation::Negative: return Relation::Positive;
        case Relation::NonPositive: return Relation::NonNegative;
    }
    return r;
}

inline bool is_strict(Relation r) { return r == Relation::Positive || r == Relation::Negative; }

/// Whether a value with the given sign satisfies the relation.
inline bool satisfies(int sign_value, Relation r) {
    switch (r) {
        case Relation::Positive: return sign_value > 0;
        case Relation::NonNegative: return sign_value >= 0;
        case Relation::Negative: return sign_value < 0;
        case Relation::NonPositive: return sign_value <= 0;
    }
    return false;
}

struct ProverConfig {
    /// Largest M - N the shift search may reach before giving up.
    std::int64_t shift_cap = 1'000'000;
};

struct PrefixCheck {
    std::int64_t point;
    Qrt2 value;
};

/// One run of the shift search on a single polynomial.
struct PolyWitness {
    std::string role;
    Poly subject;
    Relation relation = Relation::Positive;
    std::int64_t from = 0;
    std::int64_t shift_used = 0;
    std::vector<PrefixCheck> prefix_checks;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::int64_t> refuted_at;
    std::optional<Qrt2> refuted_value;
};

struct PositivityCertificate {
    RatFunc subject;
    std::int64_t from = 0;
    Relation relation = Relation::Positive;
    /// Largest shift used by any part.
    std::int64_t shift_used = 0;
    /// Exact values of the subject at integers in [from, shift_used).
    std::vector<PrefixCheck> prefix_checks;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::int64_t> refuted_at;
    std::optional<Qrt2> refuted_value;
    std::vector<PolyWitness> parts;
    std::string diagnostics;

    bool proved() const { return verdict == Verdict::Proved; }
};

namespace detail {

/// scale * p(n) = sum (a_i + b_i sqrt2) n^i with integer a_i, b_i and scale > 0.
struct IntegerPoly {
    std::vector<BigInt> a, b;
    BigRational scale{1};

    explicit IntegerPoly(const Poly& p) {
        BigInt l = 1;
        for (const auto& c : p.coefficients()) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rat().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.irr().get_den_mpz_t());
        }
        scale = BigRational(l);
        for (const auto& c : p.coefficients()) {
            BigRational x = c.rat() * scale;
            BigRational y = c.irr() * scale;
            a.push_back(x.get_num());
            b.push_back(y.get_num());
        }
    }

    std::size_t size() const { return a.size(); }

    int coeff_sign(std::size_t i) const { return sign_a_plus_b_sqrt2(a[i], b[i]); }

    std::pair<BigInt, BigInt> eval(const BigInt& x) const {
        BigInt ra = 0, rb = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            ra *= x;
            ra += a[i];
            rb *= x;
            rb += b[i];
        }
        return {ra, rb};
    }

    void taylor_shift(const BigInt& k) {
        const std::size_t m = a.size();
        if (m <= 1 || k == 0) return;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            for (std::size_t j = m - 1; j-- > i;) {
                a[j] += k * a[j + 1];
                b[j] += k * b[j + 1];
            }
        }
    }
};

}  // namespace detail

/// Proves, refutes (at the smallest violating integer) or gives up on
/// "p(n) relation 0 for all integers n >= from".
inline PolyWitness prove_positive_poly(const Poly& p, std::int64_t from, Relation relation,
                                       const ProverConfig& config = {}, std::string role = "polynomial") {
    PolyWitness w;
    w.role = std::move(role);
    w.subject = p;
    w.relation = relation;
    w.from = from;
    w.shift_used = from;

    const bool negate = relation == Relation::Negative || relation == Relation::NonPositive;
    const bool strict = is_strict(relation);

    if (p.is_zero()) {
        if (strict) {
            w.verdict = Verdict::Refuted;
            w.refuted_at = from;
            w.refuted_value = Qrt2(0);
        } else {
            w.verdict = Verdict::Proved;
        }
        return w;
    }

    const detail::IntegerPoly orig(p);
    detail::IntegerPoly q(negate ? -p : p);
    const BigInt start(static_cast<long>(from));
    q.taylor_shift(start);
    std::int64_t m = from;
    for (;;) {
        bool all_nonneg = true;
        for (std::size_t i = 0; i < q.size() && all_nonneg; ++i) all_nonneg = q.coeff_sign(i) >= 0;
        if (all_nonneg && (!strict || q.coeff_sign(0) > 0)) {
            w.verdict = Verdict::Proved;
            w.shift_used = m;
            return w;
        }
        if (m - from >= config.shift_cap) {
            w.verdict = Verdict::Inconclusive;
            w.shift_used = m;
            return w;
        }
        std::int64_t next = std::min(m + std::max<std::int64_t>(1, m - from), from + config.shift_cap);
        for (std::int64_t k = m; k < next; ++k) {
            auto [va, vb] = orig.eval(BigInt(static_cast<long>(k)));
            int s = sign_a_plus_b_sqrt2(va, vb);
            Qrt2 value(BigRational(va) / orig.scale, BigRational(vb) / orig.scale);
            if (!satisfies(s, relation)) {
                w.verdict = Verdict::Refuted;
                w.refuted_at = k;
                w.refuted_value = value;
                w.shift_used = k;
                return w;
            }
            w.prefix_checks.push_back({k, std::move(value)});
        }
        q.taylor_shift(BigInt(static_cast<long>(next - m)));
        m = next;
    }
}

/// Certifies "x(n) relation 0 for all integers n >= from"; throws PoleError if
/// the denominator vanishes at an integer >= from.
inline PositivityCertificate sign_for_all(const RatFunc& x, std::int64_t from, Relation relation,
                                          const ProverConfig& config = {}) {
    PositivityCertificate cert;
    cert.subject = x;
    cert.from = from;
    cert.relation = relation;

    Relation num_relation = relation;
    if (!x.den().is_constant()) {
        auto nonvanishing = prove_positive_poly(x.den() * x.den(), from, Relation::Positive, config,
                                                "denominator-nonvanishing");
        if (nonvanishing.verdict == Verdict::Refuted) throw PoleError(*nonvanishing.refuted_at);
        cert.parts.push_back(nonvanishing);
        if (nonvanishing.verdict == Verdict::Inconclusive) {
            cert.verdict = Verdict::Inconclusive;
            cert.shift_used = nonvanishing.shift_used;
            cert.diagnostics = "could not exclude integer poles within the shift cap";
            return cert;
        }
        auto den_pos = prove_positive_poly(x.den(), from, Relation::Positive, config, "denominator-sign");
        if (den_pos.verdict == Verdict::Proved) {
            cert.parts.push_back(std::move(den_pos));
        } else {
            auto den_neg = prove_positive_poly(x.den(), from, Relation::Negative, config, "denominator-sign");
            if (den_neg.verdict == Verdict::Proved) {
                cert.parts.push_back(std::move(den_neg));
                num_relation = flipped(relation);
            } else {
                num_relation = relation;
            }
        }
    }

    const bool den_sign_known = x.den().is_constant() || cert.parts.size() == 2;
    PolyWitness main = den_sign_known
                           ? prove_positive_poly(x.num(), from, num_relation, config, "numerator")
                           : prove_positive_poly(x.num() * x.den(), from, relation, config,
                                                 "numerator-times-denominator");
    cert.verdict = main.verdict;
    if (main.verdict == Verdict::Refuted) {
        cert.refuted_at = main.refuted_at;
        cert.refuted_value = x(Qrt2(static_cast<long>(*main.refuted_at)));
    } else if (main.verdict == Verdict::Inconclusive) {
        cert.diagnostics = "shift cap " + std::to_string(config.shift_cap) + " exceeded";
    }
    cert.parts.push_back(std::move(main));
    for (const auto& part : cert.parts) cert.shift_used = std::max(cert.shift_used, part.shift_used);
    if (cert.verdict == Verdict::Proved) {
        for (std::int64_t k = from; k < cert.shift_used; ++k)
            cert.prefix_checks.push_back({k, x(Qrt2(static_cast<long>(k)))});
    }
    return cert;
}

/// Polynomial convenience wrapper returning a full certificate.
inline PositivityCertificate sign_for_all(const Poly& p, std::int64_t from, Relation relation,
                                          const ProverConfig& config = {}) {
    return sign_for_all(RatFunc(p), from, relation, config);
}

/// Independent re-check of a proved polynomial witness: prefix values by
/// direct evaluation, shifted coefficients as p^(k)(M)/k!.
inline bool replay(const PolyWitness& w) {
    if (w.verdict == Verdict::Refuted) {
        if (!w.refuted_at || !w.refuted_value) return false;
        Qrt2 v = w.subject(Qrt2(static_cast<long>(*w.refuted_at)));
        return v == *w.refuted_value && !satisfies(v.sign(), w.relation);
    }
    if (w.verdict != Verdict::Proved) return false;
    if (w.shift_used < w.from) return false;
    if (static_cast<std::int64_t>(w.prefix_checks.size()) != w.shift_used - w.from) return false;
    for (std::size_t i = 0; i < w.prefix_checks.size(); ++i) {
        const auto& pc = w.prefix_checks[i];
        if (pc.point != w.from + static_cast<std::int64_t>(i)) return false;
        Qrt2 v = w.subject(Qrt2(static_cast<long>(pc.point)));
        if (!(v == pc.value) || !satisfies(v.sign(), w.relation)) return false;
    }
    if (w.subject.is_zero()) return !is_strict(w.relation);
    const bool negate = w.relation == Relation::Negative || w.relation == Relation::NonPositive;
    Poly d = negate ? -w.subject : w.subject;
    const Qrt2 at(static_cast<long>(w.shift_used));
    BigInt factorial = 1;
    for (int k = 0; k <= w.subject.degree(); ++k) {
        if (k > 0) factorial *= k;
        Qrt2 taylor = d(at) / Qrt2(BigRational(factorial));
        int s = taylor.sign();
        if (s < 0) return false;
        if (k == 0 && is_strict(w.relation) && s == 0) return false;
        d = d.derivative();
    }
    return true;
}

/// Re-checks every part of a certificate and that the parts fit together.
inline bool replay(const PositivityCertificate& c) {
    for (const auto& part : c.parts)
        if (!replay(part)) return false;
    if (c.verdict == Verdict::Refuted) {
        if (!c.refuted_at || !c.refuted_value) return false;
        Qrt2 v = c.subject(Qrt2(static_cast<long>(*c.refuted_at)));
        return v == *c.refuted_value && !satisfies(v.sign(), c.relation);
    }
    if (c.verdict != Verdict::Proved || c.parts.empty()) return false;
    const Poly& num = c.subject.num();
    const Poly& den = c.subject.den();
    const PolyWitness& main = c.parts.back();
    if (den.is_constant()) {
        Relation expect = den.leading().sign() > 0 ? c.relation : flipped(c.relation);
        return c.parts.size() == 1 && main.subject == num && main.relation == expect;
    }
    const PolyWitness& nonvanishing = c.parts.front();
    if (!(nonvanishing.subject == den * den) || nonvanishing.relation != Relation::Positive) return false;
    if (nonvanishing.from > c.from || main.from > c.from) return false;
    if (c.parts.size() == 3) {
        const PolyWitness& ds = c.parts[1];
        if (!(ds.subject == den) || ds.from > c.from || !is_strict(ds.relation)) return false;
        Relation expect = ds.relation == Relation::Positive ? c.relation : flipped(c.relation);
        return main.subject == num && main.relation == expect;
    }
    return c.parts.size() == 2 && main.subject == num * den && main.relation == c.relation;
}

}  // namespace logcert
