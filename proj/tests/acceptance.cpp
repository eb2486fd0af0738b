// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "logcert/criteria.hpp"
#include "logcert/seqcheck.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace logcert;

namespace {

// Runtime ceilings in seconds; 0 means none.
struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<void(std::ostream&)> body;
};

struct Failed {
    std::string why;
};

void require(bool ok, const std::string& why) {
    if (!ok) throw Failed{why};
}

RatFunc rf(const char* text) { return parse_ratfunc(text); }

bool positively_proportional(const RatFunc& x, const char* displayed) {
    auto k = proportionality(x, rf(displayed));
    return k && k->sign() > 0;
}

const RatFunc& witness(const CriterionCertificate& c, const char* name) {
    const NamedCondition* nc = c.condition(name);
    require(nc != nullptr, std::string("missing condition ") + name);
    return nc->cert.subject;
}

void require_small_cases(const CriterionCertificate& c, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t n = lo; n <= hi; ++n) {
        bool seen = false;
        for (const auto& sc : c.small_cases)
            if (sc.n == n) {
                seen = true;
                require(sc.holds, "small case n=" + std::to_string(n) + " fails");
            }
        require(seen, "small case n=" + std::to_string(n) + " not checked");
    }
}

const char* kBuiltins[] = {"clf", "flf", "apery"};

constexpr const char* kC3 =
    "n^8 + 17n^7 + 131n^6 + 484n^5 + 872n^4 + 682n^3 + 51n^2 - 177n - 45";
constexpr const char* kA = "21n^8 - 21n^7 + 229n^6 - 1208n^5 + 736n^4 + 486n^3 - 513n^2 + 189n - 27";
constexpr const char* kB = "4n^11 - 7n^10 - 3n^9 - 5n^8 + 9n^7 + 20n^6 + 10n^5 - 2n^4 - 18n^3 - 18n^2 - 10n - 4";
constexpr const char* kE =
    "(n^18 + 3n^17 + 5n^16 + 12n^15 + 48n^14 + 222n^13 + 342n^12 + 300n^11 + 960n^10 + 2902n^9"
    " + 6142n^8 + 3956n^7 - 448n^6 + 9450n^5 + 25776n^4 + 31536n^3 - 5184n^2 - 48384n - 27648)"
    "/(n^15(n-1)(n+1)^2)";
constexpr const char* kF =
    "(24n^18 + 57n^17 + 96n^16 + 234n^15 + 706n^14 + 1908n^13 + 2616n^12 + 3126n^11 + 8130n^10"
    " + 18198n^9 + 27248n^8 + 14970n^7 + 5478n^6 + 49572n^5 + 97308n^4 + 77760n^3 - 58752n^2 - 165888n"
    " - 82944)/(n^20(n-1)(n+1)^2)";

// 1
void terms(std::ostream& out) {
    const auto flf = builtin("flf");
    const long expect[] = {1, 8, 144, 2432, 40000};
    for (int n = 0; n <= 4; ++n) require(flf.term(n) == BigRational(expect[n]), "flf term " + std::to_string(n));
    require(builtin("clf").term(2) == BigRational(80), "clf term 2");
    require(builtin("apery").term(2) == BigRational(73), "apery term 2");
    for (const char* name : kBuiltins) {
        const auto rec = builtin(name);
        for (std::int64_t n = 2; n <= 2000; ++n)
            require(rec.term(n) - rec.a_at(n) * rec.term(n - 1) - rec.b_at(n) * rec.term(n - 2) == 0,
                    std::string(name) + " residual at " + std::to_string(n));
    }
    out << "residual zero to 2000";
}

// 2
void flf_bounds(std::ostream& out) {
    auto s = verify_ratio_bound(builtin("flf"), builtin_bound("s"));
    require(s.proved(), "s: " + s.diagnostics);
    require(!s.base_cases.empty() && s.base_cases[0].index == 6, "s base case index");
    require(s.base_cases[0].ratio == BigRational(20482, 1269), "r(6)");
    require(s.base_cases[0].bound_value == Qrt2(BigRational(1307, 81)), "s(6)");
    auto k = proportionality(RatFunc(s.step_function.num()), rf("7n^4+5n^3-9n^2-27n-44"));
    require(k && k->sign() > 0, "step numerator is not a positive multiple of the quartic");
    auto t = verify_ratio_bound(builtin("flf"), builtin_bound("t"));
    require(t.proved(), "t: " + t.diagnostics);
    out << "r(6)=20482/1269 > 1307/81, step factor " << to_string(*k);
}

// 3
void other_bounds(std::ostream& out) {
    for (const char* name : {"l", "ell"}) {
        auto c = verify_ratio_bound(builtin("clf"), builtin_bound(name));
        require(c.proved(), std::string(name) + ": " + c.diagnostics);
        require(c.base_cases[0].index == builtin_bound(name).valid_from, std::string(name) + " window");
    }
    auto p = verify_ratio_bound(builtin("apery"), builtin_bound("p"));
    require(p.proved(), "p: " + p.diagnostics);
    auto q = verify_ratio_bound(builtin("apery"), builtin_bound("q"), builtin_bound("p"));
    require(q.verdict != Verdict::Refuted, "q refuted");
    require(!q.base_cases[0].bound_value.is_rational(), "q not evaluated over Q(sqrt2)");
    if (q.proved()) {
        out << "q proved symbolically";
    } else {
        auto e = empirical_bound_check(builtin("apery"), builtin_bound("q"), 1000);
        require(e.holds && e.from == 2, "q empirical fallback fails");
        out << "q empirical on [2,1000] (label: empirical)";
    }
}

// 4
void thm31(std::ostream& out) {
    auto cert = certify_Lseq_logconvex(builtin("flf"), builtin_bound("s"), 6, 3);
    require(cert.proved(), cert.diagnostics);
    require(positively_proportional(RatFunc(witness(cert, "c3>0").num()), kC3), "c3 numerator");
    const Poly delta = witness(cert, "delta>0").num();
    require(delta.degree() == 18, "delta numerator degree");
    const Qrt2 lead = delta.leading();
    require(lead.sign() > 0, "delta leading sign");
    require(delta.coeff(17) == lead * Qrt2(40) && delta.coeff(16) == lead * Qrt2(752), "delta prefix");
    require_small_cases(cert, 3, 5);
    out << "certified from " << cert.certified_from << ", small cases from " << cert.conclusion_from;
}

// 5
void thm41_clf(std::ostream& out) {
    auto cert = certify_ratio_logconcave(builtin("clf"), builtin_bound("l"), builtin_bound("ell"), 4, 2);
    require(cert.proved(), cert.diagnostics);
    require(positively_proportional(RatFunc(witness(cert, "(ii)").num()), kA), "(ii) vs A");
    require(positively_proportional(RatFunc(-witness(cert, "(iii)").num()), kB), "(iii) vs B");
    require_small_cases(cert, 2, 5);
    out << "certified from " << cert.certified_from;
}

// 6
void thm41_apery(std::ostream& out) {
    const auto apery = builtin("apery");
    auto cert = certify_ratio_logconcave(apery, builtin_bound("p"), builtin_bound("q"), 2, 2);
    require(cert.proved(), cert.diagnostics);
    const RatFunc& iii = witness(cert, "(iii)");
    // D carries the factor -3/(2^32 n^12 (n+1)^3).
    const Qrt2 lead = iii.num().leading() * Qrt2(BigRational(BigInt(-4294967296L), BigInt(3)));
    require(lead == Qrt2(BigRational(BigInt("2478196129792")), BigRational(BigInt("1752346656768"))),
            "D leading coefficient " + to_string(lead));
    require_small_cases(cert, 2, 3);
    const BigRational a1 = apery.term(1), a2 = apery.term(2), a3 = apery.term(3);
    require(a2 * a2 * a2 > a1 * a1 * a1 * a3, "A2^3 > A1^3 A3");
    CheckOptions exact;
    exact.exact_powers = true;
    require(check_range(SequenceView::of(apery), Property::NthRootLogConcave, 2, 2, exact).holds, "nth root at 2");
    out << "lead " << to_string(lead) << "; 73^3 > 5^3*1445";
}

// 7
void thm42(std::ostream& out) {
    auto cert = certify_ratio_logconvex(builtin("flf"), builtin_bound("s"), 4, 3);
    require(cert.proved(), cert.diagnostics);
    require(cert.certified_from == 6, "certified from " + std::to_string(cert.certified_from));
    require(positively_proportional(witness(cert, "(ii')"), kE), "(ii') vs E");
    require(positively_proportional(witness(cert, "(iii')"), kF), "(iii') vs F");
    require_small_cases(cert, 3, 5);
    out << "certified from 6";
}

// 8
void factorial_balanced(std::ostream& out) {
    const auto flf = builtin("flf");
    require(factorial_difference(flf, builtin_bound("tau").f, builtin_bound("t").f) ==
                rf("-(2n^2+n-1)/(n(2n^4+2n^3+4n+1))"),
            "difference form");
    auto cert = certify_factorial_logconvex(flf, builtin_bound("tau"), builtin_bound("t"), 2, 1);
    require(cert.proved(), cert.diagnostics);
    bool one = false;
    for (const auto& sc : cert.small_cases)
        if (sc.n == 1) one = sc.holds && sc.lhs == BigRational(64) && sc.rhs == BigRational(288);
    require(one, "n=1: 64 < 288");
    auto e = check_range(SequenceView::of(flf), Property::FactorialLogConvex, 1, 1000);
    require(e.holds && e.from == 1 && e.to == 1000, "empirical n V_n^2 < (n+1) V_{n-1} V_{n+1}");
    out << "64 < 288; empirical [1,1000]";
}

// 9
void identities(std::ostream& out) {
    for (const char* name : kBuiltins) {
        const auto rec = builtin(name);
        const auto c = cubic_coeffs(rec);
        auto S = [&](long k) { return rec.term(k); };
        auto at = [](const RatFunc& f, long n) { return f(Qrt2(n)).rat(); };
        for (long n = 3; n <= 500; ++n) {
            const BigRational lhs = (S(n) * S(n) - S(n - 1) * S(n + 1)) * (S(n + 2) * S(n + 2) - S(n + 1) * S(n + 3)) -
                                    (S(n + 1) * S(n + 1) - S(n) * S(n + 2)) * (S(n + 1) * S(n + 1) - S(n) * S(n + 2));
            const BigRational x = S(n), y = S(n - 1);
            const BigRational cubic = S(n + 1) * (at(c.c3, n) * x * x * x + at(c.c2, n) * x * x * y +
                                                  at(c.c1, n) * x * y * y + at(c.c0, n) * y * y * y);
            require(lhs == cubic, std::string("cubic identity ") + name + " n=" + std::to_string(n));

            const BigRational a = rec.a_at(n), a1 = rec.a_at(n + 1), b = rec.b_at(n), b1 = rec.b_at(n + 1);
            const BigRational r = x / y;
            const BigRational quartic_lhs = x * x * x * S(n - 2) - y * y * y * S(n + 1);
            const BigRational quartic = y * y * y * y / b * (r * r * r * r - a * r * r * r - a1 * b * r - b * b1);
            require(quartic_lhs == quartic, std::string("quartic identity ") + name + " n=" + std::to_string(n));
        }
    }
    out << "3 sequences, n in [3,500]";
}

// 10
void conjectures(std::ostream& out) {
    auto reports = check_conjectures(4, 200);
    require(reports.size() == 3, "three conjecture reports");
    for (const auto& r : reports) {
        require(r.label == "empirical evidence only", r.property + " label");
        require(r.holds, r.property + " fails at " + std::to_string(r.fails_at.value_or(-1)));
        require(r.levels.size() == 4, r.property + " depth");
        for (const auto& lvl : r.levels) require(lvl.to - lvl.from + 1 >= 100, r.property + " short range");
    }
    // L shifts the first usable center by one per level.
    require(reports[0].levels.front().from == 3 && reports[0].levels.back().to == 200, "levels on [2,200]");
    out << "depth 4, range 200 (empirical)";
}

// 11
Poly poly(const std::vector<long>& c) {
    std::vector<Qrt2> q;
    for (long v : c) q.emplace_back(v);
    return Poly(std::move(q));
}

BigInt eval_int(const std::vector<long>& c, long n) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * n + *it;
    return acc;
}

std::vector<long> multiply(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Padded Fujiwara bound on root moduli; only limits the exact brute-force scan.
long root_bound(const std::vector<long>& c) {
    const std::size_t d = c.size() - 1;
    const double lead = static_cast<double>(c[d]);
    double m = 0;
    for (std::size_t k = 1; k <= d; ++k) {
        double v = std::fabs(static_cast<double>(c[d - k])) / lead;
        if (k == d) v /= 2;
        m = std::max(m, std::pow(v, 1.0 / static_cast<double>(k)));
    }
    return static_cast<long>(std::ceil(2 * m)) + 2;
}

void positivity(std::ostream& out) {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> deg(1, 12);
    std::uniform_int_distribution<long> coeff(-1'000'000, 1'000'000), lead(1, 1'000'000);
    int proved = 0;
    while (proved < 500) {
        std::vector<long> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& v : c) v = coeff(rng);
        c.back() = lead(rng);
        const long bound = root_bound(c);
        if (bound > 100'000) continue;
        long last_bad = -1;
        for (long n = 0; n <= bound; ++n)
            if (sgn(eval_int(c, n)) <= 0) last_bad = n;
        auto w = prove_positive_poly(poly(c), last_bad + 1, Relation::Positive);
        require(w.verdict == Verdict::Proved, "not proved: " + to_string(poly(c)));
        require(replay(w), "replay rejected: " + to_string(poly(c)));
        ++proved;
    }

    std::uniform_int_distribution<int> qdeg(0, 10);
    std::uniform_int_distribution<long> small(0, 40), root(0, 60), gap(0, 30);
    int refuted = 0;
    while (refuted < 500) {
        // Positive q times (2n-2r-1)(2n-2s-1) is negative exactly on [r+1, s].
        std::vector<long> q(static_cast<std::size_t>(qdeg(rng)) + 1);
        for (auto& v : q) v = small(rng);
        q.back() += 1;
        q.front() += 1;
        const long r = root(rng), s = r + 1 + gap(rng);
        auto c = multiply(q, multiply({-2 * r - 1, 2}, {-2 * s - 1, 2}));
        long biggest = 0;
        for (long v : c) biggest = std::max(biggest, std::labs(v));
        if (c.size() > 13 || biggest > 1'000'000) continue;
        const long from = std::uniform_int_distribution<long>(0, r + 1)(rng);
        auto w = prove_positive_poly(poly(c), from, Relation::Positive);
        require(w.verdict == Verdict::Refuted && w.refuted_at && *w.refuted_at == r + 1,
                "not refuted at " + std::to_string(r + 1) + ": " + to_string(poly(c)));
        require(*w.refuted_value == Qrt2(eval_int(c, r + 1)), "refuting value");
        ++refuted;
    }
    out << proved << " proved with replay, " << refuted << " refuted at the minimal index";
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "term reproduction and residuals", 1, terms},
        {2, "flf ratio bounds s and t", 1, flf_bounds},
        {3, "clf and apery ratio bounds", 5, other_bounds},
        {4, "flf {V_n^2 - V_{n-1}V_{n+1}} log-convex", 10, thm31},
        {5, "clf ratio log-concave", 0, thm41_clf},
        {6, "apery ratio log-concave", 0, thm41_apery},
        {7, "flf ratio log-convex", 0, thm42},
        {8, "flf log-balanced (factorial log-convexity)", 0, factorial_balanced},
        {9, "cubic and quartic identities", 30, identities},
        {10, "conjecture evidence", 60, conjectures},
        {11, "positivity prover on random polynomials", 0, positivity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream detail;
        std::string error;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(detail);
        } catch (const Failed& f) {
            error = f.why;
        } catch (const std::exception& e) {
            error = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (error.empty() && c.limit_s > 0 && secs >= c.limit_s)
            error = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s";
        const bool ok = error.empty();
        if (!ok) ++failures;
        std::printf("%s [%2d] %s (%.3f s): %s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
                    ok ? detail.str().c_str() : error.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
