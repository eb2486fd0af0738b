#include "logcert/criteria.hpp"

#include <gtest/gtest.h>

using namespace logcert;

namespace {

RatFunc rf(const char* text) { return parse_ratfunc(text); }

BigRational at(const RatFunc& f, long n) {
    Qrt2 v = f(Qrt2(n));
    EXPECT_TRUE(v.is_rational());
    return v.rat();
}

// x = k * displayed with k a positive constant.
::testing::AssertionResult positively_proportional(const RatFunc& x, const char* displayed) {
    auto k = proportionality(x, rf(displayed));
    if (!k) return ::testing::AssertionFailure() << to_string(x) << " is not a multiple of " << displayed;
    if (k->sign() <= 0) return ::testing::AssertionFailure() << "factor " << to_string(*k) << " is not positive";
    return ::testing::AssertionSuccess();
}

const RatFunc& witness(const CriterionCertificate& c, const char* name) {
    const NamedCondition* nc = c.condition(name);
    if (!nc) throw Error(std::string("no condition ") + name);
    return nc->cert.subject;
}

const char* kBuiltins[] = {"clf", "flf", "apery"};

constexpr const char* kC3 =
    "512(n^8 + 17n^7 + 131n^6 + 484n^5 + 872n^4 + 682n^3 + 51n^2 - 177n - 45)/((n+1)^6(n+2)^2(n+3)^2)";
constexpr const char* kDelta =
    "67108864(n^18 + 40n^17 + 752n^16 + 8732n^15 + 69566n^14 + 399108n^13 + 1687512n^12 + 5311376n^11"
    " + 12451223n^10 + 21531796n^9 + 26834592n^8 + 23183984n^7 + 13750782n^6 + 8285676n^5 + 10267104n^4"
    " + 12477380n^3 + 9141001n^2 + 3600576n + 596160)/((n+1)^8(n+2)^8(n+3)^4n^2)";
constexpr const char* kLinear =
    "8192(n^15 + 22n^14 + 235n^13 + 1362n^12 + 4663n^11 + 10794n^10 + 23419n^9 + 65264n^8 + 184207n^7"
    " + 395220n^6 + 572275n^5 + 497880n^4 + 183150n^3 - 56592n^2 - 67176n - 12960)/((n+1)^6(n+2)^4(n+3)^2n^5)";
constexpr const char* kSquareGap =
    "805306368(3n^26 + 78n^25 + 952n^24 + 7054n^23 + 37260n^22 + 172168n^21 + 821087n^20 + 3833124n^19"
    " + 15316869n^18 + 49491792n^17 + 130518035n^16 + 295700768n^15 + 624334735n^14 + 1306596402n^13"
    " + 2645121752n^12 + 4751027330n^11 + 6964163254n^10 + 7754776872n^9 + 5930725839n^8 + 2290239180n^7"
    " - 689241033n^6 - 1426673628n^5 - 697884741n^4 - 39615804n^3 + 90921852n^2 + 32775840n + 3499200)"
    "/(n^10(n+3)^4(n+2)^6(n+1)^12)";
constexpr const char* kCubicAtF =
    "3145728(66n^17 + 900n^16 + 6674n^15 + 34000n^14 + 124157n^13 + 336864n^12 + 722550n^11 + 1356276n^10"
    " + 2548054n^9 + 4990502n^8 + 9033247n^7 + 13148436n^6 + 13877382n^5 + 9189072n^4 + 2222712n^3"
    " - 1490400n^2 - 1178496n - 207360)/((n+1)^6(n+2)^4(n+3)^2n^15)";
constexpr const char* kA =
    "512(21n^8 - 21n^7 + 229n^6 - 1208n^5 + 736n^4 + 486n^3 - 513n^2 + 189n - 27)/(125n^6(n+1)^2)";
constexpr const char* kB =
    "-16384(4n^11 - 7n^10 - 3n^9 - 5n^8 + 9n^7 + 20n^6 + 10n^5 - 2n^4 - 18n^3 - 18n^2 - 10n - 4)/(n^12(n+1)^2)";
constexpr const char* kC =
    "2(16352n^12 - 19776n^11 - 29010n^10 + 56240n^9 - 4659n^8 - 44808n^7 + 31073n^6 + 1980n^5 - 11880n^4"
    " + 6412n^3 - 1608n^2 + 192n - 8)/(n^9(n+1)^3)";
constexpr const char* kD =
    "-3((2478196129792 + 1752346656768sqrt2)n^12 - (6433189920768 + 4549729320960sqrt2)n^11"
    " + (4079900164096 + 2886570344448sqrt2)n^10 + (3923229278208 + 2773725544448sqrt2)n^9"
    " - (7091340886016 + 5015144103936sqrt2)n^8 + (3059171226624 + 2163345012736sqrt2)n^7"
    " + (1220059275776 + 862892127744sqrt2)n^6 - (1975723880256 + 1397053488384sqrt2)n^5"
    " + (976018184064 + 690149237616sqrt2)n^4 - (234159803595 + 165572939880sqrt2)n^3"
    " + (19314604575 + 13654607400sqrt2)n^2 + (2591409375 + 1833597000sqrt2)n - 489436875 - 346275000sqrt2)"
    "/(4294967296n^12(n+1)^3)";
constexpr const char* kE =
    "1024(n^18 + 3n^17 + 5n^16 + 12n^15 + 48n^14 + 222n^13 + 342n^12 + 300n^11 + 960n^10 + 2902n^9"
    " + 6142n^8 + 3956n^7 - 448n^6 + 9450n^5 + 25776n^4 + 31536n^3 - 5184n^2 - 48384n - 27648)"
    "/(n^15(n-1)(n+1)^2)";
constexpr const char* kF =
    "16384(24n^18 + 57n^17 + 96n^16 + 234n^15 + 706n^14 + 1908n^13 + 2616n^12 + 3126n^11 + 8130n^10"
    " + 18198n^9 + 27248n^8 + 14970n^7 + 5478n^6 + 49572n^5 + 97308n^4 + 77760n^3 - 58752n^2 - 165888n"
    " - 82944)/(n^20(n-1)(n+1)^2)";

}  // namespace

TEST(Cubic, FlfCoefficientsMatchDisplayedForms) {
    const auto c = cubic_coeffs(builtin("flf"));
    EXPECT_TRUE(positively_proportional(c.c3, kC3));
    EXPECT_TRUE(positively_proportional(c.delta, kDelta));
    const RatFunc f = rf("16(n^5+n^2+3n+12)/n^5");
    const RatFunc lin = RatFunc::constant(Qrt2(6)) * c.c3 * f + RatFunc::constant(Qrt2(2)) * c.c2;
    EXPECT_TRUE(positively_proportional(lin, kLinear));
    EXPECT_TRUE(positively_proportional(lin * lin - c.delta, kSquareGap));
    EXPECT_TRUE(positively_proportional(((c.c3 * f + c.c2) * f + c.c1) * f + c.c0, kCubicAtF));
}

TEST(Cubic, DeltaTwoWaysOnConstantToy) {
    Recurrence2 toy("toy", rf("5"), rf("-1"), {BigRational(1), BigRational(5)}, 2);
    const auto c = cubic_coeffs(toy);
    EXPECT_EQ(c.delta, derivative_discriminant(c));
    EXPECT_EQ(c.delta, RatFunc::constant(Qrt2(4)) * c.c2 * c.c2 - RatFunc::constant(Qrt2(12)) * c.c1 * c.c3);
    EXPECT_TRUE(c.c3.is_polynomial());
    // Each built-in as well.
    for (const char* name : kBuiltins) {
        const auto cc = cubic_coeffs(builtin(name));
        EXPECT_EQ(cc.delta, derivative_discriminant(cc)) << name;
    }
}

TEST(Thm31, FlfProves) {
    auto cert = certify_Lseq_logconvex(builtin("flf"), builtin_bound("s"), 6, 3);
    ASSERT_TRUE(cert.proved()) << cert.diagnostics;
    EXPECT_EQ(cert.certified_from, 7);
    EXPECT_EQ(cert.conclusion_from, 3);
    EXPECT_TRUE(positively_proportional(witness(cert, "c3>0"), kC3));
    EXPECT_TRUE(positively_proportional(witness(cert, "delta>0"), kDelta));
    EXPECT_TRUE(positively_proportional(witness(cert, "6c3f+2c2>0"), kLinear));
    EXPECT_TRUE(positively_proportional(witness(cert, "(6c3f+2c2)^2-delta>0"), kSquareGap));
    EXPECT_TRUE(positively_proportional(witness(cert, "c3f^3+c2f^2+c1f+c0>0"), kCubicAtF));
    ASSERT_EQ(cert.small_cases.size(), 4u);
    for (std::size_t i = 0; i < cert.small_cases.size(); ++i) {
        EXPECT_EQ(cert.small_cases[i].n, static_cast<std::int64_t>(3 + i));
        EXPECT_TRUE(cert.small_cases[i].holds);
    }
    ASSERT_EQ(cert.bound_inputs.size(), 1u);
    EXPECT_TRUE(cert.bound_inputs[0].proved());
}

TEST(Thm31, UpperBoundAsLowerIsNotProved) {
    EXPECT_THROW(certify_Lseq_logconvex(builtin("flf"), builtin_bound("t"), 6), Error);
    BoundSpec t = builtin_bound("t");
    t.side = Side::Lower;
    auto cert = certify_Lseq_logconvex(builtin("flf"), t, 6);
    EXPECT_FALSE(cert.proved());
    EXPECT_EQ(cert.verdict, Verdict::Refuted);
}

TEST(Thm41, ClfProves) {
    auto cert = certify_ratio_logconcave(builtin("clf"), builtin_bound("l"), builtin_bound("ell"), 4, 2);
    ASSERT_TRUE(cert.proved()) << cert.diagnostics;
    EXPECT_EQ(cert.certified_from, 6);
    EXPECT_TRUE(positively_proportional(witness(cert, "(ii)"), kA));
    EXPECT_TRUE(positively_proportional(witness(cert, "(iii)"), kB));
    ASSERT_EQ(cert.small_cases.size(), 4u);
    for (const auto& sc : cert.small_cases) EXPECT_TRUE(sc.holds) << sc.n;
    EXPECT_EQ(cert.small_cases.front().n, 2);
    EXPECT_EQ(cert.small_cases.back().n, 5);
}

TEST(Thm41, AperyProves) {
    auto cert = certify_ratio_logconcave(builtin("apery"), builtin_bound("p"), builtin_bound("q"), 2, 2);
    ASSERT_TRUE(cert.proved()) << cert.diagnostics;
    EXPECT_EQ(cert.certified_from, 4);
    EXPECT_TRUE(positively_proportional(witness(cert, "u-a/2>=0"), "(32n^3 - 45n^2 + 21n - 3)/(2n^3)"));
    EXPECT_TRUE(positively_proportional(witness(cert, "(ii)"), kC));
    const RatFunc& iii = witness(cert, "(iii)");
    EXPECT_TRUE(positively_proportional(iii, kD));
    // Undo the -3/(2^32 n^12 (n+1)^3) scaling to read off D's leading coefficient.
    const Qrt2 lead = iii.num().leading() * Qrt2(BigRational(BigInt(-4294967296L), BigInt(3)));
    EXPECT_EQ(lead, Qrt2(BigRational(BigInt("2478196129792")), BigRational(BigInt("1752346656768"))));
    ASSERT_EQ(cert.small_cases.size(), 2u);
    for (const auto& sc : cert.small_cases) EXPECT_TRUE(sc.holds);
}

TEST(Thm42, FlfProves) {
    auto cert = certify_ratio_logconvex(builtin("flf"), builtin_bound("s"), 4, 3);
    ASSERT_TRUE(cert.proved()) << cert.diagnostics;
    EXPECT_EQ(cert.certified_from, 6);
    EXPECT_EQ(witness(cert, "g-a/2>=0"), rf("4(n^5 + n^4 + n^3 + 4n^2 + 12n + 48)/n^5"));
    EXPECT_TRUE(positively_proportional(witness(cert, "(ii')"), kE));
    EXPECT_TRUE(positively_proportional(witness(cert, "(iii')"), kF));
    ASSERT_EQ(cert.small_cases.size(), 3u);
    for (const auto& sc : cert.small_cases) EXPECT_TRUE(sc.holds);
}

TEST(Factorial, FlfProvesWithTau) {
    const auto flf = builtin("flf");
    EXPECT_EQ(factorial_difference(flf, builtin_bound("tau").f, builtin_bound("t").f),
              rf("-(2n^2+n-1)/(n(2n^4+2n^3+4n+1))"));
    auto cert = certify_factorial_logconvex(flf, builtin_bound("tau"), builtin_bound("t"), 2, 1);
    ASSERT_TRUE(cert.proved()) << cert.diagnostics;
    ASSERT_EQ(cert.small_cases.size(), 1u);
    const auto& one = cert.small_cases[0];
    EXPECT_EQ(one.n, 1);
    EXPECT_EQ(one.lhs, BigRational(64));
    EXPECT_EQ(one.rhs, BigRational(288));
    EXPECT_TRUE(one.holds);
}

TEST(Factorial, TighterLowerBoundAlsoProves) {
    auto with_s = certify_factorial_logconvex(builtin("flf"), builtin_bound("s"), builtin_bound("t"), 6, 1);
    EXPECT_TRUE(with_s.proved()) << with_s.diagnostics;
    auto with_tau = certify_factorial_logconvex(builtin("flf"), builtin_bound("tau"), builtin_bound("t"), 6, 1);
    EXPECT_TRUE(with_tau.proved()) << with_tau.diagnostics;
}

TEST(Dispatch, NeedsUpperForThm41) {
    EXPECT_THROW(certify(Schema::Thm41, builtin("clf"), builtin_bound("l"), std::nullopt, 4), Error);
    EXPECT_TRUE(certify(Schema::Thm42, builtin("flf"), builtin_bound("s"), std::nullopt, 4).proved());
    EXPECT_EQ(parse_schema("factorial"), Schema::Factorial);
    EXPECT_THROW(parse_schema("thm99"), Error);
}

TEST(Dispatch, SmallCaseFailureRefutes) {
    // clf is not ratio log-convex; the thm42 conclusion fails at the first small case.
    auto cert = certify_ratio_logconvex(builtin("clf"), builtin_bound("l"), 4, 2);
    EXPECT_EQ(cert.verdict, Verdict::Refuted);
}

TEST(CriteriaProperty, CubicIdentityOnTerms) {
    for (const char* name : kBuiltins) {
        const auto rec = builtin(name);
        const auto c = cubic_coeffs(rec);
        auto S = [&](long k) { return rec.term(k); };
        for (long n = 3; n <= 500; ++n) {
            const BigRational lhs = (S(n) * S(n) - S(n - 1) * S(n + 1)) * (S(n + 2) * S(n + 2) - S(n + 1) * S(n + 3)) -
                                    (S(n + 1) * S(n + 1) - S(n) * S(n + 2)) * (S(n + 1) * S(n + 1) - S(n) * S(n + 2));
            const BigRational x = S(n), y = S(n - 1);
            const BigRational rhs = S(n + 1) * (at(c.c3, n) * x * x * x + at(c.c2, n) * x * x * y +
                                                at(c.c1, n) * x * y * y + at(c.c0, n) * y * y * y);
            ASSERT_EQ(lhs, rhs) << name << " n=" << n;
        }
    }
}

TEST(CriteriaProperty, QuarticIdentityOnTerms) {
    for (const char* name : kBuiltins) {
        const auto rec = builtin(name);
        auto S = [&](long k) { return rec.term(k); };
        for (long n = 3; n <= 500; ++n) {
            const BigRational a = rec.a_at(n), a1 = rec.a_at(n + 1), b = rec.b_at(n), b1 = rec.b_at(n + 1);
            const BigRational r = S(n) / S(n - 1);
            const BigRational y4 = S(n - 1) * S(n - 1) * S(n - 1) * S(n - 1);
            const BigRational lhs = S(n) * S(n) * S(n) * S(n - 2) - S(n - 1) * S(n - 1) * S(n - 1) * S(n + 1);
            const BigRational rhs = y4 / b * (r * r * r * r - a * r * r * r - a1 * b * r - b * b1);
            ASSERT_EQ(lhs, rhs) << name << " n=" << n;
        }
    }
}

TEST(CriteriaProperty, ProvedConclusionsHoldOnTerms) {
    struct Job {
        Schema schema;
        const char* seq;
        const char* lower;
        const char* upper;
        std::int64_t N;
    };
    const Job jobs[] = {{Schema::Thm31, "flf", "s", nullptr, 6},
                        {Schema::Thm41, "clf", "l", "ell", 4},
                        {Schema::Thm41, "apery", "p", "q", 2},
                        {Schema::Thm42, "flf", "s", nullptr, 4},
                        {Schema::Factorial, "flf", "tau", "t", 2}};
    for (const auto& j : jobs) {
        const auto rec = builtin(j.seq);
        std::optional<BoundSpec> upper;
        if (j.upper) upper = builtin_bound(j.upper);
        auto cert = certify(j.schema, rec, builtin_bound(j.lower), upper, j.N);
        ASSERT_TRUE(cert.proved()) << to_string(j.schema) << " " << j.seq;
        for (std::int64_t n = cert.certified_from; n <= 1000; ++n)
            ASSERT_TRUE(concluded_inequality(j.schema, rec, n).holds) << to_string(j.schema) << " " << j.seq << " n=" << n;
    }
}
