// logcert: evaluate recurrences, check log-behavior on ranges, and certify
// inequalities for all n >= N.
//
// Exit codes: 0 proved/holds, 1 refuted/fails, 2 usage error, 3 inconclusive.

#include "logcert/logcert.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using namespace logcert;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

struct Options {
    std::string format = "text";
    bool verbose = false;
    std::int64_t shift_cap = ProverConfig{}.shift_cap;
};

bool is_file_argument(const std::string& s) {
    return s.find('/') != std::string::npos || s.ends_with(".json") || std::filesystem::exists(s);
}

Recurrence2 load_sequence(const std::string& s) {
    if (is_file_argument(s)) return recurrence_from_json(read_json_file(s));
    return builtin(s);
}

BoundSpec load_bound(const std::string& s) {
    if (is_file_argument(s)) return bound_from_json(read_json_file(s));
    return builtin_bound(s);
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Proved: return kOk;
        case Verdict::Refuted: return kFails;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Json document(const std::string& command, Json inputs) {
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"certificates", Json::array()},
            {"reports", Json::array()},
            {"verdict", "holds"},
            {"version", "1.0"}};
}

// Text rendering.

void print_condition(std::ostream& out, const std::string& name, const PositivityCertificate& c, bool verbose) {
    out << "    " << name << " for n>=" << c.from << ": " << to_string(c.verdict);
    if (c.refuted_at) out << " at n=" << *c.refuted_at;
    if (c.proved()) out << " (shift " << c.shift_used << ")";
    out << '\n';
    if (!verbose) return;
    out << "      subject: " << to_string(c.subject) << '\n';
    for (const auto& p : c.parts)
        out << "      " << p.role << ": " << to_string(p.subject) << " " << to_string(p.relation) << " from "
            << p.from << ", shift " << p.shift_used << ", " << p.prefix_checks.size() << " exact prefix values\n";
    if (!c.diagnostics.empty()) out << "      note: " << c.diagnostics << '\n';
}

void print_bound(std::ostream& out, const BoundCertificate& c, bool verbose, const std::string& indent = "") {
    out << indent << "bound " << c.bound.name << " (" << to_string(c.bound.side) << ") on " << c.recurrence
        << " for n>=" << c.bound.valid_from << ": " << to_string(c.verdict);
    if (c.refuted_at) out << " at n=" << *c.refuted_at;
    out << '\n';
    if (!c.diagnostics.empty()) out << indent << "  " << c.diagnostics << '\n';
    if (!verbose) return;
    out << indent << "  f(n) = " << to_string(c.bound.f) << '\n';
    for (const auto& b : c.base_cases)
        out << indent << "  base n=" << b.index << ": ratio " << to_string(b.ratio) << " vs bound "
            << to_string(b.bound_value) << (b.holds ? " ok" : " FAILS") << '\n';
    if (c.induction_from) out << indent << "  induction from n=" << c.induction_from << '\n';
    if (c.step) print_condition(out, indent + "step", *c.step, verbose);
    if (c.bound_positive) print_condition(out, indent + "f>0", *c.bound_positive, verbose);
    if (c.b_sign) print_condition(out, indent + "b(n+1)<0", *c.b_sign, verbose);
    if (c.companion) print_bound(out, *c.companion, verbose, indent + "  companion ");
}

void print_criterion(std::ostream& out, const CriterionCertificate& c, bool verbose) {
    out << to_string(c.schema) << " on " << c.recurrence << ": " << to_string(c.verdict) << " for n>="
        << c.conclusion_from << " (symbolic from n=" << c.certified_from << ")";
    if (!c.variant.empty()) out << " [" << c.variant << "]";
    out << '\n';
    if (!c.diagnostics.empty()) out << "  " << c.diagnostics << '\n';
    for (const auto& b : c.bound_inputs) print_bound(out, b, verbose, "  ");
    for (const auto& nc : c.conditions) print_condition(out, nc.name, nc.cert, verbose);
    for (const auto& s : c.small_cases) {
        out << "    small case n=" << s.n << ": " << (s.holds ? "holds" : "FAILS");
        if (verbose) out << "  " << to_string(s.lhs) << ' ' << s.relation << ' ' << to_string(s.rhs);
        out << '\n';
    }
}

void print_report(std::ostream& out, const PropertyReport& r, const std::string& indent = "") {
    out << indent << r.property << " of " << r.sequence << " on [" << r.from << ", " << r.to << "]: "
        << (r.holds ? "holds" : "fails at n=" + std::to_string(*r.fails_at)) << " (" << r.label << ")\n";
    if (!r.note.empty()) out << indent << "  " << r.note << '\n';
    if (r.counterexample && r.levels.empty()) {
        const auto& c = *r.counterexample;
        out << indent << "  counterexample n=" << c.n << ": ";
        if (c.lhs && c.rhs) out << to_string(*c.lhs) << " vs " << to_string(*c.rhs) << " (need " << c.relation << ")";
        else out << c.detail;
        out << '\n';
    }
    for (const auto& l : r.levels) print_report(out, l, indent + "  ");
}

// Commands.

int cmd_terms(const std::string& seq, std::int64_t from, std::int64_t to, const Options& o) {
    if (from < 0 || to < from) throw CLI::ValidationError("terms", "need 0 <= from <= to");
    const Recurrence2 rec = load_sequence(seq);
    if (o.format == "csv") {
        std::cout << "n,S_n\n";
        for (auto n = from; n <= to; ++n) std::cout << n << ',' << to_string(rec.term(n)) << '\n';
    } else if (o.format == "json") {
        Json doc = document("terms", {{"recurrence", recurrence_to_json(rec)}, {"from", from}, {"to", to}});
        Json terms = Json::array();
        for (auto n = from; n <= to; ++n) terms.push_back(to_string(rec.term(n)));
        doc["terms"] = std::move(terms);
        std::cout << doc.dump(2) << '\n';
    } else {
        for (auto n = from; n <= to; ++n) std::cout << (n == from ? "" : " ") << to_string(rec.term(n));
        std::cout << '\n';
    }
    return kOk;
}

int cmd_check(const std::string& seq, const std::string& property, std::int64_t from, std::int64_t to, int depth,
              const CheckOptions& co, const Options& o) {
    if (to < from) throw CLI::ValidationError("check", "need from <= to");
    const Recurrence2 rec = load_sequence(seq);
    const SequenceView view = SequenceView::of(rec);
    CheckOptions opts = co;
    opts.collect_margins = o.format == "csv";
    PropertyReport r = property == "k-log-convex" ? check_k_logconvex(view, depth, from, to, opts)
                                                  : check_range(view, parse_property(property), from, to, opts);
    if (o.format == "json") {
        Json doc = document("check", {{"recurrence", recurrence_to_json(rec)}, {"property", property},
                                      {"from", from}, {"to", to}});
        doc["reports"].push_back(to_json(r));
        doc["verdict"] = r.holds ? "holds" : "fails";
        std::cout << doc.dump(2) << '\n';
    } else if (o.format == "csv") {
        std::cout << margins_csv(r);
    } else {
        print_report(std::cout, r);
    }
    return r.holds ? kOk : kFails;
}

int cmd_bound(const std::string& seq, const std::string& bound_name, std::optional<std::int64_t> from,
              const std::optional<std::string>& companion_name, const Options& o) {
    const Recurrence2 rec = load_sequence(seq);
    BoundSpec b = load_bound(bound_name);
    if (from) b = b.from(*from);
    std::optional<BoundSpec> companion;
    if (companion_name) companion = load_bound(*companion_name);
    else if (auto c = companion_of(b.name); c && b.side == Side::Upper && !is_file_argument(bound_name))
        companion = builtin_bound(*c);
    const BoundCertificate cert = verify_ratio_bound(rec, b, companion, {o.shift_cap});
    if (o.format == "json") {
        Json doc = document("bound", {{"recurrence", recurrence_to_json(rec)}, {"bound", to_json(b)}});
        doc["certificates"].push_back(to_json(cert));
        doc["verdict"] = to_string(cert.verdict);
        std::cout << doc.dump(2) << '\n';
    } else {
        print_bound(std::cout, cert, o.verbose);
    }
    return exit_for(cert.verdict);
}

std::int64_t default_conclusion_start(Schema s) {
    switch (s) {
        case Schema::Thm31: return 3;
        case Schema::Thm41: return 2;
        case Schema::Thm42: return 3;
        case Schema::Factorial: return 1;
    }
    return 1;
}

int cmd_certify(const std::string& schema_name, const std::string& seq, const std::string& lower_name,
                const std::optional<std::string>& upper_name, std::optional<std::int64_t> from,
                std::optional<std::int64_t> small_from, const Options& o) {
    const Schema schema = parse_schema(schema_name);
    const Recurrence2 rec = load_sequence(seq);
    const BoundSpec lower = load_bound(lower_name);
    std::optional<BoundSpec> upper;
    if (upper_name) upper = load_bound(*upper_name);

    std::int64_t N;
    if (from) {
        N = *from;
    } else {
        std::int64_t v = lower.valid_from;
        if (upper) v = std::max(v, upper->valid_from);
        N = (schema == Schema::Thm41 || schema == Schema::Thm42) ? std::max<std::int64_t>(2, v - 2) : v;
    }
    std::int64_t start = small_from.value_or(std::min(default_conclusion_start(schema), N));
    const auto t0 = std::chrono::steady_clock::now();
    const CriterionCertificate cert = certify(schema, rec, lower, upper, N, start, {o.shift_cap});
    if (o.format == "json") {
        Json inputs{{"schema", schema_name}, {"recurrence", recurrence_to_json(rec)}, {"lower", to_json(lower)},
                    {"N", N}};
        if (upper) inputs["upper"] = to_json(*upper);
        Json doc = document("certify", std::move(inputs));
        doc["certificates"].push_back(to_json(cert));
        doc["verdict"] = to_string(cert.verdict);
        doc["timing"] = {{"ms", elapsed_ms(t0)}};
        std::cout << doc.dump(2) << '\n';
    } else {
        print_criterion(std::cout, cert, o.verbose);
    }
    return exit_for(cert.verdict);
}

int cmd_conjectures(int depth, std::int64_t range_cap, const CheckOptions& co, const Options& o) {
    const auto reports = check_conjectures(depth, range_cap, co);
    bool all = true;
    for (const auto& r : reports) all = all && r.holds;
    if (o.format == "json") {
        Json doc = document("conjectures", {{"depth", depth}, {"range_cap", range_cap}});
        for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        doc["verdict"] = all ? "holds" : "fails";
        std::cout << doc.dump(2) << '\n';
    } else {
        for (const auto& r : reports) print_report(std::cout, r);
    }
    return all ? kOk : kFails;
}

struct PaperItem {
    std::string name;
    int outcome;
};

int cmd_paper(bool skip_conjectures, int depth, std::int64_t range_cap, const CheckOptions& co, const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const ProverConfig config{o.shift_cap};
    Json doc = document("paper", {{"depth", depth}, {"range_cap", range_cap}, {"nth_root_cap", co.nth_root_cap},
                                  {"shift_cap", o.shift_cap}, {"skip_conjectures", skip_conjectures}});
    std::vector<PaperItem> items;
    std::ostringstream text;

    struct BoundJob {
        const char* seq;
        const char* bound;
    };
    text << "Ratio bounds\n";
    for (const BoundJob& job : {BoundJob{"flf", "s"}, {"flf", "t"}, {"clf", "l"}, {"clf", "ell"}, {"apery", "p"},
                                {"apery", "q"}}) {
        const Recurrence2 rec = builtin(job.seq);
        const BoundSpec b = builtin_bound(job.bound);
        std::optional<BoundSpec> companion;
        if (auto c = companion_of(b.name)) companion = builtin_bound(*c);
        BoundCertificate cert = verify_ratio_bound(rec, b, companion, config);
        print_bound(text, cert, o.verbose, "  ");
        doc["certificates"].push_back(to_json(cert));
        int outcome = exit_for(cert.verdict);
        if (cert.verdict == Verdict::Inconclusive) {
            // Symbolic step out of reach: fall back to an exact range check.
            EmpiricalBoundCheck e = empirical_bound_check(rec, b, 1000);
            text << "    empirical fallback on [" << e.from << ", " << e.to << "]: "
                 << (e.holds ? "holds" : "fails") << " (empirical)\n";
            doc["reports"].push_back(to_json(e));
            outcome = e.holds ? kInconclusive : kFails;
        }
        items.push_back({std::string("bound ") + job.bound, outcome});
    }

    struct TheoremJob {
        Schema schema;
        const char* seq;
        const char* lower;
        const char* upper;
        std::int64_t N;
        std::int64_t small_from;
    };
    text << "Theorems\n";
    for (const TheoremJob& job : {TheoremJob{Schema::Thm31, "flf", "s", nullptr, 6, 3},
                                  TheoremJob{Schema::Thm41, "clf", "l", "ell", 4, 2},
                                  TheoremJob{Schema::Thm41, "apery", "p", "q", 2, 2},
                                  TheoremJob{Schema::Thm42, "flf", "s", nullptr, 4, 3},
                                  TheoremJob{Schema::Factorial, "flf", "tau", "t", 2, 1}}) {
        std::optional<BoundSpec> upper;
        if (job.upper) upper = builtin_bound(job.upper);
        CriterionCertificate cert =
            certify(job.schema, builtin(job.seq), builtin_bound(job.lower), upper, job.N, job.small_from, config);
        std::ostringstream line;
        print_criterion(line, cert, o.verbose);
        std::istringstream lines(line.str());
        for (std::string l; std::getline(lines, l);) text << "  " << l << '\n';
        doc["certificates"].push_back(to_json(cert));
        items.push_back({std::string(to_string(job.schema)) + " " + job.seq, exit_for(cert.verdict)});
    }

    text << "Empirical checks\n";
    auto empirical = [&](const std::string& name, const PropertyReport& r) {
        print_report(text, r, "  ");
        doc["reports"].push_back(to_json(r));
        items.push_back({name, r.holds ? kOk : kFails});
    };
    empirical("nth-root apery", check_range(SequenceView::of(builtin("apery")), Property::NthRootLogConcave, 2,
                                            co.nth_root_cap, co));
    empirical("nth-root clf", check_range(SequenceView::of(builtin("clf")), Property::NthRootLogConcave, 2,
                                          co.nth_root_cap, co));
    empirical("factorial flf", check_range(SequenceView::of(builtin("flf")), Property::FactorialLogConvex, 1, 1000, co));
    empirical("log-balanced n!V",
              check_range(SequenceView::of(builtin("flf")).restrict_from(1).factorial_scaled(), Property::LogBalanced,
                          2, 1000, co));

    if (!skip_conjectures) {
        text << "Conjectures (empirical evidence only)\n";
        for (const auto& r : check_conjectures(depth, range_cap, co)) {
            print_report(text, r, "  ");
            doc["reports"].push_back(to_json(r));
            items.push_back({r.property, r.holds ? kOk : kFails});
        }
    }

    int code = kOk;
    for (const auto& it : items) {
        if (it.outcome == kFails) code = kFails;
        else if (it.outcome == kInconclusive && code == kOk) code = kInconclusive;
    }
    doc["verdict"] = code == kOk ? "holds" : code == kFails ? "fails" : "inconclusive";
    doc["timing"] = {{"ms", elapsed_ms(t0)}};
    if (o.format == "json") {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << text.str();
        for (const auto& it : items)
            if (it.outcome != kOk)
                std::cout << "FAILED: " << it.name << (it.outcome == kInconclusive ? " (inconclusive)" : "") << '\n';
        std::cout << "overall: " << doc["verdict"].get<std::string>() << '\n';
    }
    return code;
}

std::int64_t shift_cap_from_env() {
    if (const char* env = std::getenv("LOGCERT_SHIFT_CAP")) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw Error(std::string("LOGCERT_SHIFT_CAP must be a positive integer, got '") + env + "'");
    }
    return ProverConfig{}.shift_cap;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact log-concavity and log-convexity certificates for order-2 recurrences"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    CheckOptions co;
    std::optional<std::int64_t> shift_cap;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_flag("--verbose,-v", o.verbose, "Print every witness");
    app.add_option("--shift-cap", shift_cap, "Largest shift tried by the positivity prover (env LOGCERT_SHIFT_CAP)")
        ->check(CLI::PositiveNumber);
    app.add_option("--nth-root-cap", co.nth_root_cap, "Largest n for n-th root checks")->check(CLI::PositiveNumber);
    app.add_flag("--exact-powers", co.exact_powers, "Always compare n-th roots by full powers");

    std::string seq, property, schema;
    std::int64_t from = 0, to = 10;
    std::optional<std::int64_t> opt_from, small_from;
    std::string lower;
    std::optional<std::string> upper, companion;
    int depth = 6;
    std::int64_t range_cap = 200;
    bool skip_conjectures = false;

    auto* terms = app.add_subcommand("terms", "Exact terms S_from .. S_to");
    terms->add_option("sequence", seq, "clf, flf, apery or a recurrence file")->required();
    terms->add_option("from,--from", from, "First index");
    terms->add_option("to,--to", to, "Last index");

    auto* check = app.add_subcommand("check", "Exact check of a property on a range of centers");
    check->add_option("sequence", seq, "clf, flf, apery or a recurrence file")->required();
    check->add_option("property", property,
                      "log-concave, strict-log-concave, log-convex, strict-log-convex, ratio-log-concave, "
                      "ratio-log-convex, nth-root-log-concave, factorial-log-convex, log-balanced, k-log-convex")
        ->required();
    check->add_option("from,--from", from, "First center");
    check->add_option("to,--to", to, "Last center");
    check->add_option("--depth", depth, "k for k-log-convex")->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "Certify a ratio bound S_n/S_{n-1} vs f(n)");
    bound->add_option("sequence", seq, "clf, flf, apery or a recurrence file")->required();
    bound->add_option("bound", lower, "s, t, l, ell, p, q, tau or a bound file")->required();
    bound->add_option("--from", opt_from, "Claim the bound from this index");
    bound->add_option("--companion", companion, "Lower bound that keeps the ratio positive (upper bounds)");

    auto* certify_cmd = app.add_subcommand("certify", "Certify a schema for all n >= N");
    certify_cmd->add_option("schema", schema, "thm31, thm41, thm42 or factorial")->required();
    certify_cmd->add_option("sequence", seq, "clf, flf, apery or a recurrence file")->required();
    certify_cmd->add_option("--lower", lower, "Lower ratio bound (name or file)")->required();
    certify_cmd->add_option("--upper", upper, "Upper ratio bound (name or file)");
    certify_cmd->add_option("--from", opt_from, "N");
    certify_cmd->add_option("--small-from", small_from, "First index of the concluded inequality");

    auto* conj = app.add_subcommand("conjectures", "Finite evidence for the three open conjectures");
    conj->add_option("--depth", depth, "Largest k")->check(CLI::PositiveNumber);
    conj->add_option("--range-cap", range_cap, "Largest center checked")->check(CLI::Range(10, 1'000'000));

    auto* paper = app.add_subcommand("paper", "Reproduce every bound, theorem and empirical claim");
    paper->add_flag("--skip-conjectures", skip_conjectures, "Certified items only");
    bool json = false;
    paper->add_flag("--json", json, "Same as --format json");
    paper->add_option("--depth", depth, "Conjecture depth")->check(CLI::PositiveNumber);
    paper->add_option("--range-cap", range_cap, "Conjecture range")->check(CLI::Range(10, 1'000'000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        o.shift_cap = shift_cap ? *shift_cap : shift_cap_from_env();
        if (json) o.format = "json";
        if (*terms) return cmd_terms(seq, from, to, o);
        if (*check) return cmd_check(seq, property, from, to, depth, co, o);
        if (*bound) return cmd_bound(seq, lower, opt_from, companion, o);
        if (*certify_cmd) return cmd_certify(schema, seq, lower, upper, opt_from, small_from, o);
        if (*conj) return cmd_conjectures(depth, range_cap, co, o);
        if (*paper) return cmd_paper(skip_conjectures, depth, range_cap, co, o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
