#pragma once

/**
 * @file recurrence.hpp
 * @brief Order-2 recurrences S_n = a(n) S_{n-1} + b(n) S_{n-2} and sequence views.
 *
 * Index conventions (the only place they are fixed):
 *   - Recurrence2 terms are S_0, S_1, ...; init holds S_0 .. S_{valid_from-1}
 *     and the recurrence produces every S_n with n >= valid_from.
 *   - ratio(rec, n) = S_n / S_{n-1}.
 *   - l_operator(S)_n = S_{n-1} S_{n+1} - S_n^2, defined for n >= first(S) + 1.
 *   - r_operator(S)_n = S_{n+1} / S_n, defined for n >= first(S).
 *   - restrict_from(k) keeps the same indices and drops those below k.
 */

#include "logcert/parse.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logcert {

namespace detail {

/// Rational-coefficient copy of a rational function for fast exact evaluation.
struct RationalEvaluator {
    std::vector<BigRational> num, den;

    explicit RationalEvaluator(const RatFunc& f) {
        for (const auto& c : f.num().coefficients()) {
            if (!c.is_rational()) throw Error("recurrence coefficients must be rational functions over Q");
            num.push_back(c.rat());
        }
        for (const auto& c : f.den().coefficients()) {
            if (!c.is_rational()) throw Error("recurrence coefficients must be rational functions over Q");
            den.push_back(c.rat());
        }
    }

    static BigRational horner(const std::vector<BigRational>& c, const BigRational& x) {
        BigRational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    std::optional<BigRational> operator()(std::int64_t n) const {
        BigRational x(static_cast<long>(n));
        BigRational d = horner(den, x);
        if (sgn(d) == 0) return std::nullopt;
        return BigRational(horner(num, x) / d);
    }
};

struct TermCache {
    std::mutex mutex;
    std::vector<BigRational> terms;
};

}  // namespace detail

class Recurrence2 {
public:
    Recurrence2(std::string name, RatFunc a, RatFunc b, std::vector<BigRational> init, std::int64_t valid_from)
        : name_(std::move(name)),
          a_(std::move(a)),
          b_(std::move(b)),
          init_(std::move(init)),
          valid_from_(valid_from),
          eval_a_(a_),
          eval_b_(b_),
          cache_(std::make_shared<detail::TermCache>()) {
        if (valid_from_ < 2) throw Error("recurrence valid_from must be at least 2");
        if (static_cast<std::int64_t>(init_.size()) != valid_from_)
            throw Error("recurrence needs exactly valid_from initial values");
        cache_->terms = init_;
    }

    const std::string& name() const { return name_; }
    const RatFunc& a() const { return a_; }
    const RatFunc& b() const { return b_; }
    const std::vector<BigRational>& init() const { return init_; }
    const BigRational& s0() const { return init_[0]; }
    const BigRational& s1() const { return init_[1]; }
    std::int64_t valid_from() const { return valid_from_; }

    /// Exact a(n); throws PoleError at a pole.
    BigRational a_at(std::int64_t n) const {
        auto v = eval_a_(n);
        if (!v) throw PoleError(n);
        return *v;
    }
    BigRational b_at(std::int64_t n) const {
        auto v = eval_b_(n);
        if (!v) throw PoleError(n);
        return *v;
    }

    /// S_n, memoized; safe to call concurrently.
    BigRational term(std::int64_t n) const {
        if (n < 0) throw Error("negative term index");
        std::lock_guard lock(cache_->mutex);
        auto& t = cache_->terms;
        while (static_cast<std::int64_t>(t.size()) <= n) {
            const std::int64_t k = static_cast<std::int64_t>(t.size());
            BigRational next = a_at(k) * t[k - 1] + b_at(k) * t[k - 2];
            t.push_back(std::move(next));
        }
        return t[n];
    }

private:
    std::string name_;
    RatFunc a_, b_;
    std::vector<BigRational> init_;
    std::int64_t valid_from_;
    detail::RationalEvaluator eval_a_, eval_b_;
    std::shared_ptr<detail::TermCache> cache_;
};

inline BigRational term(const Recurrence2& rec, std::int64_t n) { return rec.term(n); }

/// S_n / S_{n-1}.
inline BigRational ratio(const Recurrence2& rec, std::int64_t n) {
    if (n < 1) throw Error("ratio index must be at least 1");
    BigRational prev = rec.term(n - 1);
    if (sgn(prev) == 0) throw DivisionByZero("zero predecessor at index " + std::to_string(n - 1));
    return rec.term(n) / prev;
}

/// The built-in recurrences: "clf" (P_n), "flf" (V_n) and "apery" (A_n).
inline Recurrence2 builtin(const std::string& name) {
    if (name == "clf")
        return {"clf", parse_ratfunc("8(3n^2-3n+1)/n^2"), parse_ratfunc("-128(n-1)^2/n^2"),
                {BigRational(1), BigRational(8)}, 2};
    if (name == "flf")
        return {"flf", parse_ratfunc("8(3n^2-n-1)/n^2"), parse_ratfunc("-128(n-2)/(n-1)"),
                {BigRational(1), BigRational(8)}, 2};
    if (name == "apery")
        return {"apery", parse_ratfunc("(34n^3-51n^2+27n-5)/n^3"), parse_ratfunc("-(n-1)^3/n^3"),
                {BigRational(1), BigRational(5)}, 2};
    throw Error("unknown built-in sequence '" + name + "' (expected clf, flf or apery)");
}

/// Lazily evaluated, memoized exact sequence indexed from first_index().
class SequenceView {
public:
    using Generator = std::function<BigRational(std::int64_t)>;

    static SequenceView of(const Recurrence2& rec) {
        return SequenceView(std::make_shared<Node>(0, std::nullopt, std::vector<std::string>{rec.name()},
                                                   [rec](std::int64_t n) { return rec.term(n); }));
    }

    /// A finite sequence with terms[i] at index first + i.
    static SequenceView from_terms(std::vector<BigRational> terms, std::int64_t first, std::string name) {
        std::optional<std::int64_t> last;
        if (!terms.empty()) last = first + static_cast<std::int64_t>(terms.size()) - 1;
        auto shared = std::make_shared<const std::vector<BigRational>>(std::move(terms));
        return SequenceView(std::make_shared<Node>(first, last, std::vector<std::string>{std::move(name)},
                                                   [shared, first](std::int64_t n) { return (*shared)[n - first]; }));
    }

    static SequenceView from_function(Generator g, std::int64_t first, std::string name) {
        return SequenceView(
            std::make_shared<Node>(first, std::nullopt, std::vector<std::string>{std::move(name)}, std::move(g)));
    }

    std::int64_t first_index() const { return node_->first; }
    std::optional<std::int64_t> last_index() const { return node_->last; }
    const std::vector<std::string>& derivation() const { return node_->chain; }
    std::string name() const {
        std::string out;
        for (const auto& step : node_->chain) out = out.empty() ? step : step + "(" + out + ")";
        return out;
    }

    bool has(std::int64_t n) const { return n >= first_index() && (!last_index() || n <= *last_index()); }

    BigRational term(std::int64_t n) const {
        if (!has(n)) throw Error("index " + std::to_string(n) + " outside sequence " + name());
        return node_->get(n);
    }
    BigRational operator[](std::int64_t n) const { return term(n); }

    SequenceView derive(std::string step, std::int64_t first, std::optional<std::int64_t> last, Generator g) const {
        auto chain = node_->chain;
        chain.push_back(std::move(step));
        return SequenceView(std::make_shared<Node>(first, last, std::move(chain), std::move(g)));
    }

    /// The same terms restricted to indices >= k.
    SequenceView restrict_from(std::int64_t k) const {
        if (k <= first_index()) return *this;
        auto self = *this;
        return derive("from" + std::to_string(k), k, last_index(), [self](std::int64_t n) { return self.term(n); });
    }

    SequenceView negated() const {
        auto self = *this;
        return derive("neg", first_index(), last_index(), [self](std::int64_t n) { return BigRational(-self.term(n)); });
    }

    /// n! S_n.
    SequenceView factorial_scaled() const {
        auto self = *this;
        if (first_index() < 0) throw Error("factorial scaling needs nonnegative indices");
        return derive("fact", first_index(), last_index(), [self](std::int64_t n) {
            BigInt f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
            return BigRational(self.term(n) * f);
        });
    }

    /// S_n / n!.
    SequenceView over_factorial() const {
        auto self = *this;
        if (first_index() < 0) throw Error("factorial scaling needs nonnegative indices");
        return derive("overfact", first_index(), last_index(), [self](std::int64_t n) {
            BigInt f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
            return BigRational(self.term(n) / f);
        });
    }

private:
    struct Node {
        Node(std::int64_t f, std::optional<std::int64_t> l, std::vector<std::string> c, Generator g)
            : first(f), last(l), chain(std::move(c)), gen(std::move(g)) {}

        BigRational get(std::int64_t n) const {
            std::lock_guard lock(mutex);
            std::size_t idx = static_cast<std::size_t>(n - first);
            if (idx >= memo.size()) memo.resize(idx + 1);
            auto& slot = memo[idx];
            if (!slot) slot = gen(n);
            return *slot;
        }

        std::int64_t first;
        std::optional<std::int64_t> last;
        std::vector<std::string> chain;
        Generator gen;
        mutable std::mutex mutex;
        mutable std::vector<std::optional<BigRational>> memo;
    };

    explicit SequenceView(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// L(S)_n = S_{n-1} S_{n+1} - S_n^2 for n >= first(S) + 1.
inline SequenceView l_operator(const SequenceView& s) {
    std::optional<std::int64_t> last;
    if (s.last_index()) last = *s.last_index() - 1;
    return s.derive("L", s.first_index() + 1, last, [s](std::int64_t n) {
        BigRational mid = s.term(n);
        return BigRational(s.term(n - 1) * s.term(n + 1) - mid * mid);
    });
}

/// R(S)_n = S_{n+1} / S_n for n >= first(S).
inline SequenceView r_operator(const SequenceView& s) {
    std::optional<std::int64_t> last;
    if (s.last_index()) last = *s.last_index() - 1;
    return s.derive("R", s.first_index(), last, [s](std::int64_t n) {
        BigRational d = s.term(n);
        if (sgn(d) == 0) throw DivisionByZero("zero term at index " + std::to_string(n) + " under R");
        return BigRational(s.term(n + 1) / d);
    });
}

}  // namespace logcert
