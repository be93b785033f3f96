#include <lacunary/series.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <lacunary/errors.hpp>

#include "parse_util.hpp"

namespace lacunary
{

namespace
{

// 64-bit arithmetic that saturates to kExponentOverflow.
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? kExponentOverflow : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? kExponentOverflow : r;
}

std::uint64_t clamp_exponent(std::uint64_t a, const PrecisionBudget &budget)
{
    return std::min(a, budget.max_exponent_bits + 1);
}

void require_binary(const SeriesSpec &s, const char *op)
{
    if (s.radix() != 2) {
        throw std::domain_error(std::string(op) + ": series '" + s.name() + "' is not a binary series");
    }
}

// Head = first N terms; the tail after it is either exhausted, or a list of
// explicit (pre-strict) terms followed by a geometric-dominated remainder
// starting at strict_exponent.
struct Split {
    std::vector<SeriesTerm> head;
    std::vector<SeriesTerm> explicit_tail;
    std::optional<std::uint64_t> strict_exponent;
};

Split split_series(const SeriesSpec &spec, std::uint64_t n_terms, bool with_tail)
{
    Split out;
    auto cur = spec.cursor();
    while (out.head.size() < n_terms) {
        auto t = cur.next();
        if (!t) {
            return out;
        }
        out.head.push_back(std::move(*t));
    }
    if (!with_tail) {
        return out;
    }
    while (auto t = cur.next()) {
        if (t->first_raw >= spec.strict_from()) {
            out.strict_exponent = t->exponent;
            break;
        }
        out.explicit_tail.push_back(std::move(*t));
    }
    return out;
}

// Largest head exponent; every head term has to be materialized exactly.
std::uint64_t head_top_exponent(const std::vector<SeriesTerm> &head, const PrecisionBudget &budget)
{
    std::uint64_t top_exponent = 0;
    for (const auto &t : head) {
        if (t.exponent > budget.max_exponent_bits) {
            throw BudgetExceeded("term exponent " + (t.exponent == kExponentOverflow ? std::string(">= 2^64")
                                                                                     : std::to_string(t.exponent))
                                 + " exceeds the exponent budget of " + std::to_string(budget.max_exponent_bits)
                                 + " bits");
        }
        top_exponent = std::max(top_exponent, t.exponent);
    }
    return top_exponent;
}

Dyadic dyadic_tail(const SeriesSpec &spec, const Split &split, const PrecisionBudget &budget)
{
    Dyadic total;
    for (const auto &t : split.explicit_tail) {
        total += Dyadic(BigInt(abs(t.coefficient))).scaled(-static_cast<std::int64_t>(clamp_exponent(t.exponent, budget)));
    }
    if (split.strict_exponent) {
        if (!spec.coefficient_bound()) {
            throw std::domain_error("series '" + spec.name() + "' has unbounded coefficients; no tail bound exists");
        }
        const auto a = static_cast<std::int64_t>(clamp_exponent(*split.strict_exponent, budget));
        total += Dyadic(*spec.coefficient_bound()).scaled(1 - a);
    }
    return total;
}

std::uint64_t feasible_terms(const SeriesSpec &spec, const PrecisionBudget &budget)
{
    std::uint64_t n = 0;
    auto cur = spec.cursor();
    while (n < budget.max_terms) {
        auto t = cur.next();
        if (!t || t->exponent > budget.max_exponent_bits) {
            break;
        }
        ++n;
    }
    return n;
}

BigInt pow_ui(unsigned long base, std::uint64_t e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Rational enclosure [lo, hi] of a base-10 series.
std::pair<mpq_class, mpq_class> decimal_enclosure(const SeriesSpec &spec, std::uint64_t n_terms,
                                                  const PrecisionBudget &budget)
{
    const auto split = split_series(spec, n_terms, true);
    head_top_exponent(split.head, budget);
    mpq_class sum = 0;
    for (const auto &t : split.head) {
        sum += mpq_class(t.coefficient, pow_ui(10, t.exponent));
    }
    mpq_class tail = 0;
    for (const auto &t : split.explicit_tail) {
        tail += mpq_class(BigInt(abs(t.coefficient)), pow_ui(10, clamp_exponent(t.exponent, budget)));
    }
    if (split.strict_exponent) {
        if (!spec.coefficient_bound()) {
            throw std::domain_error("series '" + spec.name() + "' has unbounded coefficients; no tail bound exists");
        }
        // sum_{j >= a} 10^-j = 10^-a * 10/9
        tail += mpq_class(*spec.coefficient_bound() * 10,
                          pow_ui(10, clamp_exponent(*split.strict_exponent, budget)) * 9);
    }
    sum.canonicalize();
    tail.canonicalize();
    return {sum - tail, sum + tail};
}

BigInt floor_q(const mpq_class &q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string padded_digits(const BigInt &scaled, const BigInt &modulus, unsigned base, std::uint64_t count)
{
    BigInt rem;
    mpz_fdiv_r(rem.get_mpz_t(), scaled.get_mpz_t(), modulus.get_mpz_t());
    std::string s = rem.get_str(static_cast<int>(base));
    if (s.size() < count) {
        s.insert(0, count - s.size(), '0');
    }
    return s;
}

BigInt floor_div(const BigInt &a, const BigInt &b)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace

SeriesSpec::SeriesSpec(std::string name, unsigned radix, ExponentFn exponents, std::uint64_t strict_from)
    : name_(std::move(name)), radix_(radix), exponents_(std::make_shared<const ExponentFn>(std::move(exponents))),
      coefficients_(std::make_shared<const CoefficientFn>([](std::uint64_t) { return BigInt(1); })),
      strict_from_(strict_from)
{
    if (radix_ != 2 && radix_ != 10) {
        throw std::invalid_argument("series radix must be 2 or 10");
    }
}

SeriesSpec SeriesSpec::mahler()
{
    return SeriesSpec(
        "mahler", 2,
        [](std::uint64_t n) -> std::optional<std::uint64_t> {
            return n < 64 ? std::uint64_t{1} << n : kExponentOverflow;
        },
        0);
}

SeriesSpec SeriesSpec::liouville()
{
    return SeriesSpec(
        "liouville", 2,
        [](std::uint64_t n) -> std::optional<std::uint64_t> {
            std::uint64_t f = 1;
            for (std::uint64_t i = 2; i <= n && f != kExponentOverflow; ++i) {
                f = sat_mul(f, i);
            }
            return f;
        },
        1);
}

SeriesSpec SeriesSpec::nu10()
{
    auto s = mahler();
    s.name_ = "nu10";
    s.radix_ = 10;
    return s;
}

SeriesSpec SeriesSpec::fibonacci()
{
    return SeriesSpec(
        "fib", 2,
        [](std::uint64_t n) -> std::optional<std::uint64_t> {
            std::uint64_t a = 1;
            std::uint64_t b = 1;
            for (std::uint64_t i = 0; i < n && a != kExponentOverflow; ++i) {
                a = std::exchange(b, sat_add(a, b));
            }
            return a;
        },
        1);
}

SeriesSpec SeriesSpec::geometric()
{
    return SeriesSpec(
        "geometric", 2, [](std::uint64_t n) -> std::optional<std::uint64_t> { return n; }, 0);
}

SeriesSpec SeriesSpec::geomfloor(const mpq_class &theta, std::string theta_label)
{
    if (theta <= 1) {
        throw ParseError("geomfloor ratio must exceed 1, got " + theta_label);
    }
    // From the first n with theta^n (theta - 1) >= 1 on, consecutive floors differ.
    std::uint64_t strict = 0;
    for (mpq_class power = 1; power * (theta - 1) < 1; power *= theta) {
        ++strict;
    }
    const BigInt num = theta.get_num();
    const BigInt den = theta.get_den();
    return SeriesSpec(
        "geomfloor:" + theta_label, 2,
        [num, den](std::uint64_t n) -> std::optional<std::uint64_t> {
            BigInt p;
            BigInt q;
            mpz_pow_ui(p.get_mpz_t(), num.get_mpz_t(), n);
            mpz_pow_ui(q.get_mpz_t(), den.get_mpz_t(), n);
            const BigInt f = floor_div(p, q);
            if (mpz_sizeinbase(f.get_mpz_t(), 2) > 63) {
                return kExponentOverflow;
            }
            return static_cast<std::uint64_t>(f.get_ui());
        },
        strict);
}

SeriesSpec SeriesSpec::custom(std::vector<std::uint64_t> exponents)
{
    if (!std::is_sorted(exponents.begin(), exponents.end())) {
        throw ParseError("custom series exponents must be non-decreasing");
    }
    std::string name = "list:";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        name += (i ? "," : "") + std::to_string(exponents[i]);
    }
    const auto size = exponents.size();
    auto shared = std::make_shared<const std::vector<std::uint64_t>>(std::move(exponents));
    return SeriesSpec(
        std::move(name), 2,
        [shared](std::uint64_t n) -> std::optional<std::uint64_t> {
            if (n >= shared->size()) {
                return std::nullopt;
            }
            return (*shared)[n];
        },
        size);
}

SeriesSpec SeriesSpec::parse(std::string_view text)
{
    text = detail::trim(text);
    if (text == "mahler") {
        return mahler();
    }
    if (text == "liouville") {
        return liouville();
    }
    if (text == "nu10") {
        return nu10();
    }
    if (text == "fib") {
        return fibonacci();
    }
    if (text == "geometric") {
        return geometric();
    }
    if (text.starts_with("geomfloor:")) {
        const auto arg = text.substr(10);
        return geomfloor(detail::parse_rational(arg, "geomfloor ratio"), std::string(arg));
    }
    if (text.starts_with("list:")) {
        std::vector<std::uint64_t> exps;
        for (const auto tok : detail::split(text.substr(5), ',')) {
            exps.push_back(detail::parse_u64(tok, "series exponent"));
        }
        return custom(std::move(exps));
    }
    throw ParseError("unknown series '" + std::string(text)
                     + "' (expected mahler, liouville, nu10, fib, geometric, geomfloor:THETA or list:a,b,...)");
}

SeriesSpec SeriesSpec::with_coefficients(std::string label, CoefficientFn coefficients,
                                         std::optional<BigInt> bound) const
{
    SeriesSpec s = *this;
    const auto at = s.name_.find('@');
    if (at != std::string::npos) {
        s.name_.erase(at);
    }
    if (label != "ones") {
        s.name_ += "@" + label;
    }
    s.coefficient_label_ = std::move(label);
    s.coefficients_ = std::make_shared<const CoefficientFn>(std::move(coefficients));
    if (bound && *bound < 0) {
        throw std::invalid_argument("coefficient bound must be non-negative");
    }
    s.bound_ = std::move(bound);
    return s;
}

SeriesSpec SeriesSpec::with_coefficients(std::string_view text) const
{
    text = detail::trim(text);
    if (text == "ones") {
        return with_coefficients("ones", [](std::uint64_t) { return BigInt(1); }, BigInt(1));
    }
    if (text == "index") {
        return with_coefficients(
            "index", [](std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }, std::nullopt);
    }
    if (text.starts_with("cycle:")) {
        std::vector<BigInt> cycle;
        BigInt bound = 0;
        for (const auto tok : detail::split(text.substr(6), ',')) {
            cycle.push_back(detail::parse_bigint(tok, "series coefficient"));
            bound = std::max(bound, BigInt(abs(cycle.back())));
        }
        auto shared = std::make_shared<const std::vector<BigInt>>(std::move(cycle));
        return with_coefficients(
            std::string(text), [shared](std::uint64_t n) { return (*shared)[n % shared->size()]; }, bound);
    }
    throw ParseError("unknown coefficient spec '" + std::string(text) + "' (expected ones, index or cycle:c0,c1,...)");
}

SeriesSpec SeriesSpec::canonicalized() const
{
    SeriesSpec s = *this;
    s.canonical_ = true;
    return s;
}

std::optional<std::uint64_t> SeriesSpec::raw_exponent(std::uint64_t index) const
{
    return (*exponents_)(index);
}

BigInt SeriesSpec::raw_coefficient(std::uint64_t index) const
{
    BigInt c = (*coefficients_)(index);
    if (bound_ && abs(c) > *bound_) {
        throw std::domain_error("coefficient b_" + std::to_string(index) + " = " + c.get_str()
                                + " exceeds the declared bound " + bound_->get_str());
    }
    return c;
}

std::vector<SeriesTerm> SeriesSpec::terms(std::uint64_t count) const
{
    std::vector<SeriesTerm> out;
    auto cur = cursor();
    while (out.size() < count) {
        auto t = cur.next();
        if (!t) {
            break;
        }
        out.push_back(std::move(*t));
    }
    return out;
}

std::optional<SeriesTerm> SeriesSpec::Cursor::next()
{
    const auto &spec = *spec_;
    const auto e = spec.raw_exponent(raw_);
    if (!e) {
        return std::nullopt;
    }
    if (raw_ > 0 && *e != kExponentOverflow) {
        if (*e < last_exponent_) {
            throw std::domain_error("series '" + spec.name() + "': exponents decrease at index " + std::to_string(raw_));
        }
        if (raw_ > spec.strict_from() && *e == last_exponent_) {
            throw std::domain_error("series '" + spec.name() + "': exponents repeat at index " + std::to_string(raw_)
                                    + " inside the declared strictly increasing range");
        }
    }
    SeriesTerm t{*e, spec.raw_coefficient(raw_), raw_, raw_};
    last_exponent_ = *e;
    ++raw_;
    if (spec.canonical_ && *e != kExponentOverflow) {
        while (t.last_raw < spec.strict_from()) {
            const auto peek = spec.raw_exponent(raw_);
            if (!peek || *peek != t.exponent) {
                break;
            }
            t.coefficient += spec.raw_coefficient(raw_);
            t.last_raw = raw_;
            ++raw_;
        }
    }
    return t;
}

Dyadic partial_sum(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget)
{
    require_binary(series, "partial_sum");
    const auto split = split_series(series, n_terms, false);
    const auto top = head_top_exponent(split.head, budget);
    BigInt acc = 0;
    for (const auto &t : split.head) {
        BigInt shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), t.coefficient.get_mpz_t(), top - t.exponent);
        acc += shifted;
    }
    return Dyadic::from_parts(std::move(acc), top);
}

Dyadic tail_bound(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget)
{
    require_binary(series, "tail_bound");
    if (!series.is_canonical()) {
        throw std::domain_error("tail_bound: series '" + series.name() + "' must be canonicalized first");
    }
    return dyadic_tail(series, split_series(series, n_terms, true), budget);
}

DyadicInterval eval_interval(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget)
{
    return DyadicInterval::around(partial_sum(series, n_terms, budget), tail_bound(series, n_terms, budget));
}

std::optional<std::uint64_t> terms_for_width(const SeriesSpec &series, const Dyadic &width,
                                             const PrecisionBudget &budget)
{
    const Dyadic half = width.scaled(-1);
    std::uint64_t hi = feasible_terms(series, budget);
    if (tail_bound(series, hi, budget) > half) {
        return std::nullopt;
    }
    std::uint64_t lo = 0;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (tail_bound(series, mid, budget) <= half) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

DigitExpansion digits(const SeriesSpec &series, unsigned base, std::uint64_t count, const PrecisionBudget &budget)
{
    if (base != 2 && base != 10) {
        throw std::invalid_argument("digits: base must be 2 or 10");
    }
    if (count == 0) {
        throw std::invalid_argument("digits: count must be at least 1");
    }
    const auto spec = series.canonicalized();
    const BigInt modulus = pow_ui(base, count);
    const auto max_terms = feasible_terms(spec, budget);

    std::uint64_t n = std::min<std::uint64_t>(1, max_terms);
    while (true) {
        BigInt lo_scaled;
        BigInt hi_scaled;
        if (spec.radix() == 2) {
            const auto x = eval_interval(spec, n, budget);
            lo_scaled = (x.lower() * Dyadic(modulus)).floor();
            hi_scaled = (x.upper() * Dyadic(modulus)).floor();
        } else {
            const auto [lo, hi] = decimal_enclosure(spec, n, budget);
            lo_scaled = floor_q(lo * modulus);
            hi_scaled = floor_q(hi * modulus);
        }
        if (lo_scaled == hi_scaled) {
            return DigitExpansion{floor_div(lo_scaled, modulus), padded_digits(lo_scaled, modulus, base, count), base, n};
        }
        if (n >= max_terms) {
            std::string prefix;
            if (floor_div(lo_scaled, modulus) == floor_div(hi_scaled, modulus)) {
                const auto a = padded_digits(lo_scaled, modulus, base, count);
                const auto b = padded_digits(hi_scaled, modulus, base, count);
                const auto mismatch = std::mismatch(a.begin(), a.end(), b.begin());
                prefix.assign(a.begin(), mismatch.first);
            }
            throw PrecisionUnresolvable("digits of '" + series.name() + "' undetermined after " + std::to_string(n)
                                            + " terms; determined prefix has " + std::to_string(prefix.size())
                                            + " digits",
                                        prefix);
        }
        n = std::min(n * 2, max_terms);
    }
}

} // namespace lacunary
