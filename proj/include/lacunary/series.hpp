#ifndef LACUNARY_SERIES_HPP
#define LACUNARY_SERIES_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <lacunary/dyadic.hpp>

namespace lacunary
{

// Limits on how far a computation may refine.
struct PrecisionBudget {
    // Largest exponent a_n whose term may be materialized exactly.
    std::uint64_t max_exponent_bits = std::uint64_t{1} << 20;
    // Largest number of terms a refinement loop may sum.
    std::uint64_t max_terms = std::uint64_t{1} << 16;
};

// Exponent generators saturate here when a_n does not fit in 64 bits.
inline constexpr std::uint64_t kExponentOverflow = std::numeric_limits<std::uint64_t>::max();

// One (possibly merged) term c * radix^-exponent. first_raw..last_raw are
// the generator indices folded into it.
struct SeriesTerm {
    std::uint64_t exponent = 0;
    BigInt coefficient;
    std::uint64_t first_raw = 0;
    std::uint64_t last_raw = 0;
};

// sum_n b_n * radix^-a_n with non-decreasing exponents a_n.
//
// Exponent generators return nullopt past the end of a finite series. Every
// generator declares `strict_from`: from that raw index on, exponents are
// strictly increasing, so tails there are dominated by a geometric series.
// Coefficients carry an optional declared bound B >= |b_n|, checked on every
// access; tail bounds need it.
class SeriesSpec
{
public:
    using ExponentFn = std::function<std::optional<std::uint64_t>(std::uint64_t)>;
    using CoefficientFn = std::function<BigInt(std::uint64_t)>;

    SeriesSpec(std::string name, unsigned radix, ExponentFn exponents, std::uint64_t strict_from);

    // a_n = 2^n.
    static SeriesSpec mahler();
    // a_n = n!; a_0 = a_1 = 1 merge under canonicalization.
    static SeriesSpec liouville();
    // a_n = 2^n read in base 10.
    static SeriesSpec nu10();
    // a_n = f_n with f_0 = f_1 = 1.
    static SeriesSpec fibonacci();
    // a_n = n, so with unit coefficients the value is exactly 2.
    static SeriesSpec geometric();
    // a_n = floor(theta^n), theta > 1.
    static SeriesSpec geomfloor(const mpq_class &theta, std::string theta_label);
    // Finite, non-decreasing exponent list.
    static SeriesSpec custom(std::vector<std::uint64_t> exponents);

    // "mahler", "liouville", "nu10", "fib", "geometric", "geomfloor:THETA",
    // "list:a0,a1,...".
    static SeriesSpec parse(std::string_view text);

    // Replaces the coefficient generator. `bound` may be absent for
    // unbounded coefficients (tail bounds then throw).
    SeriesSpec with_coefficients(std::string label, CoefficientFn coefficients, std::optional<BigInt> bound) const;
    // "ones", "index" (b_n = n, unbounded), "cycle:c0,c1,..." (periodic).
    SeriesSpec with_coefficients(std::string_view text) const;

    SeriesSpec canonicalized() const;

    bool is_canonical() const noexcept
    {
        return canonical_;
    }
    const std::string &name() const noexcept
    {
        return name_;
    }
    unsigned radix() const noexcept
    {
        return radix_;
    }
    std::uint64_t strict_from() const noexcept
    {
        return strict_from_;
    }
    const std::optional<BigInt> &coefficient_bound() const noexcept
    {
        return bound_;
    }

    std::optional<std::uint64_t> raw_exponent(std::uint64_t index) const;
    BigInt raw_coefficient(std::uint64_t index) const;

    // First `count` terms (merged when canonical); fewer if the series ends.
    std::vector<SeriesTerm> terms(std::uint64_t count) const;

    class Cursor
    {
    public:
        explicit Cursor(const SeriesSpec &spec) : spec_(&spec) {}
        std::optional<SeriesTerm> next();

    private:
        const SeriesSpec *spec_;
        std::uint64_t raw_ = 0;
        std::uint64_t last_exponent_ = 0;
    };

    Cursor cursor() const
    {
        return Cursor(*this);
    }

private:
    std::string name_;
    std::string coefficient_label_ = "ones";
    unsigned radix_;
    std::shared_ptr<const ExponentFn> exponents_;
    std::shared_ptr<const CoefficientFn> coefficients_;
    std::optional<BigInt> bound_{1};
    std::uint64_t strict_from_;
    bool canonical_ = false;
};

// Exact sum of the first N terms. Binary series only.
Dyadic partial_sum(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget = {});

// T >= |sum of terms N, N+1, ...|. Requires a canonical binary series.
// Past the exponent budget the bound is clamped to B * 2^-budget, which is
// still an upper bound.
Dyadic tail_bound(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget = {});

// [S - T, S + T] from the two operations above.
DyadicInterval eval_interval(const SeriesSpec &series, std::uint64_t n_terms, const PrecisionBudget &budget = {});

// Smallest N whose enclosure is at most `width` wide, bounded by the budget.
std::optional<std::uint64_t> terms_for_width(const SeriesSpec &series, const Dyadic &width,
                                             const PrecisionBudget &budget = {});

struct DigitExpansion {
    // floor(value); digits below are those of value - floor(value).
    BigInt integer_part;
    std::string digits;
    unsigned base = 2;
    std::uint64_t terms_used = 0;
};

// First `count` digits after the radix point in base 2 or 10. Throws
// PrecisionUnresolvable (carrying the determined prefix) when the budget
// runs out first.
DigitExpansion digits(const SeriesSpec &series, unsigned base, std::uint64_t count,
                      const PrecisionBudget &budget = {});

} // namespace lacunary

#endif
