#ifndef LACUNARY_REPCOUNT_HPP
#define LACUNARY_REPCOUNT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <lacunary/dyadic.hpp>
#include <lacunary/sequence.hpp>
#include <lacunary/series.hpp>

namespace lacunary
{

// ordered: tuples (i_1, ..., i_q) in any order.
// unordered: i_1 <= ... <= i_q, i.e. multisets of terms.
enum class CountMode { ordered, unordered };

std::string_view to_string(CountMode mode);
CountMode parse_count_mode(std::string_view text);

struct TableBudget {
    std::uint64_t max_entries = std::uint64_t{1} << 23;
};

BigInt factorial(unsigned q);

// d_n(q) for every n <= n_max, q <= q_max: the number of ways to write n
// as a sum of exactly q sequence terms, counted per `mode`. d_0(0) = 1.
// Built once, immutable afterwards.
class RepTable
{
public:
    RepTable(const SequenceSpec &seq, CountMode mode, std::uint64_t n_max, unsigned q_max,
             const TableBudget &budget = {});

    const BigInt &count(std::uint64_t n, unsigned q) const;

    std::uint64_t n_max() const noexcept
    {
        return n_max_;
    }
    unsigned q_max() const noexcept
    {
        return q_max_;
    }
    CountMode mode() const noexcept
    {
        return mode_;
    }

private:
    std::uint64_t n_max_;
    unsigned q_max_;
    CountMode mode_;
    std::vector<BigInt> cells_; // row-major: q * (n_max + 1) + n
};

// Ordered representations of n as 2^{w_1} + ... + 2^{w_q}, w_i >= 0, via the
// memoized recurrence d_n(q) = sum_r d_{n - 2^r}(q - 1).
BigInt dnq_pow2(std::uint64_t n, unsigned q);

// Same count by exhaustive enumeration of exponent tuples. Test oracle;
// limited to n <= 2^20, q <= 6.
BigInt dnq_bruteforce(std::uint64_t n, unsigned q);

BigInt dnq_general(const SequenceSpec &seq, std::uint64_t n, unsigned q, CountMode mode,
                   const TableBudget &budget = {});

// c_m(q): the coefficient of 2^-m in (sum_n b_n 2^-a_n)^q, i.e. the sum of
// b_{i_1} ... b_{i_q} over ordered tuples with a_{i_1} + ... + a_{i_q} = m.
// Uses the canonical (merged) terms of the series.
class WeightedTable
{
public:
    WeightedTable(const SeriesSpec &series, std::uint64_t m_max, unsigned q_max, const TableBudget &budget = {});

    const BigInt &coeff(std::uint64_t m, unsigned q) const;

    std::uint64_t m_max() const noexcept
    {
        return m_max_;
    }
    unsigned q_max() const noexcept
    {
        return q_max_;
    }

private:
    std::uint64_t m_max_;
    unsigned q_max_;
    std::vector<BigInt> cells_;
};

BigInt weighted_digit_coeff(const SeriesSpec &series, std::uint64_t m, unsigned q, const TableBudget &budget = {});

struct LemmaViolation {
    enum class Kind { factorial_square_bound, step_inequality };
    Kind kind;
    std::uint64_t n;
    unsigned q;
    BigInt lhs;
    BigInt rhs;
};

struct LemmaAudit {
    std::uint64_t n_max = 0;
    unsigned q_max = 0;
    std::uint64_t checks = 0;
    // Indexed by q = 0..q_max.
    std::vector<BigInt> max_count;
    std::vector<std::uint64_t> argmax;
    std::vector<LemmaViolation> violations;

    bool passed() const noexcept
    {
        return violations.empty();
    }
};

// Checks d_n(q) <= (q!)^2 and d_n(q+1) <= 1 + q^2 d_n(q) for all n <= n_max,
// q <= q_max on power-of-two counts.
LemmaAudit lemma_audit(std::uint64_t n_max, unsigned q_max, const TableBudget &budget = {});

} // namespace lacunary

#endif
