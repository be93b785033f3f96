#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <functional>

#include <lacunary/errors.hpp>
#include <lacunary/repcount.hpp>

using namespace lacunary;

namespace
{

// Exhaustive count over index tuples; nondecreasing tuples when `sorted`.
std::uint64_t enumerate_count(const std::vector<std::uint64_t> &terms, std::uint64_t n, unsigned q, bool sorted)
{
    std::function<std::uint64_t(std::uint64_t, unsigned, std::size_t)> go = [&](std::uint64_t rest, unsigned left,
                                                                                 std::size_t from) -> std::uint64_t {
        if (left == 0) {
            return rest == 0 ? 1 : 0;
        }
        std::uint64_t total = 0;
        for (std::size_t i = sorted ? from : 0; i < terms.size() && terms[i] <= rest; ++i) {
            total += go(rest - terms[i], left - 1, i);
        }
        return total;
    };
    return go(n, q, 0);
}

// Coefficients of (sum_i b_i x^{a_i})^q up to x^m_max by repeated multiplication.
std::vector<BigInt> power_series_power(const std::vector<std::pair<std::uint64_t, BigInt>> &terms,
                                       std::uint64_t m_max, unsigned q)
{
    std::vector<BigInt> acc(m_max + 1, 0);
    acc[0] = 1;
    for (unsigned j = 0; j < q; ++j) {
        std::vector<BigInt> next(m_max + 1, 0);
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            if (acc[m] == 0) {
                continue;
            }
            for (const auto &[a, b] : terms) {
                if (m + a <= m_max) {
                    next[m + a] += acc[m] * b;
                }
            }
        }
        acc.swap(next);
    }
    return acc;
}

} // namespace

TEST_CASE("power-of-two counts: anchor values")
{
    CHECK(dnq_pow2(3, 2) == 2);
    CHECK(dnq_pow2(0, 0) == 1);
    CHECK(dnq_pow2(7, 2) == 0);
    CHECK(dnq_pow2(24, 2) == 2);
    CHECK(dnq_pow2(5, 0) == 0);
    CHECK(dnq_pow2(0, 3) == 0);

    CHECK(dnq_bruteforce(3, 2) == 2);
    CHECK(dnq_bruteforce(4, 3) == 3);
    CHECK(dnq_bruteforce(4, 2) == 1);
    CHECK(dnq_bruteforce(0, 0) == 1);
    CHECK_THROWS_AS(dnq_bruteforce((1 << 20) + 1, 2), BudgetExceeded);
    CHECK_THROWS_AS(dnq_bruteforce(10, 7), BudgetExceeded);
}

TEST_CASE("recurrence agrees with exhaustive enumeration")
{
    for (std::uint64_t n = 0; n <= 128; ++n) {
        for (unsigned q = 0; q <= 4; ++q) {
            CAPTURE(n);
            CAPTURE(q);
            CHECK(dnq_pow2(n, q) == dnq_bruteforce(n, q));
        }
    }
}

TEST_CASE("zero exactly when the popcount exceeds q")
{
    for (std::uint64_t n = 1; n <= 1024; ++n) {
        for (unsigned q = 0; q <= 4; ++q) {
            CHECK((dnq_pow2(n, q) == 0) == (static_cast<unsigned>(std::popcount(n)) > q || q > n));
        }
    }
}

TEST_CASE("2^t - 1 has t! ordered representations by t powers")
{
    for (unsigned t = 1; t <= 8; ++t) {
        CHECK(dnq_pow2((std::uint64_t{1} << t) - 1, t) == factorial(t));
    }
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
}

TEST_CASE("tables match enumeration in both modes")
{
    for (const auto &seq : {SequenceSpec::pow2(), SequenceSpec::fibonacci(), SequenceSpec::naturals(),
                            SequenceSpec::factorial(), SequenceSpec::custom({2, 3, 7, 11})}) {
        const auto terms = seq.terms_up_to(60);
        for (const auto mode : {CountMode::ordered, CountMode::unordered}) {
            const RepTable table(seq, mode, 60, 4);
            for (std::uint64_t n = 0; n <= 60; ++n) {
                for (unsigned q = 0; q <= 4; ++q) {
                    CAPTURE(seq.name());
                    CAPTURE(n);
                    CAPTURE(q);
                    CHECK(table.count(n, q) == enumerate_count(terms, n, q, mode == CountMode::unordered));
                }
            }
            CHECK(table.count(0, 0) == 1);
            CHECK(table.count(1, 0) == 0);
            CHECK_THROWS_AS(table.count(61, 1), std::out_of_range);
            CHECK_THROWS_AS(table.count(1, 5), std::out_of_range);
        }
    }
}

TEST_CASE("general counts")
{
    CHECK(dnq_general(SequenceSpec::naturals(), 4, 2, CountMode::unordered) == 2);
    CHECK(dnq_general(SequenceSpec::fibonacci(), 10, 2, CountMode::unordered) == 2);
    CHECK(dnq_general(SequenceSpec::pow2(), 3, 2, CountMode::ordered) == 2);
    CHECK(dnq_general(SequenceSpec::naturals(), 1000, 2, CountMode::unordered) == 500);

    TableBudget tiny;
    tiny.max_entries = 100;
    CHECK_THROWS_AS(dnq_general(SequenceSpec::naturals(), 1000, 2, CountMode::ordered, tiny), BudgetExceeded);

    CHECK(parse_count_mode("unordered") == CountMode::unordered);
    CHECK(to_string(CountMode::ordered) == "ordered");
    CHECK_THROWS_AS(parse_count_mode("sorted"), ParseError);
}

TEST_CASE("weighted digit coefficients")
{
    const auto mu = SeriesSpec::mahler();
    CHECK(weighted_digit_coeff(mu, 3, 2) == 2);
    CHECK(weighted_digit_coeff(mu, 7, 2) == 0);
    CHECK(weighted_digit_coeff(mu.with_coefficients("index"), 4, 1) == 2);

    // All-ones coefficients reduce to ordered counts.
    const WeightedTable ones(mu, 300, 4);
    for (std::uint64_t m = 0; m <= 300; ++m) {
        for (unsigned q = 0; q <= 4; ++q) {
            CHECK(ones.coeff(m, q) == dnq_pow2(m, q));
        }
    }

    // Merged Liouville terms and signed periodic coefficients against direct expansion.
    const auto lambda = SeriesSpec::liouville();
    const auto signed_fib = SeriesSpec::fibonacci().with_coefficients("cycle:1,-2,3");
    for (const auto &s : {lambda, signed_fib}) {
        std::vector<std::pair<std::uint64_t, BigInt>> raw;
        for (std::uint64_t i = 0;; ++i) {
            const auto a = s.raw_exponent(i);
            if (!a || *a > 200) {
                break;
            }
            raw.emplace_back(*a, s.raw_coefficient(i));
        }
        const WeightedTable table(s, 200, 3);
        for (unsigned q = 0; q <= 3; ++q) {
            const auto expected = power_series_power(raw, 200, q);
            for (std::uint64_t m = 0; m <= 200; ++m) {
                CAPTURE(s.name());
                CAPTURE(m);
                CAPTURE(q);
                CHECK(table.coeff(m, q) == expected[m]);
            }
        }
    }
}

TEST_CASE("counting lemma audit")
{
    const auto audit = lemma_audit(1024, 3);
    REQUIRE(audit.max_count.size() == 4);
    CHECK(audit.max_count[0] == 1);
    CHECK(audit.max_count[1] == 1);
    CHECK(audit.max_count[2] == 2);
    CHECK(audit.max_count[3] == 6);
    CHECK(audit.argmax[3] == 7);

    // d_n(q) <= (q!)^2 holds throughout.
    for (const auto &v : audit.violations) {
        CHECK(v.kind == LemmaViolation::Kind::step_inequality);
    }

    // The step inequality does not hold for ordered counts: 3 = 1 + 2 = 2 + 1
    // gives d_3(2) = 2 while 1 + 1^2 d_3(1) = 1.
    REQUIRE_FALSE(audit.passed());
    const auto &first = audit.violations.front();
    CHECK(first.n == 3);
    CHECK(first.q == 1);
    CHECK(first.lhs == dnq_bruteforce(3, 2));
    CHECK(first.rhs == 1 + dnq_bruteforce(3, 1));

    const auto small = lemma_audit(64, 1);
    CHECK(small.max_count[1] == 1);
    CHECK_FALSE(small.passed());

    TableBudget tiny;
    tiny.max_entries = 1000;
    CHECK_THROWS_AS(lemma_audit(1 << 14, 5, tiny), BudgetExceeded);
}

TEST_CASE("step inequality holds for unordered counts")
{
    const RepTable table(SequenceSpec::pow2(), CountMode::unordered, 4096, 6);
    for (std::uint64_t n = 0; n <= 4096; ++n) {
        for (unsigned q = 0; q < 6; ++q) {
            CHECK(table.count(n, q + 1) <= 1 + q * q * table.count(n, q));
        }
    }
}
