#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <sstream>

#include <lacunary/errors.hpp>
#include <lacunary/seqprops.hpp>

using namespace lacunary;

namespace
{

const std::string kData = LACUNARY_TEST_DATA;

std::size_t parse_error_line(const std::string &path)
{
    try {
        SequenceSpec::from_file(path);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

// Smallest consecutive triple with both gaps > gap among m <= limit with
// 1 <= popcount(m) <= q.
std::optional<std::array<std::uint64_t, 3>> pow2_sparse_oracle(unsigned q, std::uint64_t gap, std::uint64_t limit)
{
    std::vector<std::uint64_t> reps;
    for (std::uint64_t m = 1; m <= limit; ++m) {
        if (static_cast<unsigned>(std::popcount(m)) <= q) {
            reps.push_back(m);
        }
    }
    for (std::size_t i = 0; i + 2 < reps.size(); ++i) {
        if (reps[i + 1] - reps[i] > gap && reps[i + 2] - reps[i + 1] > gap) {
            return std::array{reps[i], reps[i + 1], reps[i + 2]};
        }
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("sequence presets")
{
    CHECK(SequenceSpec::pow2().terms_up_to(40) == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32});
    CHECK(SequenceSpec::fibonacci().terms_up_to(21) == std::vector<std::uint64_t>{1, 2, 3, 5, 8, 13, 21});
    CHECK(SequenceSpec::factorial().terms_up_to(130) == std::vector<std::uint64_t>{1, 2, 6, 24, 120});
    CHECK(SequenceSpec::naturals().terms_up_to(4) == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(SequenceSpec::geomfloor(mpq_class(3, 2), "1.5").terms_up_to(20)
          == std::vector<std::uint64_t>{1, 2, 3, 5, 7, 11, 17});
    CHECK(SequenceSpec::pow2().terms_up_to(std::numeric_limits<std::uint64_t>::max()).size() == 64);
    CHECK(SequenceSpec::parse("list:2,5,9").terms_up_to(100) == std::vector<std::uint64_t>{2, 5, 9});

    CHECK_THROWS_AS(SequenceSpec::custom({1, 1}), ParseError);
    CHECK_THROWS_AS(SequenceSpec::custom({0, 1}), ParseError);
    CHECK_THROWS_AS(SequenceSpec::parse("squares"), ParseError);
    CHECK_THROWS_AS(SequenceSpec::parse("geomfloor:1"), ParseError);
}

TEST_CASE("sequence files")
{
    const auto seq = SequenceSpec::from_file(kData + "/good_sequence.txt");
    CHECK(seq.terms_up_to(100) == std::vector<std::uint64_t>{1, 2, 3, 5, 8});
    CHECK(SequenceSpec::parse("file:" + kData + "/good_sequence.txt").terms_up_to(4).size() == 3);

    CHECK(parse_error_line(kData + "/not_increasing.txt") == 4);
    CHECK(parse_error_line(kData + "/not_a_number.txt") == 4);
    CHECK(parse_error_line(kData + "/zero_term.txt") == 2);
    CHECK_THROWS_WITH_AS(SequenceSpec::from_file(kData + "/missing.txt"), doctest::Contains("cannot open"),
                         ParseError);

    std::istringstream in("10\n 20\n#\n15\n");
    CHECK_THROWS_WITH_AS(SequenceSpec::from_stream(in, "inline"), "line 4: sequence not strictly increasing (15 after 20)",
                         ParseError);
}

TEST_CASE("representable sets")
{
    CHECK(representable_set(SequenceSpec::pow2(), 2, 10) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 9, 10});
    CHECK(representable_set(SequenceSpec::fibonacci(), 1, 10) == std::vector<std::uint64_t>{1, 2, 3, 5, 8});
    CHECK(representable_set(SequenceSpec::naturals(), 1, 5) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});

    for (unsigned q = 1; q <= 5; ++q) {
        const auto reps = representable_set(SequenceSpec::pow2(), q, 4096);
        std::vector<std::uint64_t> expected;
        for (std::uint64_t m = 1; m <= 4096; ++m) {
            if (static_cast<unsigned>(std::popcount(m)) <= q) {
                expected.push_back(m);
            }
        }
        CHECK(reps == expected);
    }

    // Growing q can only add numbers.
    for (const auto &seq : {SequenceSpec::fibonacci(), SequenceSpec::factorial(), SequenceSpec::custom({3, 7, 20})}) {
        auto prev = representable_set(seq, 1, 2000);
        for (unsigned q = 2; q <= 4; ++q) {
            const auto cur = representable_set(seq, q, 2000);
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }

    TableBudget tiny;
    tiny.max_entries = 10;
    CHECK_THROWS_AS(representable_set(SequenceSpec::pow2(), 2, 100, tiny), BudgetExceeded);
}

TEST_CASE("sparseness")
{
    const auto one = check_sparse(SequenceSpec::pow2(), 1, 3, 100);
    CHECK(one.status == SparsenessReport::Status::found);
    REQUIRE(one.witness);
    CHECK(*one.witness == std::array<std::uint64_t, 3>{4, 8, 16});
    CHECK(one.witness == pow2_sparse_oracle(1, 3, 100));

    const auto two = check_sparse(SequenceSpec::pow2(), 2, 5, 4096);
    CHECK(two.status == SparsenessReport::Status::found);
    CHECK(two.witness == pow2_sparse_oracle(2, 5, 4096));
    CHECK(*two.witness == std::array<std::uint64_t, 3>{40, 48, 64});

    for (unsigned q = 1; q <= 3; ++q) {
        CHECK(check_sparse(SequenceSpec::pow2(), q, 100, 1 << 14).witness == pow2_sparse_oracle(q, 100, 1 << 14));
    }

    const auto naturals = check_sparse(SequenceSpec::naturals(), 1, 1, 1000);
    CHECK(naturals.status == SparsenessReport::Status::inconclusive);
    CHECK_FALSE(naturals.witness);
}

TEST_CASE("looseness")
{
    const auto nat = check_loose(SequenceSpec::naturals(), 2, 100);
    CHECK(nat.max_count == 50);
    CHECK(nat.argmax == 100);
    CHECK(nat.verdict == LoosenessReport::Verdict::growth_detected);
    CHECK(nat.growth_threshold == 16);

    const auto pow2_ordered = check_loose(SequenceSpec::pow2(), 2, 1024, CountMode::ordered);
    CHECK(pow2_ordered.max_count == 2);
    CHECK(pow2_ordered.verdict == LoosenessReport::Verdict::bounded_so_far);
    // Histogram of ordered d_n(2), n <= 1024: powers of two 2^w with w >= 1 (10 of them)
    // count 1; the C(10, 2) = 45 numbers with two ones below 2^10 count 2; the rest 0.
    CHECK(pow2_ordered.histogram.at(1) == 10);
    CHECK(pow2_ordered.histogram.at(2) == 45);
    CHECK(pow2_ordered.histogram.at(0) == 1024 - 55);

    const auto pow2_unordered = check_loose(SequenceSpec::pow2(), 2, 1024);
    CHECK(pow2_unordered.max_count == 1);

    const auto fib = check_loose(SequenceSpec::fibonacci(), 2, 1000);
    CHECK(fib.verdict == LoosenessReport::Verdict::bounded_so_far);
    CHECK(fib.max_count <= 4);
}

TEST_CASE("classification")
{
    const auto pow2 = classify(SequenceSpec::pow2(), 3, 1 << 14, 100);
    CHECK(pow2.loose_so_far());
    CHECK(pow2.sparse_so_far());
    REQUIRE(pow2.entries.size() == 3);
    CHECK(pow2.entries[1].loose_ordered.max_count == 2);
    CHECK(pow2.note.find("not a proof") != std::string::npos);

    const auto nat = classify(SequenceSpec::naturals(), 2, 1000, 1);
    CHECK_FALSE(nat.loose_so_far());
    CHECK_FALSE(nat.sparse_so_far());
    CHECK(nat.entries[0].sparse.status == SparsenessReport::Status::inconclusive);
    CHECK(nat.entries[1].loose.verdict == LoosenessReport::Verdict::growth_detected);

    const auto table = RepTable(SequenceSpec::naturals(), CountMode::unordered, 1000, 2);
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        CHECK(2 * table.count(n, 2) + 2 >= n);
    }

    const auto theta = classify(SequenceSpec::geomfloor(mpq_class(11, 10), "1.1"), 2, 100000, 50);
    CHECK(theta.entries.size() == 2);
}
