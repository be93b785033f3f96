#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <lacunary/dyadic.hpp>
#include <lacunary/errors.hpp>
#include <lacunary/polynomial.hpp>

using namespace lacunary;

namespace
{

mpq_class to_q(const Dyadic &d)
{
    mpq_class q(d.mantissa());
    mpz_class den = 1;
    den <<= d.exponent();
    q /= den;
    q.canonicalize();
    return q;
}

Dyadic frac(long num, unsigned e)
{
    return Dyadic::from_parts(BigInt(num), e);
}

Dyadic random_dyadic(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> m(-100000, 100000);
    std::uniform_int_distribution<unsigned> e(0, 40);
    return Dyadic::from_parts(BigInt(m(rng)), e(rng));
}

} // namespace

TEST_CASE("canonical form")
{
    const auto four_quarters = Dyadic::from_parts(4, 2);
    CHECK(four_quarters.mantissa() == 1);
    CHECK(four_quarters.exponent() == 0);

    const auto x = Dyadic::from_parts(6, 2);
    CHECK(x.mantissa() == 3);
    CHECK(x.exponent() == 1);

    const auto zero = Dyadic::from_parts(0, 17);
    CHECK(zero.is_zero());
    CHECK(zero.exponent() == 0);

    CHECK(Dyadic(4).exponent() == 0);
    CHECK(Dyadic(4).scaled(-1) == Dyadic(2));
    CHECK(Dyadic(4).scaled(-1).exponent() == 0);
    CHECK(Dyadic::pow2(-3) == frac(1, 3));
    CHECK(Dyadic::pow2(5) == Dyadic(32));
    CHECK(frac(3, 4).to_string() == "3/2^4");
    CHECK(Dyadic(-7).to_string() == "-7");
}

TEST_CASE("arithmetic agrees with rationals")
{
    std::mt19937_64 rng(20260101);
    for (int i = 0; i < 500; ++i) {
        const auto a = random_dyadic(rng);
        const auto b = random_dyadic(rng);
        CHECK((a + b) - b == a);
        CHECK(to_q(a + b) == to_q(a) + to_q(b));
        CHECK(to_q(a - b) == to_q(a) - to_q(b));
        CHECK(to_q(a * b) == to_q(a) * to_q(b));
        CHECK(((a <=> b) < 0) == (to_q(a) < to_q(b)));
        CHECK((a == b) == (to_q(a) == to_q(b)));

        // Unique representation: rebuilding from the value gives the same parts.
        const auto q = to_q(a * b);
        const auto rebuilt = Dyadic::from_parts(q.get_num() * (BigInt(1) << 80) / q.get_den(), 80);
        CHECK(rebuilt.mantissa() == (a * b).mantissa());
        CHECK(rebuilt.exponent() == (a * b).exponent());

        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        CHECK((a * b).floor() == fl);
        const auto k = std::uniform_int_distribution<int>(-30, 30)(rng);
        CHECK(a.scaled(k).scaled(-k) == a);
    }
}

TEST_CASE("interval construction")
{
    CHECK_THROWS_AS(DyadicInterval(Dyadic(2), Dyadic(1)), std::invalid_argument);
    const auto x = DyadicInterval::around(frac(13, 4), Dyadic::pow2(-7));
    CHECK(x.lower() == frac(13, 4) - Dyadic::pow2(-7));
    CHECK(x.width() == Dyadic::pow2(-6));
    CHECK(x.contains(frac(13, 4)));
    CHECK(x.excludes_zero());
    CHECK(DyadicInterval(Dyadic(-1), Dyadic(1)).excludes_zero() == false);
}

TEST_CASE("interval operations enclose pointwise results")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        auto a0 = random_dyadic(rng), a1 = random_dyadic(rng);
        auto b0 = random_dyadic(rng), b1 = random_dyadic(rng);
        if (a1 < a0) {
            std::swap(a0, a1);
        }
        if (b1 < b0) {
            std::swap(b0, b1);
        }
        const DyadicInterval a(a0, a1), b(b0, b1);
        for (const auto &x : {a0, a1, (a0 + a1).scaled(-1)}) {
            for (const auto &y : {b0, b1, (b0 + b1).scaled(-1)}) {
                CHECK((a * b).contains(x * y));
                CHECK((a + b).contains(x + y));
                CHECK((a - b).contains(x - y));
            }
        }
    }
}

TEST_CASE("fractional part")
{
    const auto r = frac_part_interval(DyadicInterval(frac(5, 2), frac(21, 4)));
    REQUIRE(r);
    CHECK(*r == DyadicInterval(frac(1, 2), frac(5, 4)));

    CHECK_FALSE(frac_part_interval(DyadicInterval(frac(7, 3), frac(9, 3))));

    const auto neg = frac_part_interval(DyadicInterval(frac(-3, 4), frac(-1, 3)));
    REQUIRE(neg);
    CHECK(*neg == DyadicInterval(frac(13, 4), frac(7, 3)));

    CHECK_FALSE(frac_part_interval(DyadicInterval(Dyadic(0), Dyadic(1)).scaled(1)));
    // Integers on the boundary are allowed.
    const auto edge = frac_part_interval(DyadicInterval(Dyadic(3), frac(13, 2)));
    REQUIRE(edge);
    CHECK(*edge == DyadicInterval(Dyadic(0), frac(1, 2)));
}

TEST_CASE("polynomial parsing")
{
    const auto p = IntPolynomial::parse("1,-1,0");
    CHECK(p.degree() == 2);
    CHECK(p.leading() == 1);
    CHECK(p.coefficient(1) == -1);
    CHECK(p.to_flag_string() == "1,-1,0");
    CHECK(p.to_string() == "x^2 - x");
    CHECK(IntPolynomial::parse(" 2, -3 , 1").to_string() == "2x^2 - 3x + 1");
    CHECK(IntPolynomial::parse("12345678901234567890123,0").leading() == BigInt("12345678901234567890123"));

    CHECK_THROWS_AS(IntPolynomial::parse("0,1"), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("5"), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse(""), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("1,x"), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("1,,2"), ParseError);
}

TEST_CASE("polynomial evaluation")
{
    const auto id = IntPolynomial::parse("1,0");
    const DyadicInterval ab(frac(-3, 2), frac(5, 3));
    CHECK(eval_poly_interval(id, ab) == ab);

    const auto p = IntPolynomial::parse("1,-1,0");
    CHECK(p(frac(1, 1)) == -frac(1, 2));
    CHECK(eval_poly_interval(p, DyadicInterval::point(frac(1, 1))) == DyadicInterval::point(-frac(1, 2)));

    CHECK(eval_poly_interval(IntPolynomial::parse("2,1"), DyadicInterval(Dyadic(0), Dyadic(1)))
          == DyadicInterval(Dyadic(1), Dyadic(3)));
    CHECK(p.negated() == IntPolynomial::parse("-1,1,0"));
}

TEST_CASE("interval Horner contains f at random rational points")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<unsigned> deg(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const auto t = deg(rng);
        std::vector<BigInt> c(t + 1);
        for (auto &v : c) {
            v = coeff(rng);
        }
        if (c.back() == 0) {
            c.back() = 1;
        }
        const IntPolynomial f(c);
        auto lo = random_dyadic(rng), hi = random_dyadic(rng);
        if (hi < lo) {
            std::swap(lo, hi);
        }
        const auto box = eval_poly_interval(f, DyadicInterval(lo, hi));
        for (int i = 0; i < 100; ++i) {
            // v = lo + (hi - lo) * j / 997, generally not dyadic.
            const mpq_class frac_pos(std::uniform_int_distribution<long>(0, 997)(rng), 997);
            const mpq_class v = to_q(lo) + (to_q(hi) - to_q(lo)) * frac_pos;
            mpq_class fv = 0;
            for (auto k = c.size(); k-- > 0;) {
                fv = fv * v + mpq_class(c[k]);
            }
            CHECK(to_q(box.lower()) <= fv);
            CHECK(fv <= to_q(box.upper()));
        }
    }
}
