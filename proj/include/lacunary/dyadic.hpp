#ifndef LACUNARY_DYADIC_HPP
#define LACUNARY_DYADIC_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace lacunary
{

using BigInt = mpz_class;

// Exact value mantissa * 2^-exponent.
//
// Canonical form: when exponent > 0 the mantissa is odd; zero is stored
// as 0 * 2^0. Integers therefore always carry exponent 0, and two Dyadic
// values are equal iff their (mantissa, exponent) pairs are equal.
class Dyadic
{
public:
    Dyadic() = default;
    Dyadic(long value) : mantissa_(value) {} // NOLINT(google-explicit-constructor)
    explicit Dyadic(BigInt value) : mantissa_(std::move(value)) {}

    static Dyadic from_parts(BigInt mantissa, std::uint64_t exponent);
    // 2^k for any signed k.
    static Dyadic pow2(std::int64_t k);

    const BigInt &mantissa() const noexcept
    {
        return mantissa_;
    }
    std::uint64_t exponent() const noexcept
    {
        return exponent_;
    }

    int sign() const noexcept
    {
        return sgn(mantissa_);
    }
    bool is_zero() const noexcept
    {
        return sign() == 0;
    }
    bool is_integer() const noexcept
    {
        return exponent_ == 0;
    }

    // Multiply by 2^k.
    Dyadic scaled(std::int64_t k) const;
    Dyadic abs() const;

    BigInt floor() const;
    BigInt ceil() const;

    // Human form: "m" for integers, "m/2^e" otherwise.
    std::string to_string() const;

    Dyadic operator-() const;
    Dyadic &operator+=(const Dyadic &other);
    Dyadic &operator-=(const Dyadic &other);
    Dyadic &operator*=(const Dyadic &other);

    friend Dyadic operator+(Dyadic a, const Dyadic &b)
    {
        return a += b;
    }
    friend Dyadic operator-(Dyadic a, const Dyadic &b)
    {
        return a -= b;
    }
    friend Dyadic operator*(Dyadic a, const Dyadic &b)
    {
        return a *= b;
    }

    friend bool operator==(const Dyadic &a, const Dyadic &b)
    {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b);

private:
    void canonicalize();

    BigInt mantissa_{0};
    std::uint64_t exponent_ = 0;
};

std::ostream &operator<<(std::ostream &os, const Dyadic &d);

// Closed interval [lower, upper] with exact dyadic endpoints. Arithmetic
// returns enclosures of every value obtainable from operands in the inputs.
class DyadicInterval
{
public:
    DyadicInterval() = default;
    DyadicInterval(Dyadic lower, Dyadic upper);

    static DyadicInterval point(const Dyadic &x)
    {
        return DyadicInterval(x, x);
    }
    // [center - radius, center + radius], radius >= 0.
    static DyadicInterval around(const Dyadic &center, const Dyadic &radius);

    const Dyadic &lower() const noexcept
    {
        return lower_;
    }
    const Dyadic &upper() const noexcept
    {
        return upper_;
    }
    Dyadic width() const
    {
        return upper_ - lower_;
    }

    bool contains(const Dyadic &x) const;
    bool contains(const DyadicInterval &other) const;
    bool intersects(const DyadicInterval &other) const;
    bool excludes_zero() const;

    DyadicInterval scaled(std::int64_t k) const;

    friend DyadicInterval operator+(const DyadicInterval &a, const DyadicInterval &b);
    friend DyadicInterval operator-(const DyadicInterval &a, const DyadicInterval &b);
    friend DyadicInterval operator*(const DyadicInterval &a, const DyadicInterval &b);
    friend DyadicInterval operator+(const DyadicInterval &a, const Dyadic &b);

    friend bool operator==(const DyadicInterval &, const DyadicInterval &) = default;

    std::string to_string() const;

private:
    Dyadic lower_;
    Dyadic upper_;
};

std::ostream &operator<<(std::ostream &os, const DyadicInterval &x);

// Interval of fractional parts {v} in [0, 1) over v in x. Returns nullopt
// ("straddle") when an integer lies in the interior of x or x is at least
// 1 wide; the caller has to refine. When x.upper() is itself an integer
// the result is the closure, with 1 standing for that endpoint's value.
std::optional<DyadicInterval> frac_part_interval(const DyadicInterval &x);

} // namespace lacunary

#endif
