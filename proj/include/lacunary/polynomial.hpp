#ifndef LACUNARY_POLYNOMIAL_HPP
#define LACUNARY_POLYNOMIAL_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <lacunary/dyadic.hpp>

namespace lacunary
{

// a_0 + a_1 x + ... + a_t x^t with integer coefficients, t >= 1 and a_t != 0.
class IntPolynomial
{
public:
    // Coefficients in ascending order: ascending[i] multiplies x^i.
    explicit IntPolynomial(std::vector<BigInt> ascending);

    // Parses "a_t,...,a_0", leading coefficient first. Whitespace around
    // entries is ignored.
    static IntPolynomial parse(std::string_view text);

    std::size_t degree() const noexcept
    {
        return coeffs_.size() - 1;
    }
    const BigInt &coefficient(std::size_t i) const
    {
        return coeffs_.at(i);
    }
    const BigInt &leading() const noexcept
    {
        return coeffs_.back();
    }
    const std::vector<BigInt> &ascending() const noexcept
    {
        return coeffs_;
    }

    IntPolynomial negated() const;

    Dyadic operator()(const Dyadic &x) const;

    // "a_t,...,a_0", the inverse of parse().
    std::string to_flag_string() const;
    // e.g. "2x^2 - 3x + 1".
    std::string to_string() const;

    friend bool operator==(const IntPolynomial &, const IntPolynomial &) = default;

private:
    std::vector<BigInt> coeffs_;
};

// Interval Horner evaluation; the result contains f(v) for every v in x.
DyadicInterval eval_poly_interval(const IntPolynomial &poly, const DyadicInterval &x);

} // namespace lacunary

#endif
