#include <lacunary/polynomial.hpp>

#include <algorithm>
#include <sstream>

#include <lacunary/errors.hpp>

#include "parse_util.hpp"

namespace lacunary
{

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending))
{
    if (coeffs_.size() < 2) {
        throw ParseError("polynomial must have degree at least 1");
    }
    if (coeffs_.back() == 0) {
        throw ParseError("leading coefficient must be nonzero");
    }
}

IntPolynomial IntPolynomial::parse(std::string_view text)
{
    std::vector<BigInt> leading_first;
    for (const auto token : detail::split(text, ',')) {
        leading_first.push_back(detail::parse_bigint(token, "polynomial coefficient"));
    }
    std::reverse(leading_first.begin(), leading_first.end());
    return IntPolynomial(std::move(leading_first));
}

IntPolynomial IntPolynomial::negated() const
{
    auto c = coeffs_;
    for (auto &a : c) {
        a = -a;
    }
    return IntPolynomial(std::move(c));
}

Dyadic IntPolynomial::operator()(const Dyadic &x) const
{
    Dyadic acc(coeffs_.back());
    for (auto i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * x + Dyadic(coeffs_[i]);
    }
    return acc;
}

std::string IntPolynomial::to_flag_string() const
{
    std::string out;
    for (auto i = coeffs_.size(); i-- > 0;) {
        out += coeffs_[i].get_str();
        if (i != 0) {
            out += ',';
        }
    }
    return out;
}

std::string IntPolynomial::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (auto i = coeffs_.size(); i-- > 0;) {
        const auto &a = coeffs_[i];
        if (a == 0) {
            continue;
        }
        const BigInt mag = abs(a);
        if (first) {
            if (a < 0) {
                os << '-';
            }
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1 || i == 0) {
            os << mag.get_str();
        }
        if (i >= 1) {
            os << 'x';
        }
        if (i >= 2) {
            os << '^' << i;
        }
    }
    return os.str();
}

DyadicInterval eval_poly_interval(const IntPolynomial &poly, const DyadicInterval &x)
{
    const auto &c = poly.ascending();
    auto acc = DyadicInterval::point(Dyadic(c.back()));
    for (auto i = c.size() - 1; i-- > 0;) {
        acc = acc * x + Dyadic(c[i]);
    }
    return acc;
}

} // namespace lacunary
