#include <lacunary/dyadic.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lacunary
{

Dyadic Dyadic::from_parts(BigInt mantissa, std::uint64_t exponent)
{
    Dyadic d;
    d.mantissa_ = std::move(mantissa);
    d.exponent_ = exponent;
    d.canonicalize();
    return d;
}

Dyadic Dyadic::pow2(std::int64_t k)
{
    return Dyadic(1).scaled(k);
}

void Dyadic::canonicalize()
{
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    if (exponent_ == 0) {
        return;
    }
    const auto twos = static_cast<std::uint64_t>(mpz_scan1(mantissa_.get_mpz_t(), 0));
    const auto strip = std::min(twos, exponent_);
    if (strip > 0) {
        mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), strip);
        exponent_ -= strip;
    }
}

Dyadic Dyadic::scaled(std::int64_t k) const
{
    Dyadic r = *this;
    if (r.is_zero() || k == 0) {
        return r;
    }
    if (k < 0) {
        r.exponent_ += static_cast<std::uint64_t>(-k);
        r.canonicalize();
        return r;
    }
    const auto up = static_cast<std::uint64_t>(k);
    if (up <= r.exponent_) {
        r.exponent_ -= up;
    } else {
        mpz_mul_2exp(r.mantissa_.get_mpz_t(), r.mantissa_.get_mpz_t(), up - r.exponent_);
        r.exponent_ = 0;
    }
    return r;
}

Dyadic Dyadic::abs() const
{
    Dyadic r = *this;
    r.mantissa_ = ::abs(r.mantissa_);
    return r;
}

BigInt Dyadic::floor() const
{
    BigInt r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), exponent_);
    return r;
}

BigInt Dyadic::ceil() const
{
    BigInt r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), exponent_);
    return r;
}

std::string Dyadic::to_string() const
{
    if (exponent_ == 0) {
        return mantissa_.get_str();
    }
    return mantissa_.get_str() + "/2^" + std::to_string(exponent_);
}

Dyadic Dyadic::operator-() const
{
    Dyadic r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
}

Dyadic &Dyadic::operator+=(const Dyadic &other)
{
    if (exponent_ >= other.exponent_) {
        BigInt shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), other.mantissa_.get_mpz_t(), exponent_ - other.exponent_);
        mantissa_ += shifted;
    } else {
        mpz_mul_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), other.exponent_ - exponent_);
        mantissa_ += other.mantissa_;
        exponent_ = other.exponent_;
    }
    canonicalize();
    return *this;
}

Dyadic &Dyadic::operator-=(const Dyadic &other)
{
    return *this += -other;
}

Dyadic &Dyadic::operator*=(const Dyadic &other)
{
    mantissa_ *= other.mantissa_;
    exponent_ += other.exponent_;
    canonicalize();
    return *this;
}

std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b)
{
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) {
        return sa <=> sb;
    }
    int c;
    if (a.exponent_ == b.exponent_) {
        c = cmp(a.mantissa_, b.mantissa_);
    } else if (a.exponent_ > b.exponent_) {
        BigInt rhs;
        mpz_mul_2exp(rhs.get_mpz_t(), b.mantissa_.get_mpz_t(), a.exponent_ - b.exponent_);
        c = cmp(a.mantissa_, rhs);
    } else {
        BigInt lhs;
        mpz_mul_2exp(lhs.get_mpz_t(), a.mantissa_.get_mpz_t(), b.exponent_ - a.exponent_);
        c = cmp(lhs, b.mantissa_);
    }
    return c <=> 0;
}

std::ostream &operator<<(std::ostream &os, const Dyadic &d)
{
    return os << d.to_string();
}

DyadicInterval::DyadicInterval(Dyadic lower, Dyadic upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (upper_ < lower_) {
        throw std::invalid_argument("DyadicInterval: lower bound " + lower_.to_string() + " exceeds upper bound "
                                    + upper_.to_string());
    }
}

DyadicInterval DyadicInterval::around(const Dyadic &center, const Dyadic &radius)
{
    if (radius.sign() < 0) {
        throw std::invalid_argument("DyadicInterval::around: negative radius");
    }
    return DyadicInterval(center - radius, center + radius);
}

bool DyadicInterval::contains(const Dyadic &x) const
{
    return lower_ <= x && x <= upper_;
}

bool DyadicInterval::contains(const DyadicInterval &other) const
{
    return lower_ <= other.lower_ && other.upper_ <= upper_;
}

bool DyadicInterval::intersects(const DyadicInterval &other) const
{
    return !(upper_ < other.lower_ || other.upper_ < lower_);
}

bool DyadicInterval::excludes_zero() const
{
    return lower_.sign() > 0 || upper_.sign() < 0;
}

DyadicInterval DyadicInterval::scaled(std::int64_t k) const
{
    return DyadicInterval(lower_.scaled(k), upper_.scaled(k));
}

DyadicInterval operator+(const DyadicInterval &a, const DyadicInterval &b)
{
    return DyadicInterval(a.lower_ + b.lower_, a.upper_ + b.upper_);
}

DyadicInterval operator-(const DyadicInterval &a, const DyadicInterval &b)
{
    return DyadicInterval(a.lower_ - b.upper_, a.upper_ - b.lower_);
}

DyadicInterval operator*(const DyadicInterval &a, const DyadicInterval &b)
{
    // Products are exact, so the extreme products are the exact image bounds.
    Dyadic p[4] = {a.lower_ * b.lower_, a.lower_ * b.upper_, a.upper_ * b.lower_, a.upper_ * b.upper_};
    const auto [lo, hi] = std::minmax_element(std::begin(p), std::end(p));
    return DyadicInterval(*lo, *hi);
}

DyadicInterval operator+(const DyadicInterval &a, const Dyadic &b)
{
    return DyadicInterval(a.lower_ + b, a.upper_ + b);
}

std::string DyadicInterval::to_string() const
{
    return "[" + lower_.to_string() + ", " + upper_.to_string() + "]";
}

std::ostream &operator<<(std::ostream &os, const DyadicInterval &x)
{
    return os << x.to_string();
}

std::optional<DyadicInterval> frac_part_interval(const DyadicInterval &x)
{
    if (x.width() >= Dyadic(1)) {
        return std::nullopt;
    }
    const BigInt base = x.lower().floor();
    const Dyadic shift(base);
    // Width < 1, so the only integer that can lie in the interior is base + 1.
    const Dyadic next(BigInt(base + 1));
    if (next < x.upper()) {
        return std::nullopt;
    }
    return DyadicInterval(x.lower() - shift, x.upper() - shift);
}

} // namespace lacunary
