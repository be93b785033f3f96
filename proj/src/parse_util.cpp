#include "parse_util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <lacunary/errors.hpp>

namespace lacunary::detail
{

namespace
{

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string describe(std::string_view what, std::string_view token)
{
    return "malformed " + std::string(what) + " '" + std::string(token) + "'";
}

} // namespace

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::uint64_t parse_u64(std::string_view token, std::string_view what)
{
    token = trim(token);
    std::uint64_t value = 0;
    if (!all_digits(token)) {
        throw ParseError(describe(what, token));
    }
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(describe(what, token) + " (out of range)");
    }
    return value;
}

mpz_class parse_bigint(std::string_view token, std::string_view what)
{
    token = trim(token);
    bool negative = false;
    std::string_view digits = token;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw ParseError(describe(what, token));
    }
    mpz_class v(std::string(digits), 10);
    return negative ? mpz_class(-v) : v;
}

mpq_class parse_rational(std::string_view token, std::string_view what)
{
    token = trim(token);
    if (const auto slash = token.find('/'); slash != std::string_view::npos) {
        const auto num = parse_bigint(token.substr(0, slash), what);
        const auto den = parse_bigint(token.substr(slash + 1), what);
        if (den == 0) {
            throw ParseError(describe(what, token) + " (zero denominator)");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    const auto dot = token.find('.');
    if (dot == std::string_view::npos) {
        return mpq_class(parse_bigint(token, what));
    }
    const auto whole = token.substr(0, dot);
    const auto frac = token.substr(dot + 1);
    if (!all_digits(frac) || (!whole.empty() && !all_digits(whole))) {
        throw ParseError(describe(what, token));
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

} // namespace lacunary::detail
