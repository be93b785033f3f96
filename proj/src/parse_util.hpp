#ifndef LACUNARY_SRC_PARSE_UTIL_HPP
#define LACUNARY_SRC_PARSE_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lacunary::detail
{

std::string_view trim(std::string_view s);

// Splits on `sep`, trimming each piece. An empty input yields one empty piece.
std::vector<std::string_view> split(std::string_view s, char sep);

// Non-negative decimal integer that fits in 64 bits.
std::uint64_t parse_u64(std::string_view token, std::string_view what);

// Signed decimal integer of any size.
mpz_class parse_bigint(std::string_view token, std::string_view what);

// "1.1", "3/2" or "2" as an exact rational.
mpq_class parse_rational(std::string_view token, std::string_view what);

} // namespace lacunary::detail

#endif
