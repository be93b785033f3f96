#ifndef LACUNARY_SEQUENCE_HPP
#define LACUNARY_SEQUENCE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lacunary
{

// Strictly increasing sequence of positive integers a_1 < a_2 < ...
class SequenceSpec
{
public:
    enum class Kind { pow2, factorial, fib, naturals, geomfloor, custom };

    // 1, 2, 4, 8, ...
    static SequenceSpec pow2();
    // 1, 2, 6, 24, ... (0! = 1! collapses to a single 1)
    static SequenceSpec factorial();
    // 1, 2, 3, 5, 8, ... (the duplicated leading 1 is dropped)
    static SequenceSpec fibonacci();
    // 1, 2, 3, ...
    static SequenceSpec naturals();
    // Distinct values of floor(theta^n), n >= 0, theta > 1.
    static SequenceSpec geomfloor(const mpq_class &theta, std::string theta_label);
    // Finite list; throws ParseError unless positive and strictly increasing.
    static SequenceSpec custom(std::vector<std::uint64_t> terms, std::string name = "custom");
    // One positive integer per line; blank lines and '#' comments skipped.
    // Violations are reported with their line number.
    static SequenceSpec from_stream(std::istream &in, std::string name);
    static SequenceSpec from_file(const std::filesystem::path &path);

    // "pow2", "factorial", "fib", "naturals", "geomfloor:THETA",
    // "list:a,b,...", "file:PATH".
    static SequenceSpec parse(std::string_view text);

    Kind kind() const noexcept
    {
        return kind_;
    }
    const std::string &name() const noexcept
    {
        return name_;
    }

    // All terms <= limit, ascending.
    std::vector<std::uint64_t> terms_up_to(std::uint64_t limit) const;

private:
    SequenceSpec(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    mpq_class theta_;
    std::shared_ptr<const std::vector<std::uint64_t>> custom_;
};

} // namespace lacunary

#endif
