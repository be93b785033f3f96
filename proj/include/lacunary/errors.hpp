#ifndef LACUNARY_ERRORS_HPP
#define LACUNARY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lacunary
{

// A requested computation would exceed a configured size or precision limit.
class BudgetExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input (polynomial strings, sequence files, series specs).
class ParseError : public std::runtime_error
{
public:
    explicit ParseError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    // 1-based line number for file input, 0 otherwise.
    std::size_t line() const noexcept
    {
        return line_;
    }

private:
    std::size_t line_;
};

// Digit refinement hit its cap before every requested digit was determined.
class PrecisionUnresolvable : public std::runtime_error
{
public:
    PrecisionUnresolvable(const std::string &what, std::string achieved_prefix)
        : std::runtime_error(what), prefix_(std::move(achieved_prefix))
    {
    }

    const std::string &achieved_prefix() const noexcept
    {
        return prefix_;
    }

private:
    std::string prefix_;
};

// A structural fact the construction relies on did not hold. Always a bug.
class InternalInvariantError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace lacunary

#endif
