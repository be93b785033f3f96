#ifndef LACUNARY_CLI_HPP
#define LACUNARY_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <lacunary/repcount.hpp>
#include <lacunary/report.hpp>
#include <lacunary/series.hpp>

namespace lacunary::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

// Upper limits on user-requested budgets. Read from LACUNARY_MAX_EXPONENT_BITS,
// LACUNARY_MAX_TERMS and LACUNARY_MAX_TABLE_ENTRIES when set.
struct HardCaps {
    std::uint64_t max_exponent_bits = std::uint64_t{1} << 24;
    std::uint64_t max_terms = std::uint64_t{1} << 20;
    std::uint64_t max_table_entries = std::uint64_t{1} << 27;

    static HardCaps from_environment();
};

struct RunConfig {
    std::string command;
    report::Format format = report::Format::json;
    PrecisionBudget precision;
    TableBudget table;
    unsigned threads = 1;

    // Throws BudgetExceeded naming the first budget above its cap.
    void check(const HardCaps &caps) const;
};

// Runs one command line (argv[0] is the program name). The report goes to
// `out`, diagnostics to `err`. Returns 0 when every result is certified or
// complete, 2 when some result is inconclusive or rejected, 1 on error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace lacunary::cli

#endif
