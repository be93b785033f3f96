#ifndef LACUNARY_SEQPROPS_HPP
#define LACUNARY_SEQPROPS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <lacunary/repcount.hpp>
#include <lacunary/sequence.hpp>

namespace lacunary
{

// Every m <= limit that is a sum of between 1 and q terms (repeats allowed).
std::vector<std::uint64_t> representable_set(const SequenceSpec &seq, unsigned q, std::uint64_t limit,
                                             const TableBudget &budget = {});

struct SparsenessReport {
    enum class Status { found, inconclusive };

    unsigned q = 0;
    std::uint64_t gap = 0; // M
    std::uint64_t limit = 0; // N
    Status status = Status::inconclusive;
    // Consecutive q-representable a < b < c with b - a > M and c - b > M.
    std::optional<std::array<std::uint64_t, 3>> witness;
};

// Scans for the smallest qualifying consecutive triple.
SparsenessReport check_sparse(const SequenceSpec &seq, unsigned q, std::uint64_t gap, std::uint64_t limit,
                              const TableBudget &budget = {});

struct LoosenessReport {
    enum class Verdict { bounded_so_far, growth_detected };

    unsigned q = 0;
    std::uint64_t limit = 0;
    CountMode mode = CountMode::unordered;
    BigInt max_count;
    std::uint64_t argmax = 0; // smallest n attaining max_count
    // count value -> how many n <= limit have it
    std::map<BigInt, std::uint64_t> histogram;
    BigInt growth_threshold; // 4 (q!)^2
    Verdict verdict = Verdict::bounded_so_far;
};

LoosenessReport check_loose(const SequenceSpec &seq, unsigned q, std::uint64_t limit,
                            CountMode mode = CountMode::unordered, const TableBudget &budget = {});

struct ClassificationEntry {
    unsigned q = 0;
    LoosenessReport loose;         // unordered counts
    LoosenessReport loose_ordered; // ordered counts, for comparison with the (q!)^2 bound
    SparsenessReport sparse;
};

struct ClassificationReport {
    std::string sequence;
    unsigned q_max = 0;
    std::uint64_t limit = 0;
    std::uint64_t gap = 0;
    std::vector<ClassificationEntry> entries;
    std::string note;

    bool loose_so_far() const;
    bool sparse_so_far() const;
};

ClassificationReport classify(const SequenceSpec &seq, unsigned q_max, std::uint64_t limit, std::uint64_t gap,
                              const TableBudget &budget = {});

} // namespace lacunary

#endif
