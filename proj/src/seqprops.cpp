#include <lacunary/seqprops.hpp>

#include <algorithm>

#include <lacunary/errors.hpp>

namespace lacunary
{

std::vector<std::uint64_t> representable_set(const SequenceSpec &seq, unsigned q, std::uint64_t limit,
                                             const TableBudget &budget)
{
    if (limit >= budget.max_entries) {
        throw BudgetExceeded("representable_set: limit " + std::to_string(limit) + " exceeds the table budget");
    }
    const auto terms = seq.terms_up_to(limit);
    // layer[m]: m is a sum of exactly j terms; seen[m]: of at most j terms.
    std::vector<char> layer(limit + 1, 0);
    std::vector<char> seen(limit + 1, 0);
    layer[0] = 1;
    for (unsigned j = 1; j <= q; ++j) {
        std::vector<char> next(limit + 1, 0);
        for (std::uint64_t m = 0; m <= limit; ++m) {
            if (!layer[m]) {
                continue;
            }
            for (const auto a : terms) {
                if (a > limit - m) {
                    break;
                }
                next[m + a] = 1;
            }
        }
        for (std::uint64_t m = 1; m <= limit; ++m) {
            seen[m] |= next[m];
        }
        layer.swap(next);
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= limit; ++m) {
        if (seen[m]) {
            out.push_back(m);
        }
    }
    return out;
}

SparsenessReport check_sparse(const SequenceSpec &seq, unsigned q, std::uint64_t gap, std::uint64_t limit,
                              const TableBudget &budget)
{
    SparsenessReport report;
    report.q = q;
    report.gap = gap;
    report.limit = limit;
    const auto reps = representable_set(seq, q, limit, budget);
    for (std::size_t i = 0; i + 2 < reps.size(); ++i) {
        if (reps[i + 1] - reps[i] > gap && reps[i + 2] - reps[i + 1] > gap) {
            report.status = SparsenessReport::Status::found;
            report.witness = {reps[i], reps[i + 1], reps[i + 2]};
            break;
        }
    }
    return report;
}

LoosenessReport check_loose(const SequenceSpec &seq, unsigned q, std::uint64_t limit, CountMode mode,
                            const TableBudget &budget)
{
    const RepTable table(seq, mode, limit, q, budget);
    LoosenessReport report;
    report.q = q;
    report.limit = limit;
    report.mode = mode;
    report.max_count = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const auto &c = table.count(n, q);
        ++report.histogram[c];
        if (c > report.max_count) {
            report.max_count = c;
            report.argmax = n;
        }
    }
    const auto fq = factorial(q);
    report.growth_threshold = 4 * fq * fq;
    report.verdict = report.max_count > report.growth_threshold ? LoosenessReport::Verdict::growth_detected
                                                                : LoosenessReport::Verdict::bounded_so_far;
    return report;
}

bool ClassificationReport::loose_so_far() const
{
    return std::all_of(entries.begin(), entries.end(), [](const ClassificationEntry &e) {
        return e.loose.verdict == LoosenessReport::Verdict::bounded_so_far;
    });
}

bool ClassificationReport::sparse_so_far() const
{
    return std::all_of(entries.begin(), entries.end(), [](const ClassificationEntry &e) {
        return e.sparse.status == SparsenessReport::Status::found;
    });
}

ClassificationReport classify(const SequenceSpec &seq, unsigned q_max, std::uint64_t limit, std::uint64_t gap,
                              const TableBudget &budget)
{
    ClassificationReport report;
    report.sequence = seq.name();
    report.q_max = q_max;
    report.limit = limit;
    report.gap = gap;
    for (unsigned q = 1; q <= q_max; ++q) {
        report.entries.push_back(ClassificationEntry{
            q,
            check_loose(seq, q, limit, CountMode::unordered, budget),
            check_loose(seq, q, limit, CountMode::ordered, budget),
            check_sparse(seq, q, gap, limit, budget),
        });
    }
    report.note = "finite-range screen up to N = " + std::to_string(limit)
                  + "; bounded counts and gap witnesses here are evidence, not a proof of looseness or sparseness";
    return report;
}

} // namespace lacunary
