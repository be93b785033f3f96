#include <lacunary/repcount.hpp>

#include <bit>
#include <map>
#include <stdexcept>

#include <lacunary/errors.hpp>

namespace lacunary
{

namespace
{

std::uint64_t checked_entries(std::uint64_t n_max, unsigned q_max, const TableBudget &budget, const char *what)
{
    std::uint64_t entries;
    if (n_max == UINT64_MAX || __builtin_mul_overflow(n_max + 1, std::uint64_t{q_max} + 1, &entries)
        || entries > budget.max_entries) {
        throw BudgetExceeded(std::string(what) + ": table of (" + std::to_string(n_max) + "+1) x ("
                             + std::to_string(q_max) + "+1) entries exceeds the budget of "
                             + std::to_string(budget.max_entries));
    }
    return entries;
}

BigInt pow2_memo(std::uint64_t n, unsigned q, std::map<std::pair<std::uint64_t, unsigned>, BigInt> &memo)
{
    if (q == 0) {
        return BigInt(n == 0 ? 1 : 0);
    }
    if (n == 0) {
        return BigInt(0);
    }
    const auto key = std::make_pair(n, q);
    if (const auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    BigInt total = 0;
    for (std::uint64_t p = 1; p <= n; p <<= 1) {
        total += pow2_memo(n - p, q - 1, memo);
        if (p > n / 2) {
            break;
        }
    }
    memo.emplace(key, total);
    return total;
}

void enumerate_pow2(std::uint64_t remaining, unsigned slots, unsigned max_w, BigInt &count)
{
    if (slots == 0) {
        if (remaining == 0) {
            ++count;
        }
        return;
    }
    for (unsigned w = 0; w <= max_w; ++w) {
        const auto p = std::uint64_t{1} << w;
        if (p > remaining) {
            break;
        }
        enumerate_pow2(remaining - p, slots - 1, max_w, count);
    }
}

} // namespace

std::string_view to_string(CountMode mode)
{
    return mode == CountMode::ordered ? "ordered" : "unordered";
}

CountMode parse_count_mode(std::string_view text)
{
    if (text == "ordered") {
        return CountMode::ordered;
    }
    if (text == "unordered") {
        return CountMode::unordered;
    }
    throw ParseError("unknown count mode '" + std::string(text) + "' (expected ordered or unordered)");
}

BigInt factorial(unsigned q)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), q);
    return r;
}

RepTable::RepTable(const SequenceSpec &seq, CountMode mode, std::uint64_t n_max, unsigned q_max,
                   const TableBudget &budget)
    : n_max_(n_max), q_max_(q_max), mode_(mode)
{
    const auto width = n_max + 1;
    cells_.assign(checked_entries(n_max, q_max, budget, "RepTable"), BigInt(0));
    cells_[0] = 1;
    const auto terms = seq.terms_up_to(n_max);
    auto at = [&](unsigned q, std::uint64_t n) -> BigInt & { return cells_[q * width + n]; };

    if (mode == CountMode::ordered) {
        // d_n(q) = sum over the last summand a of d_{n-a}(q-1).
        for (unsigned q = 1; q <= q_max; ++q) {
            for (std::uint64_t n = 1; n <= n_max; ++n) {
                auto &cell = at(q, n);
                for (const auto a : terms) {
                    if (a > n) {
                        break;
                    }
                    cell += at(q - 1, n - a);
                }
            }
        }
    } else {
        // Multisets: admit one term value at a time, any multiplicity.
        for (const auto a : terms) {
            for (std::uint64_t n = a; n <= n_max; ++n) {
                for (unsigned q = 1; q <= q_max; ++q) {
                    at(q, n) += at(q - 1, n - a);
                }
            }
        }
    }
}

const BigInt &RepTable::count(std::uint64_t n, unsigned q) const
{
    if (n > n_max_ || q > q_max_) {
        throw std::out_of_range("RepTable::count(" + std::to_string(n) + ", " + std::to_string(q)
                                + ") outside the tabulated range");
    }
    return cells_[q * (n_max_ + 1) + n];
}

BigInt dnq_pow2(std::uint64_t n, unsigned q)
{
    std::map<std::pair<std::uint64_t, unsigned>, BigInt> memo;
    return pow2_memo(n, q, memo);
}

BigInt dnq_bruteforce(std::uint64_t n, unsigned q)
{
    if (n > (std::uint64_t{1} << 20) || q > 6) {
        throw BudgetExceeded("dnq_bruteforce limited to n <= 2^20 and q <= 6");
    }
    BigInt count = 0;
    const unsigned max_w = n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n));
    enumerate_pow2(n, q, max_w, count);
    return count;
}

BigInt dnq_general(const SequenceSpec &seq, std::uint64_t n, unsigned q, CountMode mode, const TableBudget &budget)
{
    return RepTable(seq, mode, n, q, budget).count(n, q);
}

WeightedTable::WeightedTable(const SeriesSpec &series, std::uint64_t m_max, unsigned q_max, const TableBudget &budget)
    : m_max_(m_max), q_max_(q_max)
{
    const auto width = m_max + 1;
    cells_.assign(checked_entries(m_max, q_max, budget, "WeightedTable"), BigInt(0));
    cells_[0] = 1;

    const auto spec = series.canonicalized();
    std::vector<SeriesTerm> terms;
    auto cur = spec.cursor();
    while (auto t = cur.next()) {
        if (t->exponent > m_max) {
            break;
        }
        if (t->coefficient != 0) {
            terms.push_back(std::move(*t));
        }
    }

    auto at = [&](unsigned q, std::uint64_t m) -> BigInt & { return cells_[q * width + m]; };
    for (unsigned q = 1; q <= q_max; ++q) {
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            auto &cell = at(q, m);
            for (const auto &t : terms) {
                if (t.exponent > m) {
                    break;
                }
                const auto &prev = at(q - 1, m - t.exponent);
                if (prev != 0) {
                    cell += t.coefficient * prev;
                }
            }
        }
    }
}

const BigInt &WeightedTable::coeff(std::uint64_t m, unsigned q) const
{
    if (m > m_max_ || q > q_max_) {
        throw std::out_of_range("WeightedTable::coeff(" + std::to_string(m) + ", " + std::to_string(q)
                                + ") outside the tabulated range");
    }
    return cells_[q * (m_max_ + 1) + m];
}

BigInt weighted_digit_coeff(const SeriesSpec &series, std::uint64_t m, unsigned q, const TableBudget &budget)
{
    return WeightedTable(series, m, q, budget).coeff(m, q);
}

LemmaAudit lemma_audit(std::uint64_t n_max, unsigned q_max, const TableBudget &budget)
{
    const RepTable table(SequenceSpec::pow2(), CountMode::ordered, n_max, q_max + 1, budget);
    LemmaAudit audit;
    audit.n_max = n_max;
    audit.q_max = q_max;
    audit.max_count.assign(q_max + 1, BigInt(0));
    audit.argmax.assign(q_max + 1, 0);

    for (unsigned q = 0; q <= q_max; ++q) {
        const BigInt bound = factorial(q) * factorial(q);
        const BigInt q_sq = BigInt(q) * q;
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const auto &d = table.count(n, q);
            const auto &d_next = table.count(n, q + 1);
            if (d > audit.max_count[q]) {
                audit.max_count[q] = d;
                audit.argmax[q] = n;
            }
            if (d > bound) {
                audit.violations.push_back({LemmaViolation::Kind::factorial_square_bound, n, q, d, bound});
            }
            const BigInt step = 1 + q_sq * d;
            if (d_next > step) {
                audit.violations.push_back({LemmaViolation::Kind::step_inequality, n, q, d_next, step});
            }
            audit.checks += 2;
        }
    }
    return audit;
}

} // namespace lacunary
