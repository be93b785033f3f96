#ifndef LACUNARY_REFUTER_HPP
#define LACUNARY_REFUTER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <lacunary/dyadic.hpp>
#include <lacunary/polynomial.hpp>
#include <lacunary/repcount.hpp>
#include <lacunary/series.hpp>

namespace lacunary
{

// D = sum_q |a_q| (q!)^2, which bounds every digit coefficient
// |d_n| = |sum_q a_q d_n(q)| of f(mu).
BigInt coeff_bound_D(const IntPolynomial &poly);

// Smallest p >= 1 (at most 64) with
//   (i)  D 2^(1 - 2^p) < |a_t| t!
//   (ii) (|a_t| t! + D 2^(1 - 2^p)) 2^(-2^(p-1)) < 1/2.
unsigned choose_p(const IntPolynomial &poly);

// Witness that f(mu) != 0 for mu = sum 2^(-2^n).
//
// With k = 2^(t+p), m = 2^p (2^t - 1) and s = m - 2^(p-1), every n in
// (s, k) other than m has more than t binary ones, so
//   2^s f(mu) = integer + d_m 2^(s-m) + (terms n >= k),
// and |terms n >= k| <= tail_bound < |d_m| 2^(s-m), main + tail < 1/2.
struct MahlerCertificate {
    IntPolynomial poly;
    unsigned p = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    std::uint64_t s = 0;
    BigInt d_m;
    BigInt D;
    Dyadic tail_bound;
    DyadicInterval frac_interval;
    std::string verdict = "nonzero-certified";

    friend bool operator==(const MahlerCertificate &, const MahlerCertificate &) = default;
};

// `counts`, when given, must be a power-of-two ordered table covering
// n < k and q <= t; it is shared read-only across calls in a sweep.
MahlerCertificate mahler_witness(const IntPolynomial &poly, const RepTable *counts = nullptr,
                                 const TableBudget &budget = {});

struct VerifyOptions {
    unsigned guard_bits = 8;
    // Evaluate mu with exactly this many terms instead of the width target.
    std::optional<std::uint64_t> terms_override;
    PrecisionBudget precision;
};

struct VerifyResult {
    bool accepted = false;
    std::string diagnostic;
    std::uint64_t terms_used = 0;
    std::optional<DyadicInterval> independent_frac;
};

// Re-derives positions and bounds from (poly, p), then evaluates
// {2^s f(mu)} by interval arithmetic on mu alone, never touching d_n tables.
VerifyResult verify_certificate(const MahlerCertificate &cert, const VerifyOptions &options = {});

struct LiouvilleStep {
    unsigned s = 0;
    Dyadic partial;  // lambda_s
    Dyadic value;    // f(lambda_s)
    bool denominator_ok = false; // f(lambda_s) 2^(t s!) is an integer
    std::optional<bool> lower_bound_ok; // |f(lambda_s)| >= 2^(-t s!), absent when f(lambda_s) = 0
    Dyadic tail_upper; // upper bound on lambda - lambda_s
    bool tail_ok = false; // tail_upper < 2 * 2^(-(s+1)!)
};

struct LiouvilleCertificate {
    IntPolynomial poly;
    std::uint64_t terms = 0;
    DyadicInterval value_interval;
    bool certified = false;
    std::vector<LiouvilleStep> steps;
};

struct LiouvilleOptions {
    unsigned step_cap = 5;
    PrecisionBudget precision;
};

// Certifies f(lambda) != 0 for lambda = sum 2^(-n!) by refining an interval
// for f(lambda) until it excludes 0; `certified` stays false if the budget
// runs out first. Also records the partial-sum checks for s <= step_cap.
LiouvilleCertificate liouville_nonvanishing(const IntPolynomial &poly, const LiouvilleOptions &options = {});

// Mahler-shaped witness for an arbitrary binary series: positions
// s < m < k with e_m != 0 and e_n = 0 for n in (s, k) \ {m}, where
// e_n = sum_q a_q c_n(q).
struct GeneralizedCertificate {
    std::string series;
    IntPolynomial poly;
    std::uint64_t s = 0;
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    BigInt e_m;
    Dyadic tail_bound;
    DyadicInterval frac_interval;

    friend bool operator==(const GeneralizedCertificate &, const GeneralizedCertificate &) = default;
};

struct GeneralizedOptions {
    std::uint64_t horizon = 512;
    unsigned guard_bits = 8;
    PrecisionBudget precision;
    TableBudget table;
};

struct GeneralizedResult {
    enum class Status { certified, inconclusive };
    Status status = Status::inconclusive;
    std::optional<GeneralizedCertificate> certificate;
    std::string reason;
    std::uint64_t candidates_examined = 0;
};

GeneralizedResult generalized_witness(const SeriesSpec &series, const IntPolynomial &poly,
                                      const GeneralizedOptions &options = {});
// Same, with the weighted coefficient table prepared by the caller
// (m_max >= horizon, q_max >= degree).
GeneralizedResult generalized_witness(const SeriesSpec &series, const IntPolynomial &poly,
                                      const WeightedTable &weights, const GeneralizedOptions &options = {});

// Independent interval check of a generalized certificate.
VerifyResult verify_generalized(const SeriesSpec &series, const GeneralizedCertificate &cert,
                                const VerifyOptions &options = {});

// All polynomials with 1 <= degree <= max_degree, coefficients in
// [-height, height] and a_t != 0, ordered by degree then lexicographically
// from the leading coefficient down. With dedupe_sign only a_t > 0 is kept.
std::vector<IntPolynomial> enumerate_polynomials(unsigned max_degree, long height, bool dedupe_sign = true);

struct SweepItem {
    IntPolynomial poly;
    std::optional<MahlerCertificate> certificate;
    VerifyResult verification;
    std::string error;

    bool ok() const noexcept
    {
        return certificate && verification.accepted;
    }
};

// mahler_witness + verify_certificate for every polynomial; results keep
// the input order whatever the thread count.
std::vector<SweepItem> mahler_sweep(const std::vector<IntPolynomial> &polys, unsigned threads = 1);

} // namespace lacunary

#endif
