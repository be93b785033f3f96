#include <lacunary/refuter.hpp>

#include <algorithm>
#include <atomic>
#include <thread>

#include <lacunary/errors.hpp>

namespace lacunary
{

namespace
{

std::int64_t as_signed(std::uint64_t v)
{
    return static_cast<std::int64_t>(v);
}

const Dyadic &half()
{
    static const Dyadic h = Dyadic::pow2(-1);
    return h;
}

bool excludes_integers(const DyadicInterval &frac)
{
    return frac.lower().sign() > 0 && frac.upper() < Dyadic(1);
}

struct Positions {
    std::uint64_t k;
    std::uint64_t m;
    std::uint64_t s;
};

Positions positions_for(std::size_t t, unsigned p)
{
    if (p == 0 || t + p >= 63) {
        throw BudgetExceeded("witness positions for t = " + std::to_string(t) + ", p = " + std::to_string(p)
                             + " do not fit in 64 bits");
    }
    const std::uint64_t k = std::uint64_t{1} << (t + p);
    const std::uint64_t m = (std::uint64_t{1} << p) * ((std::uint64_t{1} << t) - 1);
    const std::uint64_t s = m - (std::uint64_t{1} << (p - 1));
    return {k, m, s};
}

// Independent evaluation of {2^shift f(x)} from an enclosure of x alone.
VerifyResult independent_frac(const SeriesSpec &series, const IntPolynomial &poly, std::uint64_t shift,
                              std::uint64_t width_exponent, const VerifyOptions &options)
{
    VerifyResult result;
    const auto spec = series.canonicalized();
    std::optional<std::uint64_t> n = options.terms_override;
    if (!n) {
        n = terms_for_width(spec, Dyadic::pow2(-as_signed(width_exponent + options.guard_bits)), options.precision);
        if (!n) {
            result.diagnostic = "precision budget cannot reach width 2^-" + std::to_string(width_exponent + options.guard_bits);
            return result;
        }
    }
    result.terms_used = *n;
    const auto x = eval_interval(spec, *n, options.precision);
    const auto fx = eval_poly_interval(poly, x).scaled(as_signed(shift));
    const auto frac = frac_part_interval(fx);
    if (!frac) {
        result.diagnostic = "straddle: enclosure " + fx.to_string() + " of 2^s f(x) contains an integer at "
                            + std::to_string(*n) + " terms; refine precision";
        return result;
    }
    result.independent_frac = *frac;
    if (!excludes_integers(*frac)) {
        result.diagnostic = "independent fractional-part interval " + frac->to_string() + " touches an integer";
        return result;
    }
    result.accepted = true;
    return result;
}

} // namespace

BigInt coeff_bound_D(const IntPolynomial &poly)
{
    BigInt d = 0;
    for (std::size_t q = 0; q <= poly.degree(); ++q) {
        const auto f = factorial(static_cast<unsigned>(q));
        d += abs(poly.coefficient(q)) * f * f;
    }
    return d;
}

unsigned choose_p(const IntPolynomial &poly)
{
    const Dyadic d(coeff_bound_D(poly));
    const Dyadic lead(BigInt(abs(poly.leading()) * factorial(static_cast<unsigned>(poly.degree()))));
    for (unsigned p = 1; p <= 64; ++p) {
        if (p > 40) {
            throw BudgetExceeded("choose_p: 2^" + std::to_string(p) + "-bit exponents are not materializable");
        }
        const auto tail = d.scaled(1 - (std::int64_t{1} << p));
        const bool tail_below_main = tail < lead;
        const bool total_below_half = (lead + tail).scaled(-(std::int64_t{1} << (p - 1))) < half();
        if (tail_below_main && total_below_half) {
            return p;
        }
    }
    throw BudgetExceeded("choose_p: no p <= 64 satisfies both inequalities");
}

MahlerCertificate mahler_witness(const IntPolynomial &poly, const RepTable *counts, const TableBudget &budget)
{
    const auto t = poly.degree();
    const auto D = coeff_bound_D(poly);
    const auto p = choose_p(poly);
    const auto [k, m, s] = positions_for(t, p);

    std::optional<RepTable> local;
    if (counts == nullptr || counts->n_max() + 1 < k || counts->q_max() < t
        || counts->mode() != CountMode::ordered) {
        local.emplace(SequenceSpec::pow2(), CountMode::ordered, k - 1, static_cast<unsigned>(t), budget);
        counts = &*local;
    }

    auto digit_coeff = [&](std::uint64_t n) {
        BigInt d = 0;
        for (std::size_t q = 0; q <= t; ++q) {
            d += poly.coefficient(q) * counts->count(n, static_cast<unsigned>(q));
        }
        return d;
    };

    BigInt d_m;
    for (auto n = s + 1; n < k; ++n) {
        const auto d = digit_coeff(n);
        if (n == m) {
            d_m = d;
        } else if (d != 0) {
            throw InternalInvariantError("mahler_witness: d_" + std::to_string(n) + " = " + d.get_str()
                                         + " is nonzero inside (s, k)");
        }
    }
    const BigInt expected = poly.leading() * factorial(static_cast<unsigned>(t));
    if (d_m != expected || d_m != poly.leading() * counts->count(m, static_cast<unsigned>(t))) {
        throw InternalInvariantError("mahler_witness: d_m = " + d_m.get_str() + " but a_t t! = " + expected.get_str());
    }

    const auto tail = Dyadic(D).scaled(as_signed(s) + 1 - as_signed(k));
    const auto main_term = Dyadic(d_m).scaled(as_signed(s) - as_signed(m));
    if (!(tail < main_term.abs()) || !(main_term.abs() + tail < half())) {
        throw InternalInvariantError("mahler_witness: inequalities fail for p = " + std::to_string(p));
    }
    const auto frac = frac_part_interval(DyadicInterval::around(main_term, tail));
    if (!frac || !excludes_integers(*frac)) {
        throw InternalInvariantError("mahler_witness: fractional interval touches an integer");
    }
    return MahlerCertificate{poly, p, k, m, s, d_m, D, tail, *frac};
}

VerifyResult verify_certificate(const MahlerCertificate &cert, const VerifyOptions &options)
{
    VerifyResult reject;
    const auto t = cert.poly.degree();
    Positions pos{};
    try {
        pos = positions_for(t, cert.p);
    } catch (const BudgetExceeded &e) {
        reject.diagnostic = e.what();
        return reject;
    }
    if (cert.k != pos.k || cert.m != pos.m || cert.s != pos.s) {
        reject.diagnostic = "positions (k, m, s) = (" + std::to_string(cert.k) + ", " + std::to_string(cert.m) + ", "
                            + std::to_string(cert.s) + ") do not match p = " + std::to_string(cert.p) + ", t = "
                            + std::to_string(t) + ": expected (" + std::to_string(pos.k) + ", "
                            + std::to_string(pos.m) + ", " + std::to_string(pos.s) + ")";
        return reject;
    }
    if (cert.D != coeff_bound_D(cert.poly)) {
        reject.diagnostic = "coefficient bound D does not match the polynomial";
        return reject;
    }
    // m has exactly t binary ones, so d_m(t) = t! and d_m(q) = 0 for q < t.
    if (cert.d_m != cert.poly.leading() * factorial(static_cast<unsigned>(t))) {
        reject.diagnostic = "d_m = " + cert.d_m.get_str() + " differs from a_t t!";
        return reject;
    }
    if (cert.tail_bound != Dyadic(cert.D).scaled(as_signed(cert.s) + 1 - as_signed(cert.k))) {
        reject.diagnostic = "tail bound differs from D 2^(s+1-k)";
        return reject;
    }
    const auto main_term = Dyadic(cert.d_m).scaled(as_signed(cert.s) - as_signed(cert.m));
    if (!(cert.tail_bound < main_term.abs())) {
        reject.diagnostic = "inequality (tail < |d_m| 2^(s-m)) fails";
        return reject;
    }
    if (!(main_term.abs() + cert.tail_bound < half())) {
        reject.diagnostic = "inequality (|d_m| 2^(s-m) + tail < 1/2) fails";
        return reject;
    }
    if (!excludes_integers(cert.frac_interval) || !(cert.frac_interval.width() < Dyadic(1))) {
        reject.diagnostic = "certificate fractional interval touches an integer";
        return reject;
    }

    auto result = independent_frac(SeriesSpec::mahler(), cert.poly, cert.s, cert.k, options);
    if (result.accepted && !result.independent_frac->intersects(cert.frac_interval)) {
        result.accepted = false;
        result.diagnostic = "independent interval " + result.independent_frac->to_string()
                            + " is disjoint from the certificate interval " + cert.frac_interval.to_string();
    }
    if (result.accepted) {
        result.diagnostic = "accepted";
    }
    return result;
}

LiouvilleCertificate liouville_nonvanishing(const IntPolynomial &poly, const LiouvilleOptions &options)
{
    const auto raw = SeriesSpec::liouville();
    const auto canon = raw.canonicalized();
    const auto &budget = options.precision;
    const auto t = static_cast<std::int64_t>(poly.degree());

    LiouvilleCertificate cert{poly, 0, DyadicInterval(), false, {}};
    auto cur = canon.cursor();
    std::uint64_t n = 0;
    while (n < budget.max_terms) {
        const auto term = cur.next();
        if (!term || term->exponent > budget.max_exponent_bits) {
            break;
        }
        ++n;
        cert.terms = n;
        cert.value_interval = eval_poly_interval(poly, eval_interval(canon, n, budget));
        if (cert.value_interval.excludes_zero()) {
            cert.certified = true;
            break;
        }
    }

    std::int64_t s_factorial = 1;
    for (unsigned s = 0; s <= options.step_cap; ++s) {
        if (s > 1) {
            s_factorial *= s;
        }
        LiouvilleStep step;
        step.s = s;
        step.partial = partial_sum(raw, s + 1, budget);
        step.value = poly(step.partial);
        step.denominator_ok = step.value.scaled(t * s_factorial).is_integer();
        if (!step.value.is_zero()) {
            step.lower_bound_ok = step.value.abs() >= Dyadic::pow2(-t * s_factorial);
        }
        // Canonical terms 0..s+1 cover raw indices 0..s+2.
        const auto lambda = eval_interval(canon, s + 2, budget);
        step.tail_upper = lambda.upper() - step.partial;
        step.tail_ok = step.tail_upper < Dyadic::pow2(1 - s_factorial * static_cast<std::int64_t>(s + 1));
        cert.steps.push_back(std::move(step));
    }
    return cert;
}

GeneralizedResult generalized_witness(const SeriesSpec &series, const IntPolynomial &poly,
                                      const GeneralizedOptions &options)
{
    const WeightedTable weights(series, options.horizon, static_cast<unsigned>(poly.degree()), options.table);
    return generalized_witness(series, poly, weights, options);
}

GeneralizedResult generalized_witness(const SeriesSpec &series, const IntPolynomial &poly,
                                      const WeightedTable &weights, const GeneralizedOptions &options)
{
    GeneralizedResult result;
    const auto spec = series.canonicalized();
    if (spec.radix() != 2) {
        result.reason = "series is not binary";
        return result;
    }
    if (!spec.coefficient_bound()) {
        result.reason = "series coefficients are unbounded; no tail bound is available";
        return result;
    }
    const auto horizon = options.horizon;
    const auto t = poly.degree();
    if (weights.m_max() < horizon || weights.q_max() < t) {
        throw std::invalid_argument("generalized_witness: weighted table smaller than horizon or degree");
    }

    std::vector<BigInt> e(horizon + 1);
    std::vector<std::uint64_t> nonzero;
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        for (std::size_t q = 0; q <= t; ++q) {
            e[n] += poly.coefficient(q) * weights.coeff(n, static_cast<unsigned>(q));
        }
        if (e[n] != 0) {
            nonzero.push_back(n);
        }
    }
    // head[j] = sum_{n < j} e_n 2^-n
    std::vector<Dyadic> head(horizon + 2);
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        head[n + 1] = head[n] + Dyadic(e[n]).scaled(-as_signed(n));
    }
    std::vector<std::uint64_t> exponents;
    bool truncated = false;
    for (auto cur = spec.cursor(); auto term = cur.next();) {
        if (term->exponent > horizon) {
            break;
        }
        if (exponents.size() == options.precision.max_terms) {
            truncated = true;
            break;
        }
        exponents.push_back(term->exponent);
    }

    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        const auto m = nonzero[i];
        if (m == 0) {
            continue;
        }
        ++result.candidates_examined;
        const auto s = i > 0 ? nonzero[i - 1] : std::uint64_t{0};
        const auto k = i + 1 < nonzero.size() ? nonzero[i + 1] : horizon + 1;

        const auto main_term = Dyadic(e[m]).scaled(as_signed(s) - as_signed(m));
        if (!(main_term.abs() < half())) {
            continue;
        }
        // x = P + R with P the terms below exponent k; everything e_n, n < k,
        // comes from P alone.
        const auto n_low = static_cast<std::uint64_t>(
            std::lower_bound(exponents.begin(), exponents.end(), k) - exponents.begin());
        if (truncated && n_low == exponents.size()) {
            result.reason = "term budget exhausted below exponent " + std::to_string(k);
            break;
        }
        const auto low = partial_sum(spec, n_low, options.precision);
        const auto rest = tail_bound(spec, n_low, options.precision);
        const auto exact_tail = poly(low) - head[k];
        const auto low_abs = low.abs();
        const auto widened = low_abs + rest;
        Dyadic spread;
        Dyadic pw_wide = 1;
        Dyadic pw_low = 1;
        for (std::size_t q = 1; q <= t; ++q) {
            pw_wide *= widened;
            pw_low *= low_abs;
            spread += Dyadic(BigInt(abs(poly.coefficient(q)))) * (pw_wide - pw_low);
        }
        const auto tail = (exact_tail.abs() + spread).scaled(as_signed(s));
        if (!(tail < main_term.abs()) || !(main_term.abs() + tail < half())) {
            continue;
        }
        const auto frac = frac_part_interval(DyadicInterval::around(main_term, tail));
        if (!frac || !excludes_integers(*frac)) {
            continue;
        }
        GeneralizedCertificate cert{spec.name(), poly, s, m, k, e[m], tail, *frac};
        VerifyOptions vopts;
        vopts.guard_bits = options.guard_bits;
        vopts.precision = options.precision;
        const auto check = verify_generalized(series, cert, vopts);
        if (!check.accepted) {
            continue;
        }
        result.status = GeneralizedResult::Status::certified;
        result.certificate = std::move(cert);
        result.reason = "certified";
        return result;
    }
    if (result.reason.empty()) {
        result.reason = "no isolated digit coefficient closes the argument up to horizon " + std::to_string(horizon);
    }
    return result;
}

VerifyResult verify_generalized(const SeriesSpec &series, const GeneralizedCertificate &cert,
                                const VerifyOptions &options)
{
    VerifyResult reject;
    if (!(cert.s < cert.m && cert.m < cert.k) || cert.e_m == 0) {
        reject.diagnostic = "positions must satisfy s < m < k with e_m != 0";
        return reject;
    }
    const auto main_term = Dyadic(cert.e_m).scaled(as_signed(cert.s) - as_signed(cert.m));
    if (!(cert.tail_bound < main_term.abs()) || !(main_term.abs() + cert.tail_bound < half())) {
        reject.diagnostic = "certificate inequalities fail";
        return reject;
    }
    if (!excludes_integers(cert.frac_interval)) {
        reject.diagnostic = "certificate fractional interval touches an integer";
        return reject;
    }
    auto result = independent_frac(series, cert.poly, cert.s, cert.k, options);
    if (result.accepted && !result.independent_frac->intersects(cert.frac_interval)) {
        result.accepted = false;
        result.diagnostic = "independent interval is disjoint from the certificate interval";
    }
    if (result.accepted) {
        result.diagnostic = "accepted";
    }
    return result;
}

std::vector<IntPolynomial> enumerate_polynomials(unsigned max_degree, long height, bool dedupe_sign)
{
    std::vector<IntPolynomial> out;
    if (height < 1) {
        return out;
    }
    for (unsigned t = 1; t <= max_degree; ++t) {
        // digits[0] is a_t; odometer with the last digit (a_0) fastest.
        std::vector<long> digits(t + 1, -height);
        digits[0] = dedupe_sign ? 1 : -height;
        while (true) {
            if (digits[0] != 0) {
                std::vector<BigInt> ascending(digits.rbegin(), digits.rend());
                out.emplace_back(std::move(ascending));
            }
            std::size_t i = t + 1;
            while (i-- > 0) {
                if (digits[i] < height) {
                    ++digits[i];
                    break;
                }
                digits[i] = -height;
            }
            if (i == static_cast<std::size_t>(-1)) {
                break;
            }
        }
    }
    return out;
}

std::vector<SweepItem> mahler_sweep(const std::vector<IntPolynomial> &polys, unsigned threads)
{
    std::uint64_t max_k = 1;
    std::size_t max_t = 1;
    for (const auto &poly : polys) {
        max_k = std::max(max_k, positions_for(poly.degree(), choose_p(poly)).k);
        max_t = std::max(max_t, poly.degree());
    }
    const RepTable counts(SequenceSpec::pow2(), CountMode::ordered, max_k - 1, static_cast<unsigned>(max_t));

    std::vector<SweepItem> items;
    items.reserve(polys.size());
    for (const auto &poly : polys) {
        items.push_back(SweepItem{poly, std::nullopt, {}, {}});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < items.size(); i = next++) {
            auto &item = items[i];
            try {
                item.certificate = mahler_witness(item.poly, &counts);
                item.verification = verify_certificate(*item.certificate);
            } catch (const InternalInvariantError &e) {
                item.error = std::string("internal invariant violated: ") + e.what();
            } catch (const std::exception &e) {
                item.error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < std::max(1u, threads); ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }
    return items;
}

} // namespace lacunary
