#ifndef LACUNARY_REPORT_HPP
#define LACUNARY_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <lacunary/refuter.hpp>
#include <lacunary/repcount.hpp>
#include <lacunary/seqprops.hpp>
#include <lacunary/series.hpp>

namespace lacunary::report
{

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "lacunary-report/1";

enum class Format { json, csv, text };
Format parse_format(std::string_view text);

// Dyadic values serialize as {"mantissa": "<decimal>", "exponent": e}.
Json to_json(const Dyadic &d);
Dyadic dyadic_from_json(const Json &j);
Json to_json(const DyadicInterval &x);
DyadicInterval interval_from_json(const Json &j);
// {"coefficients": [a_t, ..., a_0] as decimal strings, "text": "..."}
Json to_json(const IntPolynomial &poly);
IntPolynomial polynomial_from_json(const Json &j);

Json to_json(const MahlerCertificate &cert);
MahlerCertificate mahler_certificate_from_json(const Json &j);
Json to_json(const VerifyResult &v);
Json to_json(const LiouvilleCertificate &cert);
Json to_json(const GeneralizedResult &r);
Json to_json(const LemmaAudit &audit);
Json to_json(const SparsenessReport &r);
Json to_json(const LoosenessReport &r);
Json to_json(const ClassificationReport &r);

struct DigitsReport {
    std::string series;
    unsigned base = 2;
    std::uint64_t count = 0;
    bool resolved = false;
    DigitExpansion expansion; // when unresolved, digits holds the determined prefix
    std::string diagnostic;
};
Json to_json(const DigitsReport &r);

struct RepcountReport {
    std::string sequence;
    CountMode mode = CountMode::ordered;
    std::uint64_t n = 0;
    unsigned q = 0;
    BigInt count;
};
Json to_json(const RepcountReport &r);

struct MahlerReport {
    std::vector<SweepItem> items;
};
Json to_json(const MahlerReport &r);

struct LiouvilleReport {
    std::vector<LiouvilleCertificate> items;
};
Json to_json(const LiouvilleReport &r);

struct ExploreReport {
    std::string series;
    GeneralizedResult result;
    std::optional<VerifyResult> verification;
};
Json to_json(const ExploreReport &r);

// Wraps a result in the versioned envelope {"schema", "command", "result"}.
Json envelope(std::string_view command, Json result);

std::string to_text(const DigitsReport &r);
std::string to_text(const RepcountReport &r);
std::string to_text(const LemmaAudit &r);
std::string to_text(const SparsenessReport &r);
std::string to_text(const LoosenessReport &r);
std::string to_text(const ClassificationReport &r);
std::string to_text(const MahlerReport &r);
std::string to_text(const LiouvilleReport &r);
std::string to_text(const ExploreReport &r);

// One row per histogram bucket: q,mode,count,frequency.
std::string to_csv(const LoosenessReport &r, bool header = true);
std::string to_csv(const SparsenessReport &r, bool header = true);
// Histograms of every q, then the gap witnesses.
std::string to_csv(const ClassificationReport &r);
std::string to_csv(const DigitsReport &r);
std::string to_csv(const RepcountReport &r);
std::string to_csv(const LemmaAudit &r);
std::string to_csv(const MahlerReport &r);
std::string to_csv(const LiouvilleReport &r);
std::string to_csv(const ExploreReport &r);

template <class Result>
std::string emit_report(std::string_view command, const Result &result, Format format)
{
    switch (format) {
    case Format::json:
        return envelope(command, to_json(result)).dump(2) + "\n";
    case Format::csv:
        return to_csv(result);
    case Format::text:
        break;
    }
    return to_text(result);
}

} // namespace lacunary::report

#endif
