#include <lacunary/report.hpp>

#include <sstream>

#include <lacunary/errors.hpp>

namespace lacunary::report
{

namespace
{

std::string verdict_name(LoosenessReport::Verdict v)
{
    return v == LoosenessReport::Verdict::bounded_so_far ? "bounded-so-far" : "growth-detected";
}

std::string status_name(SparsenessReport::Status s)
{
    return s == SparsenessReport::Status::found ? "found" : "inconclusive";
}

std::string status_name(GeneralizedResult::Status s)
{
    return s == GeneralizedResult::Status::certified ? "certified" : "inconclusive";
}

std::string kind_name(LemmaViolation::Kind k)
{
    return k == LemmaViolation::Kind::factorial_square_bound ? "factorial-square-bound" : "step-inequality";
}

Json optional_interval(const std::optional<DyadicInterval> &x)
{
    return x ? to_json(*x) : Json(nullptr);
}

std::string witness_text(const SparsenessReport &r)
{
    const auto &w = *r.witness;
    return "(" + std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " + std::to_string(w[2]) + ")";
}

} // namespace

Format parse_format(std::string_view text)
{
    if (text == "json") {
        return Format::json;
    }
    if (text == "csv") {
        return Format::csv;
    }
    if (text == "text") {
        return Format::text;
    }
    throw ParseError("unknown output format '" + std::string(text) + "' (expected json, csv or text)");
}

Json to_json(const Dyadic &d)
{
    return Json{{"mantissa", d.mantissa().get_str()}, {"exponent", d.exponent()}};
}

Dyadic dyadic_from_json(const Json &j)
{
    try {
        return Dyadic::from_parts(BigInt(j.at("mantissa").get<std::string>(), 10), j.at("exponent").get<std::uint64_t>());
    } catch (const std::invalid_argument &) {
        throw ParseError("malformed dyadic mantissa in report");
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed dyadic value: ") + e.what());
    }
}

Json to_json(const DyadicInterval &x)
{
    return Json{{"lower", to_json(x.lower())}, {"upper", to_json(x.upper())}};
}

DyadicInterval interval_from_json(const Json &j)
{
    try {
        return DyadicInterval(dyadic_from_json(j.at("lower")), dyadic_from_json(j.at("upper")));
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed interval: ") + e.what());
    }
}

Json to_json(const IntPolynomial &poly)
{
    Json coeffs = Json::array();
    for (auto i = poly.degree() + 1; i-- > 0;) {
        coeffs.push_back(poly.coefficient(i).get_str());
    }
    return Json{{"coefficients", coeffs}, {"text", poly.to_string()}};
}

IntPolynomial polynomial_from_json(const Json &j)
{
    try {
        std::string flag;
        for (const auto &c : j.at("coefficients")) {
            flag += (flag.empty() ? "" : ",") + c.get<std::string>();
        }
        return IntPolynomial::parse(flag);
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed polynomial: ") + e.what());
    }
}

Json to_json(const MahlerCertificate &cert)
{
    return Json{
        {"poly", to_json(cert.poly)},
        {"p", cert.p},
        {"k", cert.k},
        {"m", cert.m},
        {"s", cert.s},
        {"d_m", cert.d_m.get_str()},
        {"D", cert.D.get_str()},
        {"tail_bound", to_json(cert.tail_bound)},
        {"frac_interval", to_json(cert.frac_interval)},
        {"verdict", cert.verdict},
    };
}

MahlerCertificate mahler_certificate_from_json(const Json &j)
{
    try {
        return MahlerCertificate{
            polynomial_from_json(j.at("poly")),
            j.at("p").get<unsigned>(),
            j.at("k").get<std::uint64_t>(),
            j.at("m").get<std::uint64_t>(),
            j.at("s").get<std::uint64_t>(),
            BigInt(j.at("d_m").get<std::string>(), 10),
            BigInt(j.at("D").get<std::string>(), 10),
            dyadic_from_json(j.at("tail_bound")),
            interval_from_json(j.at("frac_interval")),
            j.at("verdict").get<std::string>(),
        };
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    } catch (const std::invalid_argument &) {
        throw ParseError("malformed integer in certificate");
    }
}

Json to_json(const VerifyResult &v)
{
    return Json{
        {"accepted", v.accepted},
        {"diagnostic", v.diagnostic},
        {"terms_used", v.terms_used},
        {"independent_frac", optional_interval(v.independent_frac)},
    };
}

Json to_json(const LiouvilleCertificate &cert)
{
    Json steps = Json::array();
    for (const auto &s : cert.steps) {
        steps.push_back(Json{
            {"s", s.s},
            {"partial_sum", to_json(s.partial)},
            {"value", to_json(s.value)},
            {"denominator_ok", s.denominator_ok},
            {"lower_bound_ok", s.lower_bound_ok ? Json(*s.lower_bound_ok) : Json(nullptr)},
            {"tail_upper", to_json(s.tail_upper)},
            {"tail_ok", s.tail_ok},
        });
    }
    return Json{
        {"poly", to_json(cert.poly)},
        {"terms", cert.terms},
        {"value_interval", to_json(cert.value_interval)},
        {"verdict", cert.certified ? "nonzero-certified" : "inconclusive"},
        {"steps", steps},
    };
}

Json to_json(const GeneralizedResult &r)
{
    Json cert = nullptr;
    if (r.certificate) {
        const auto &c = *r.certificate;
        cert = Json{
            {"series", c.series},
            {"poly", to_json(c.poly)},
            {"s", c.s},
            {"m", c.m},
            {"k", c.k},
            {"e_m", c.e_m.get_str()},
            {"tail_bound", to_json(c.tail_bound)},
            {"frac_interval", to_json(c.frac_interval)},
        };
    }
    return Json{
        {"status", status_name(r.status)},
        {"reason", r.reason},
        {"candidates_examined", r.candidates_examined},
        {"certificate", cert},
    };
}

Json to_json(const LemmaAudit &audit)
{
    Json maxima = Json::array();
    for (std::size_t q = 0; q < audit.max_count.size(); ++q) {
        maxima.push_back(Json{{"q", q},
                              {"max_count", audit.max_count[q].get_str()},
                              {"argmax", audit.argmax[q]},
                              {"bound", BigInt(factorial(static_cast<unsigned>(q)) * factorial(static_cast<unsigned>(q))).get_str()}});
    }
    Json violations = Json::array();
    for (const auto &v : audit.violations) {
        violations.push_back(
            Json{{"kind", kind_name(v.kind)}, {"n", v.n}, {"q", v.q}, {"lhs", v.lhs.get_str()}, {"rhs", v.rhs.get_str()}});
    }
    return Json{
        {"n_max", audit.n_max},
        {"q_max", audit.q_max},
        {"checks", audit.checks},
        {"passed", audit.passed()},
        {"maxima", maxima},
        {"violations", violations},
    };
}

Json to_json(const SparsenessReport &r)
{
    Json witness = nullptr;
    if (r.witness) {
        witness = Json::array({(*r.witness)[0], (*r.witness)[1], (*r.witness)[2]});
    }
    return Json{{"q", r.q}, {"M", r.gap}, {"N", r.limit}, {"status", status_name(r.status)}, {"witness", witness}};
}

Json to_json(const LoosenessReport &r)
{
    Json hist = Json::array();
    for (const auto &[count, freq] : r.histogram) {
        hist.push_back(Json{{"count", count.get_str()}, {"frequency", freq}});
    }
    return Json{
        {"q", r.q},
        {"N", r.limit},
        {"mode", std::string(to_string(r.mode))},
        {"max_count", r.max_count.get_str()},
        {"argmax", r.argmax},
        {"growth_threshold", r.growth_threshold.get_str()},
        {"verdict", verdict_name(r.verdict)},
        {"histogram", hist},
    };
}

Json to_json(const ClassificationReport &r)
{
    Json entries = Json::array();
    for (const auto &e : r.entries) {
        entries.push_back(Json{
            {"q", e.q},
            {"loose", to_json(e.loose)},
            {"loose_ordered", to_json(e.loose_ordered)},
            {"sparse", to_json(e.sparse)},
        });
    }
    return Json{
        {"sequence", r.sequence},
        {"q_max", r.q_max},
        {"N", r.limit},
        {"M", r.gap},
        {"loose_so_far", r.loose_so_far()},
        {"sparse_so_far", r.sparse_so_far()},
        {"entries", entries},
        {"note", r.note},
    };
}

Json to_json(const DigitsReport &r)
{
    return Json{
        {"series", r.series},
        {"base", r.base},
        {"count", r.count},
        {"resolved", r.resolved},
        {"integer_part", r.resolved ? Json(r.expansion.integer_part.get_str()) : Json(nullptr)},
        {"digits", r.expansion.digits},
        {"terms_used", r.expansion.terms_used},
        {"diagnostic", r.diagnostic},
    };
}

Json to_json(const RepcountReport &r)
{
    return Json{{"sequence", r.sequence},
                {"mode", std::string(to_string(r.mode))},
                {"n", r.n},
                {"q", r.q},
                {"count", r.count.get_str()}};
}

Json to_json(const MahlerReport &r)
{
    Json items = Json::array();
    std::size_t certified = 0;
    for (const auto &item : r.items) {
        certified += item.ok() ? 1 : 0;
        items.push_back(Json{
            {"poly", to_json(item.poly)},
            {"certificate", item.certificate ? to_json(*item.certificate) : Json(nullptr)},
            {"verification", to_json(item.verification)},
            {"error", item.error.empty() ? Json(nullptr) : Json(item.error)},
        });
    }
    return Json{{"total", r.items.size()}, {"certified", certified}, {"items", items}};
}

Json to_json(const LiouvilleReport &r)
{
    Json items = Json::array();
    std::size_t certified = 0;
    for (const auto &c : r.items) {
        certified += c.certified ? 1 : 0;
        items.push_back(to_json(c));
    }
    return Json{{"total", r.items.size()}, {"certified", certified}, {"items", items}};
}

Json to_json(const ExploreReport &r)
{
    return Json{{"series", r.series},
                {"result", to_json(r.result)},
                {"verification", r.verification ? to_json(*r.verification) : Json(nullptr)}};
}

Json envelope(std::string_view command, Json result)
{
    return Json{{"schema", kSchema}, {"command", command}, {"result", std::move(result)}};
}

std::string to_text(const DigitsReport &r)
{
    std::ostringstream os;
    os << r.series << " base " << r.base << ", " << r.count << " digits\n";
    if (r.resolved) {
        os << r.expansion.integer_part.get_str() << '.' << r.expansion.digits << '\n';
        os << "terms used: " << r.expansion.terms_used << '\n';
    } else {
        os << "unresolved: " << r.diagnostic << '\n';
        os << "determined prefix: " << (r.expansion.digits.empty() ? "(none)" : r.expansion.digits) << '\n';
    }
    return os.str();
}

std::string to_text(const RepcountReport &r)
{
    return "d_" + std::to_string(r.n) + "(" + std::to_string(r.q) + ") = " + r.count.get_str() + "  [" + r.sequence
           + ", " + std::string(to_string(r.mode)) + "]\n";
}

std::string to_text(const LemmaAudit &r)
{
    std::ostringstream os;
    os << "representation lemma audit: n <= " << r.n_max << ", q <= " << r.q_max << ", " << r.checks << " checks\n";
    for (std::size_t q = 0; q < r.max_count.size(); ++q) {
        const auto f = factorial(static_cast<unsigned>(q));
        os << "  q = " << q << ": max d_n(q) = " << r.max_count[q].get_str() << " at n = " << r.argmax[q]
           << " (bound " << BigInt(f * f).get_str() << ")\n";
    }
    os << (r.passed() ? "no violations\n" : std::to_string(r.violations.size()) + " violations\n");
    for (const auto &v : r.violations) {
        os << "  " << kind_name(v.kind) << " at n = " << v.n << ", q = " << v.q << ": " << v.lhs.get_str() << " > "
           << v.rhs.get_str() << '\n';
    }
    return os.str();
}

std::string to_text(const SparsenessReport &r)
{
    if (r.witness) {
        return "q = " + std::to_string(r.q) + ": sparse witness " + witness_text(r) + " with gaps > "
               + std::to_string(r.gap) + "\n";
    }
    return "q = " + std::to_string(r.q) + ": inconclusive up to N = " + std::to_string(r.limit)
           + " (no three consecutive representable numbers with gaps > " + std::to_string(r.gap) + ")\n";
}

std::string to_text(const LoosenessReport &r)
{
    return "q = " + std::to_string(r.q) + " (" + std::string(to_string(r.mode)) + "): max d_n = "
           + r.max_count.get_str() + " at n = " + std::to_string(r.argmax) + ", " + verdict_name(r.verdict)
           + " (threshold " + r.growth_threshold.get_str() + ")\n";
}

std::string to_text(const ClassificationReport &r)
{
    std::ostringstream os;
    os << "sequence " << r.sequence << ", q <= " << r.q_max << ", N = " << r.limit << ", M = " << r.gap << '\n';
    for (const auto &e : r.entries) {
        os << "  loose  " << to_text(e.loose);
        os << "  loose  " << to_text(e.loose_ordered);
        os << "  sparse " << to_text(e.sparse);
    }
    os << "loose so far: " << (r.loose_so_far() ? "yes" : "no") << "; sparse so far: "
       << (r.sparse_so_far() ? "yes" : "no") << '\n';
    os << "note: " << r.note << '\n';
    return os.str();
}

std::string to_text(const MahlerReport &r)
{
    std::ostringstream os;
    std::size_t certified = 0;
    for (const auto &item : r.items) {
        os << item.poly.to_string() << ": ";
        if (item.certificate) {
            const auto &c = *item.certificate;
            os << "p=" << c.p << " k=" << c.k << " m=" << c.m << " s=" << c.s << " d_m=" << c.d_m.get_str()
               << " D=" << c.D.get_str() << " frac=" << c.frac_interval << "; "
               << (item.verification.accepted ? "verified" : "REJECTED: " + item.verification.diagnostic);
        } else {
            os << "error: " << item.error;
        }
        os << '\n';
        certified += item.ok() ? 1 : 0;
    }
    os << certified << " of " << r.items.size() << " certified nonzero at the Mahler number\n";
    return os.str();
}

std::string to_text(const LiouvilleReport &r)
{
    std::ostringstream os;
    std::size_t certified = 0;
    for (const auto &c : r.items) {
        os << c.poly.to_string() << ": " << (c.certified ? "nonzero" : "inconclusive") << " with " << c.terms
           << " terms, f(lambda) in " << c.value_interval << '\n';
        for (const auto &s : c.steps) {
            os << "  s = " << s.s << ": denominator " << (s.denominator_ok ? "ok" : "FAIL") << ", lower bound "
               << (s.lower_bound_ok ? (*s.lower_bound_ok ? "ok" : "FAIL") : "n/a (f(lambda_s) = 0)") << ", tail "
               << (s.tail_ok ? "ok" : "FAIL") << '\n';
        }
        certified += c.certified ? 1 : 0;
    }
    os << certified << " of " << r.items.size() << " certified nonzero at the Liouville number\n";
    return os.str();
}

std::string to_text(const ExploreReport &r)
{
    std::ostringstream os;
    os << "series " << r.series << ": " << status_name(r.result.status) << " (" << r.result.reason << ", "
       << r.result.candidates_examined << " candidates)\n";
    if (r.result.certificate) {
        const auto &c = *r.result.certificate;
        os << "  s=" << c.s << " m=" << c.m << " k=" << c.k << " e_m=" << c.e_m.get_str() << " tail<="
           << c.tail_bound << " frac=" << c.frac_interval << '\n';
    }
    if (r.verification) {
        os << "  independent check: " << (r.verification->accepted ? "accepted" : r.verification->diagnostic) << '\n';
    }
    return os.str();
}

std::string to_csv(const LoosenessReport &r, bool header)
{
    std::ostringstream os;
    if (header) {
        os << "q,mode,count,frequency\n";
    }
    for (const auto &[count, freq] : r.histogram) {
        os << r.q << ',' << to_string(r.mode) << ',' << count.get_str() << ',' << freq << '\n';
    }
    return os.str();
}

std::string to_csv(const SparsenessReport &r, bool header)
{
    std::ostringstream os;
    if (header) {
        os << "q,M,N,status,a,b,c\n";
    }
    os << r.q << ',' << r.gap << ',' << r.limit << ',' << status_name(r.status);
    if (r.witness) {
        os << ',' << (*r.witness)[0] << ',' << (*r.witness)[1] << ',' << (*r.witness)[2];
    } else {
        os << ",,,";
    }
    os << '\n';
    return os.str();
}

std::string to_csv(const ClassificationReport &r)
{
    std::string out = "q,mode,count,frequency\n";
    for (const auto &e : r.entries) {
        out += to_csv(e.loose, false);
        out += to_csv(e.loose_ordered, false);
    }
    out += "\nq,M,N,status,a,b,c\n";
    for (const auto &e : r.entries) {
        out += to_csv(e.sparse, false);
    }
    return out;
}

std::string to_csv(const DigitsReport &r)
{
    return "series,base,count,resolved,integer_part,digits\n" + r.series + "," + std::to_string(r.base) + ","
           + std::to_string(r.count) + "," + (r.resolved ? "true" : "false") + ","
           + (r.resolved ? r.expansion.integer_part.get_str() : "") + "," + r.expansion.digits + "\n";
}

std::string to_csv(const RepcountReport &r)
{
    return "sequence,mode,n,q,count\n" + r.sequence + "," + std::string(to_string(r.mode)) + "," + std::to_string(r.n)
           + "," + std::to_string(r.q) + "," + r.count.get_str() + "\n";
}

std::string to_csv(const LemmaAudit &r)
{
    std::ostringstream os;
    os << "q,max_count,argmax,bound\n";
    for (std::size_t q = 0; q < r.max_count.size(); ++q) {
        const auto f = factorial(static_cast<unsigned>(q));
        os << q << ',' << r.max_count[q].get_str() << ',' << r.argmax[q] << ',' << BigInt(f * f).get_str() << '\n';
    }
    return os.str();
}

std::string to_csv(const MahlerReport &r)
{
    std::ostringstream os;
    os << "poly,p,k,m,s,d_m,D,verified\n";
    for (const auto &item : r.items) {
        os << '"' << item.poly.to_flag_string() << '"';
        if (item.certificate) {
            const auto &c = *item.certificate;
            os << ',' << c.p << ',' << c.k << ',' << c.m << ',' << c.s << ',' << c.d_m.get_str() << ','
               << c.D.get_str();
        } else {
            os << ",,,,,,";
        }
        os << ',' << (item.ok() ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_csv(const LiouvilleReport &r)
{
    std::ostringstream os;
    os << "poly,terms,certified\n";
    for (const auto &c : r.items) {
        os << '"' << c.poly.to_flag_string() << "\"," << c.terms << ',' << (c.certified ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_csv(const ExploreReport &r)
{
    std::ostringstream os;
    os << "series,status,s,m,k,e_m\n" << r.series << ',' << status_name(r.result.status);
    if (r.result.certificate) {
        const auto &c = *r.result.certificate;
        os << ',' << c.s << ',' << c.m << ',' << c.k << ',' << c.e_m.get_str();
    } else {
        os << ",,,,";
    }
    os << '\n';
    return os.str();
}

} // namespace lacunary::report
