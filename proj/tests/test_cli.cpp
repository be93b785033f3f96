#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <lacunary/cli.hpp>
#include <lacunary/errors.hpp>
#include <lacunary/report.hpp>

using namespace lacunary;
using report::Json;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Scoped environment override.
class EnvVar
{
public:
    EnvVar(const char *name, const char *value) : name_(name)
    {
        ::setenv(name, value, 1);
    }
    ~EnvVar()
    {
        ::unsetenv(name_);
    }

private:
    const char *name_;
};

const std::string kData = LACUNARY_TEST_DATA;

} // namespace

TEST_CASE("refute-mahler emits a certificate")
{
    const auto r = run({"refute-mahler", "--poly", "1,-1,0"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto doc = Json::parse(r.out);
    CHECK(doc.at("schema") == "lacunary-report/1");
    CHECK(doc.at("command") == "refute-mahler");
    const auto &item = doc.at("result").at("items").at(0);
    const auto &cert = item.at("certificate");
    CHECK(cert.at("p") == 3);
    CHECK(cert.at("k") == 32);
    CHECK(cert.at("m") == 24);
    CHECK(cert.at("s") == 20);
    CHECK(cert.at("d_m") == "2");
    CHECK(item.at("verification").at("accepted") == true);

    // The emitted document reads back to the certificate the library builds.
    CHECK(report::mahler_certificate_from_json(cert) == mahler_witness(IntPolynomial::parse("1,-1,0")));
}

TEST_CASE("digits and analyze")
{
    const auto nu = run({"digits", "nu10", "--base", "10", "--count", "17"});
    CHECK(nu.code == 0);
    CHECK(Json::parse(nu.out).at("result").at("digits") == "11010001000000010");

    const auto text = run({"--format", "text", "digits", "mahler", "--count", "16"});
    CHECK(text.out.find("0.1101000100000001") != std::string::npos);
    CHECK(run({"digits", "mahler", "--count", "8", "--format", "csv"}).out
          == "series,base,count,resolved,integer_part,digits\nmahler,2,8,true,0,11010001\n");

    const auto stuck = run({"--max-terms", "100", "digits", "geometric", "--count", "4"});
    CHECK(stuck.code == 2);
    CHECK(Json::parse(stuck.out).at("result").at("resolved") == false);

    const auto nat = run({"analyze", "naturals", "--qmax", "2", "--N", "1000", "--M", "1"});
    CHECK(nat.code == 0);
    const auto doc = Json::parse(nat.out).at("result");
    CHECK(doc.at("sparse_so_far") == false);
    CHECK(doc.at("loose_so_far") == false);
    CHECK(doc.at("entries").at(0).at("sparse").at("status") == "inconclusive");
    CHECK(doc.at("entries").at(1).at("loose").at("verdict") == "growth-detected");
    CHECK(doc.at("entries").at(1).at("loose").at("max_count") == "500");
}

TEST_CASE("repcount and audit")
{
    const auto d = run({"repcount", "3", "2"});
    CHECK(d.code == 0);
    CHECK(Json::parse(d.out).at("result").at("count") == "2");

    const auto fib = run({"repcount", "10", "2", "--seq", "fib", "--mode", "unordered", "--format", "text"});
    CHECK(fib.out == "d_10(2) = 2  [fib, unordered]\n");

    const auto big = run({"repcount", "1000000000000", "3"});
    CHECK(big.code == 0);

    // Ordered counts violate the step inequality, so the audit reports failure.
    const auto audit = run({"audit-lemma", "--nmax", "64", "--qmax", "2"});
    CHECK(audit.code == 2);
    CHECK(Json::parse(audit.out).at("result").at("passed") == false);
}

TEST_CASE("sweeps aggregate exit codes")
{
    const auto sweep = run({"refute-mahler", "--sweep", "--degree", "2", "--height", "2", "--threads", "3"});
    CHECK(sweep.code == 0);
    const auto doc = Json::parse(sweep.out).at("result");
    CHECK(doc.at("total") == 2 * 5 + 2 * 25);
    CHECK(doc.at("certified") == doc.at("total"));

    const auto liouville = run({"refute-liouville", "--sweep", "--degree", "2", "--height", "3", "--format", "csv"});
    CHECK(liouville.code == 0);
    CHECK(liouville.out.starts_with("poly,terms,certified\n\"1,-3\","));

    CHECK(run({"refute-liouville", "--poly", "4,-5", "--poly", "1,0,-2"}).code == 0);

    const auto neg = run({"explore", "geometric", "--poly", "1,-2"});
    CHECK(neg.code == 2);
    CHECK(Json::parse(neg.out).at("result").at("result").at("status") == "inconclusive");

    const auto pos = run({"explore", "mahler", "--poly", "1,-1,0", "--format", "text"});
    CHECK(pos.code == 0);
}

TEST_CASE("errors carry distinct diagnostics")
{
    const auto poly = run({"refute-mahler", "--poly", "0,1"});
    CHECK(poly.code == 1);
    CHECK(poly.out.empty());
    CHECK(poly.err.starts_with("error: malformed polynomial '0,1'"));

    const auto file = run({"analyze", "file:" + kData + "/not_increasing.txt"});
    CHECK(file.code == 1);
    CHECK(file.err.find("malformed sequence") != std::string::npos);
    CHECK(file.err.find("line 4") != std::string::npos);

    const auto table = run({"--max-table-entries", "1000", "analyze", "naturals", "--N", "5000"});
    CHECK(table.code == 1);
    CHECK(table.err.starts_with("error: budget exceeded"));

    {
        EnvVar cap("LACUNARY_MAX_TABLE_ENTRIES", "5000");
        const auto rejected = run({"--max-table-entries", "6000", "repcount", "3", "2"});
        CHECK(rejected.code == 1);
        CHECK(rejected.err.starts_with("error: budget rejected: --max-table-entries 6000"));
        CHECK(rejected.err.find("LACUNARY_MAX_TABLE_ENTRIES") != std::string::npos);
        // The default table budget is above this cap too.
        CHECK(run({"repcount", "3", "2"}).code == 1);
    }
    {
        EnvVar cap("LACUNARY_MAX_TERMS", "lots");
        CHECK(run({"repcount", "3", "2"}).err.find("bad environment variable") != std::string::npos);
    }

    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"refute-mahler"}).err.find("--poly or --sweep") != std::string::npos);
    CHECK(run({"digits", "mahler", "--base", "7"}).code == 1);
    CHECK(run({"digits", "spiral"}).err.starts_with("error: malformed series"));
    CHECK(run({"--format", "yaml", "repcount", "1", "1"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports are deterministic")
{
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"refute-mahler", "--sweep", "--degree", "2", "--height", "2", "--threads", "4"},
             {"analyze", "pow2", "--qmax", "3", "--N", "4096", "--M", "10"},
             {"--format", "text", "refute-liouville", "--poly", "1,0,-2"}}) {
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("certificate JSON round trip")
{
    for (const auto &item : mahler_sweep(enumerate_polynomials(3, 2))) {
        REQUIRE(item.certificate);
        const auto text = report::to_json(*item.certificate).dump();
        const auto back = report::mahler_certificate_from_json(Json::parse(text));
        CHECK(back == *item.certificate);
        CHECK(report::to_json(back).dump() == text);
    }

    const Dyadic big = Dyadic::from_parts(BigInt("-123456789012345678901234567890123"), 321);
    CHECK(report::dyadic_from_json(report::to_json(big)) == big);
    CHECK_THROWS_AS(report::dyadic_from_json(Json::parse(R"({"mantissa": "12x", "exponent": 1})")), ParseError);
    CHECK_THROWS_AS(report::mahler_certificate_from_json(Json::parse(R"({"p": 3})")), ParseError);
    CHECK_THROWS_AS(report::interval_from_json(Json::parse(
                        R"({"lower": {"mantissa": "1", "exponent": 0}, "upper": {"mantissa": "0", "exponent": 0}})")),
                    std::invalid_argument);
}

TEST_CASE("report formats")
{
    const auto loose = check_loose(SequenceSpec::pow2(), 2, 1024, CountMode::ordered);
    const auto csv = report::to_csv(loose);
    CHECK(csv == "q,mode,count,frequency\n2,ordered,0,969\n2,ordered,1,10\n2,ordered,2,45\n");

    const auto sparse = check_sparse(SequenceSpec::naturals(), 1, 1, 1000);
    CHECK(report::to_text(sparse).find("inconclusive up to N = 1000") != std::string::npos);
    CHECK(report::to_csv(sparse) == "q,M,N,status,a,b,c\n1,1,1000,inconclusive,,,\n");

    const auto found = check_sparse(SequenceSpec::pow2(), 1, 3, 100);
    CHECK(report::to_text(found) == "q = 1: sparse witness (4, 8, 16) with gaps > 3\n");

    CHECK(report::parse_format("csv") == report::Format::csv);
    CHECK_THROWS_AS(report::parse_format("xml"), ParseError);
}
