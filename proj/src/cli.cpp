#include <lacunary/cli.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include <lacunary/errors.hpp>
#include <lacunary/polynomial.hpp>
#include <lacunary/refuter.hpp>
#include <lacunary/seqprops.hpp>
#include <lacunary/sequence.hpp>

#include "parse_util.hpp"

namespace lacunary::cli
{

namespace
{

// Bad user input, already worded for the diagnostic line.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

IntPolynomial parse_poly(const std::string &text)
{
    try {
        return IntPolynomial::parse(text);
    } catch (const ParseError &e) {
        throw InputError("malformed polynomial '" + text + "': " + e.what());
    }
}

SequenceSpec parse_sequence(const std::string &text)
{
    try {
        return SequenceSpec::parse(text);
    } catch (const ParseError &e) {
        throw InputError("malformed sequence '" + text + "': " + e.what());
    }
}

SeriesSpec parse_series(const std::string &text, const std::string &coeffs)
{
    try {
        auto series = SeriesSpec::parse(text);
        return coeffs.empty() ? series : series.with_coefficients(coeffs);
    } catch (const ParseError &e) {
        throw InputError("malformed series '" + text + (coeffs.empty() ? "" : "' with coefficients '" + coeffs)
                         + "': " + e.what());
    }
}

std::uint64_t env_cap(const char *name, std::uint64_t fallback)
{
    const char *value = std::getenv(name);
    if (value == nullptr || *value == '\0') {
        return fallback;
    }
    try {
        return detail::parse_u64(value, name);
    } catch (const ParseError &e) {
        throw InputError(std::string("bad environment variable: ") + e.what());
    }
}

void check_cap(const char *flag, std::uint64_t requested, std::uint64_t cap, const char *env)
{
    if (requested > cap) {
        throw BudgetExceeded("budget rejected: " + std::string(flag) + " " + std::to_string(requested)
                             + " exceeds the hard cap " + std::to_string(cap) + " (" + env + ")");
    }
}

std::vector<IntPolynomial> polynomials(const std::vector<std::string> &texts, bool sweep, unsigned degree,
                                       long height)
{
    if (sweep == !texts.empty()) {
        throw InputError("give either --poly or --sweep");
    }
    if (sweep) {
        if (degree < 1) {
            throw InputError("--degree must be at least 1");
        }
        if (height < 0) {
            throw InputError("--height must be non-negative");
        }
        return enumerate_polynomials(degree, height);
    }
    std::vector<IntPolynomial> out;
    for (const auto &t : texts) {
        out.push_back(parse_poly(t));
    }
    return out;
}

struct Options {
    std::string format = "json";
    RunConfig config;

    std::string series;
    std::string coeffs;
    unsigned base = 2;
    std::uint64_t count = 64;

    std::uint64_t n = 0;
    unsigned q = 0;
    std::string sequence = "pow2";
    std::string mode = "ordered";

    std::uint64_t n_max = 1 << 14;
    unsigned q_max = 5;

    std::uint64_t limit = 1 << 14;
    std::uint64_t gap = 100;

    std::vector<std::string> polys;
    bool sweep = false;
    unsigned degree = 1;
    long height = 1;
    unsigned step_cap = 5;
    std::uint64_t horizon = 512;
};

int execute(const Options &o, std::ostream &out)
{
    const auto &cfg = o.config;
    const auto &cmd = cfg.command;

    if (cmd == "digits") {
        if (o.base != 2 && o.base != 10) {
            throw InputError("--base must be 2 or 10");
        }
        const auto series = parse_series(o.series, o.coeffs);
        report::DigitsReport r{series.name(), o.base, o.count, false, {}, {}};
        try {
            r.expansion = digits(series, o.base, o.count, cfg.precision);
            r.resolved = true;
        } catch (const PrecisionUnresolvable &e) {
            r.expansion.base = o.base;
            r.expansion.digits = e.achieved_prefix();
            r.diagnostic = e.what();
        }
        out << report::emit_report(cmd, r, cfg.format);
        return r.resolved ? kExitOk : kExitInconclusive;
    }

    if (cmd == "repcount") {
        const auto seq = parse_sequence(o.sequence);
        const auto mode = parse_count_mode(o.mode);
        report::RepcountReport r{seq.name(), mode, o.n, o.q, {}};
        if (seq.kind() == SequenceSpec::Kind::pow2 && mode == CountMode::ordered) {
            r.count = dnq_pow2(o.n, o.q);
        } else {
            r.count = dnq_general(seq, o.n, o.q, mode, cfg.table);
        }
        out << report::emit_report(cmd, r, cfg.format);
        return kExitOk;
    }

    if (cmd == "audit-lemma") {
        const auto audit = lemma_audit(o.n_max, o.q_max, cfg.table);
        out << report::emit_report(cmd, audit, cfg.format);
        return audit.passed() ? kExitOk : kExitInconclusive;
    }

    if (cmd == "analyze") {
        const auto seq = parse_sequence(o.sequence);
        const auto r = classify(seq, o.q_max, o.limit, o.gap, cfg.table);
        out << report::emit_report(cmd, r, cfg.format);
        return kExitOk;
    }

    if (cmd == "refute-mahler") {
        const auto polys = polynomials(o.polys, o.sweep, o.degree, o.height);
        report::MahlerReport r{mahler_sweep(polys, cfg.threads)};
        for (const auto &item : r.items) {
            if (item.error.starts_with("internal invariant violated")) {
                throw InternalInvariantError(item.error);
            }
        }
        out << report::emit_report(cmd, r, cfg.format);
        const bool all = std::all_of(r.items.begin(), r.items.end(), [](const SweepItem &i) { return i.ok(); });
        return all ? kExitOk : kExitInconclusive;
    }

    if (cmd == "refute-liouville") {
        const auto polys = polynomials(o.polys, o.sweep, o.degree, o.height);
        report::LiouvilleReport r;
        LiouvilleOptions opts;
        opts.step_cap = o.step_cap;
        opts.precision = cfg.precision;
        for (const auto &p : polys) {
            r.items.push_back(liouville_nonvanishing(p, opts));
        }
        out << report::emit_report(cmd, r, cfg.format);
        const bool all = std::all_of(r.items.begin(), r.items.end(), [](const auto &c) { return c.certified; });
        return all ? kExitOk : kExitInconclusive;
    }

    if (cmd == "explore") {
        if (o.polys.size() != 1) {
            throw InputError("explore takes exactly one --poly");
        }
        const auto series = parse_series(o.series, o.coeffs);
        const auto poly = parse_poly(o.polys.front());
        GeneralizedOptions opts;
        opts.horizon = o.horizon;
        opts.precision = cfg.precision;
        opts.table = cfg.table;
        report::ExploreReport r{series.name(), generalized_witness(series, poly, opts), std::nullopt};
        if (r.result.certificate) {
            VerifyOptions v;
            v.precision = cfg.precision;
            r.verification = verify_generalized(series, *r.result.certificate, v);
        }
        out << report::emit_report(cmd, r, cfg.format);
        const bool ok = r.result.status == GeneralizedResult::Status::certified && r.verification
                        && r.verification->accepted;
        return ok ? kExitOk : kExitInconclusive;
    }

    throw InputError("unknown command '" + cmd + "'");
}

} // namespace

HardCaps HardCaps::from_environment()
{
    HardCaps caps;
    caps.max_exponent_bits = env_cap("LACUNARY_MAX_EXPONENT_BITS", caps.max_exponent_bits);
    caps.max_terms = env_cap("LACUNARY_MAX_TERMS", caps.max_terms);
    caps.max_table_entries = env_cap("LACUNARY_MAX_TABLE_ENTRIES", caps.max_table_entries);
    return caps;
}

void RunConfig::check(const HardCaps &caps) const
{
    check_cap("--max-exponent-bits", precision.max_exponent_bits, caps.max_exponent_bits,
              "LACUNARY_MAX_EXPONENT_BITS");
    check_cap("--max-terms", precision.max_terms, caps.max_terms, "LACUNARY_MAX_TERMS");
    check_cap("--max-table-entries", table.max_entries, caps.max_table_entries, "LACUNARY_MAX_TABLE_ENTRIES");
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Exact lacunary series evaluation, representation counts and non-vanishing certificates"};
    app.name("lacunary");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--max-exponent-bits", o.config.precision.max_exponent_bits,
                   "largest series exponent materialized exactly");
    app.add_option("--max-terms", o.config.precision.max_terms, "largest number of series terms summed");
    app.add_option("--max-table-entries", o.config.table.max_entries, "largest count table (cells)");

    auto *digits_cmd = app.add_subcommand("digits", "digits of a series after the radix point");
    digits_cmd->add_option("series", o.series, "mahler, liouville, nu10, fib, geometric, geomfloor:X, list:a,b,...")
        ->required();
    digits_cmd->add_option("--base", o.base, "2 or 10");
    digits_cmd->add_option("--count", o.count, "number of digits");
    digits_cmd->add_option("--coeffs", o.coeffs, "ones, index or cycle:c0,c1,...");

    auto *repcount_cmd = app.add_subcommand("repcount", "d_n(q), representations of n by q sequence terms");
    repcount_cmd->add_option("n", o.n)->required();
    repcount_cmd->add_option("q", o.q)->required();
    repcount_cmd->add_option("--seq", o.sequence, "pow2, factorial, fib, naturals, geomfloor:X, list:..., file:PATH");
    repcount_cmd->add_option("--mode", o.mode, "ordered or unordered")
        ->check(CLI::IsMember({"ordered", "unordered"}));

    auto *audit_cmd = app.add_subcommand("audit-lemma", "check the power-of-two counting bounds");
    audit_cmd->add_option("--nmax", o.n_max);
    audit_cmd->add_option("--qmax", o.q_max);

    auto *analyze_cmd = app.add_subcommand("analyze", "finite-range looseness and sparseness screen");
    analyze_cmd->add_option("sequence", o.sequence)->required();
    analyze_cmd->add_option("--qmax", o.q_max);
    analyze_cmd->add_option("--N", o.limit, "range limit");
    analyze_cmd->add_option("--M", o.gap, "gap size");

    auto add_poly_options = [&](CLI::App *sub) {
        sub->add_option("--poly", o.polys, "coefficients a_t,...,a_0, leading first");
        sub->add_flag("--sweep", o.sweep, "every polynomial up to --degree and --height");
        sub->add_option("--degree", o.degree);
        sub->add_option("--height", o.height, "largest |coefficient|");
    };
    auto *mahler_cmd = app.add_subcommand("refute-mahler", "certify f(mu) != 0, mu = sum 2^-2^n");
    add_poly_options(mahler_cmd);
    mahler_cmd->add_option("--threads", o.config.threads)->check(CLI::Range(1u, 256u));

    auto *liouville_cmd = app.add_subcommand("refute-liouville", "certify f(lambda) != 0, lambda = sum 2^-n!");
    add_poly_options(liouville_cmd);
    liouville_cmd->add_option("--step-cap", o.step_cap, "largest s for the partial-sum checks");

    auto *explore_cmd = app.add_subcommand("explore", "generalized witness search on any binary series");
    explore_cmd->add_option("series", o.series)->required();
    explore_cmd->add_option("--poly", o.polys, "coefficients a_t,...,a_0")->required();
    explore_cmd->add_option("--coeffs", o.coeffs);
    explore_cmd->add_option("--horizon", o.horizon, "largest exponent searched");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitError;
    }

    try {
        o.config.command = app.get_subcommands().front()->get_name();
        o.config.format = report::parse_format(o.format);
        o.config.check(HardCaps::from_environment());
        return execute(o, out);
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
    } catch (const BudgetExceeded &e) {
        const std::string what = e.what();
        err << "error: " << (what.starts_with("budget rejected") ? what : "budget exceeded: " + what) << '\n';
    } catch (const ParseError &e) {
        err << "error: malformed input: " << e.what() << '\n';
    } catch (const InternalInvariantError &e) {
        err << "internal error: " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("lacunary");
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace lacunary::cli
