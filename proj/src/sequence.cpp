#include <lacunary/sequence.hpp>

#include <cstdint>
#include <fstream>
#include <istream>

#include <lacunary/errors.hpp>

#include "parse_util.hpp"

namespace lacunary
{

SequenceSpec SequenceSpec::pow2()
{
    return SequenceSpec(Kind::pow2, "pow2");
}

SequenceSpec SequenceSpec::factorial()
{
    return SequenceSpec(Kind::factorial, "factorial");
}

SequenceSpec SequenceSpec::fibonacci()
{
    return SequenceSpec(Kind::fib, "fib");
}

SequenceSpec SequenceSpec::naturals()
{
    return SequenceSpec(Kind::naturals, "naturals");
}

SequenceSpec SequenceSpec::geomfloor(const mpq_class &theta, std::string theta_label)
{
    if (theta <= 1) {
        throw ParseError("geomfloor ratio must exceed 1, got " + theta_label);
    }
    SequenceSpec s(Kind::geomfloor, "geomfloor:" + theta_label);
    s.theta_ = theta;
    return s;
}

SequenceSpec SequenceSpec::custom(std::vector<std::uint64_t> terms, std::string name)
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] == 0) {
            throw ParseError("sequence term " + std::to_string(i + 1) + " is not positive");
        }
        if (i > 0 && terms[i] <= terms[i - 1]) {
            throw ParseError("sequence term " + std::to_string(i + 1) + " (" + std::to_string(terms[i])
                             + ") does not exceed its predecessor");
        }
    }
    SequenceSpec s(Kind::custom, std::move(name));
    s.custom_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(terms));
    return s;
}

SequenceSpec SequenceSpec::from_stream(std::istream &in, std::string name)
{
    std::vector<std::uint64_t> terms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = std::string_view(line);
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = detail::trim(body);
        if (body.empty()) {
            continue;
        }
        std::uint64_t v;
        try {
            v = detail::parse_u64(body, "sequence term");
        } catch (const ParseError &e) {
            throw ParseError(e.what(), line_no);
        }
        if (v == 0) {
            throw ParseError("sequence term must be positive", line_no);
        }
        if (!terms.empty() && v <= terms.back()) {
            throw ParseError("sequence not strictly increasing (" + std::to_string(v)
                                 + " after " + std::to_string(terms.back()) + ")",
                             line_no);
        }
        terms.push_back(v);
    }
    return custom(std::move(terms), std::move(name));
}

SequenceSpec SequenceSpec::from_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open sequence file '" + path.string() + "'");
    }
    return from_stream(in, "file:" + path.string());
}

SequenceSpec SequenceSpec::parse(std::string_view text)
{
    text = detail::trim(text);
    if (text == "pow2") {
        return pow2();
    }
    if (text == "factorial") {
        return factorial();
    }
    if (text == "fib") {
        return fibonacci();
    }
    if (text == "naturals") {
        return naturals();
    }
    if (text.starts_with("geomfloor:")) {
        const auto arg = text.substr(10);
        return geomfloor(detail::parse_rational(arg, "geomfloor ratio"), std::string(arg));
    }
    if (text.starts_with("list:")) {
        std::vector<std::uint64_t> terms;
        for (const auto tok : detail::split(text.substr(5), ',')) {
            terms.push_back(detail::parse_u64(tok, "sequence term"));
        }
        return custom(std::move(terms), std::string(text));
    }
    if (text.starts_with("file:")) {
        return from_file(std::filesystem::path(std::string(text.substr(5))));
    }
    throw ParseError("unknown sequence '" + std::string(text)
                     + "' (expected pow2, factorial, fib, naturals, geomfloor:THETA, list:a,b,... or file:PATH)");
}

std::vector<std::uint64_t> SequenceSpec::terms_up_to(std::uint64_t limit) const
{
    std::vector<std::uint64_t> out;
    auto push = [&](std::uint64_t v) {
        if (!out.empty() && v <= out.back()) {
            throw std::logic_error("sequence '" + name_ + "' generated a non-increasing term");
        }
        out.push_back(v);
    };
    switch (kind_) {
    case Kind::pow2:
        for (std::uint64_t v = 1; v <= limit; v *= 2) {
            push(v);
            if (v > limit / 2) {
                break;
            }
        }
        break;
    case Kind::factorial:
        for (std::uint64_t v = 1, i = 2; v <= limit; ++i) {
            push(v);
            if (v > limit / i) {
                break;
            }
            v *= i;
        }
        break;
    case Kind::fib:
        for (std::uint64_t a = 1, b = 2; a <= limit;) {
            push(a);
            if (b > limit) {
                break;
            }
            std::uint64_t next;
            if (__builtin_add_overflow(a, b, &next)) {
                next = UINT64_MAX;
            }
            a = b;
            b = next;
        }
        break;
    case Kind::naturals:
        for (std::uint64_t v = 1; v <= limit; ++v) {
            push(v);
            if (v == limit) {
                break;
            }
        }
        break;
    case Kind::geomfloor: {
        const mpz_class lim(static_cast<unsigned long>(limit));
        mpq_class power = 1;
        while (true) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), power.get_num_mpz_t(), power.get_den_mpz_t());
            if (f > lim) {
                break;
            }
            const auto v = static_cast<std::uint64_t>(f.get_ui());
            if (out.empty() || v > out.back()) {
                push(v);
            }
            power *= theta_;
        }
        break;
    }
    case Kind::custom:
        for (const auto v : *custom_) {
            if (v > limit) {
                break;
            }
            push(v);
        }
        break;
    }
    return out;
}

} // namespace lacunary
