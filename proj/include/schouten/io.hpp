#pragma once

// Chain files and exactness certificates.
//
// A chain file is either text, one `coeff | factor ; factor ; ...` term per line with `#`
// comments and blank lines ignored, or a JSON array of {"coeff", "factors": [{"beta",
// "alpha"}]} objects. Certificates are JSON:
//   {"block": {"n": 2, "w": 2}, "U": [term lines], "V": [term lines], "p": ["p0", "p1", ...]}

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schouten/boundary.hpp"
#include "schouten/chain.hpp"
#include "schouten/errors.hpp"
#include "schouten/homotopy.hpp"
#include "schouten/multivector.hpp"
#include "schouten/polynomial.hpp"
#include "schouten/rational.hpp"

namespace schouten {

using Json = nlohmann::ordered_json;

inline Json generator_to_json(const Generator& g)
{
    std::vector<int> b(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.dim(); ++k)
        b[static_cast<std::size_t>(k)] = g.beta[k];
    return Json{{"beta", b}, {"alpha", g.alpha.indices()}};
}

/// Structured form, terms in canonical order.
inline Json chain_to_json(const Chain& c)
{
    Json out = Json::array();
    for (const auto& [w, v] : c.terms()) {
        Json factors = Json::array();
        for (const auto& g : w.factors())
            factors.push_back(generator_to_json(g));
        out.push_back(Json{{"coeff", to_text(v)}, {"factors", std::move(factors)}});
    }
    return out;
}

namespace detail {

inline std::vector<int> json_int_list(const Json& j, const char* what)
{
    if (!j.is_array())
        throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw ParseError(std::string(what) + " must be an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

inline Generator generator_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("beta") || !j.contains("alpha"))
        throw ParseError("factor must be an object with 'beta' and 'alpha'");
    const auto b = json_int_list(j.at("beta"), "beta");
    const auto a = json_int_list(j.at("alpha"), "alpha");
    return parse_generator("x[" + join_ints(b) + "] d[" + join_ints(a) + "]");
}

inline Rational json_rational(const Json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return from_int(j.get<std::int64_t>());
    throw ParseError("coefficient must be a string 'p/q' or an integer");
}

}  // namespace detail

inline Chain chain_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("structured chain must be a JSON array");
    Chain out;
    int n = 0;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coeff") || !term.contains("factors") || !term.at("factors").is_array()
            || term.at("factors").empty())
            throw ParseError("chain term must be {coeff, factors:[...]} with at least one factor");
        std::vector<Generator> raw;
        for (const auto& f : term.at("factors"))
            raw.push_back(detail::generator_from_json(f));
        for (const auto& g : raw) {
            if (n == 0)
                n = g.dim();
            if (g.dim() != n)
                throw ParseError("chain factors with different dimensions");
        }
        out.add_raw(std::move(raw), detail::json_rational(term.at("coeff")));
    }
    return out;
}

/// Text lines (see to_text_lines); `#` starts a comment.
inline Chain chain_from_lines(std::string_view text)
{
    Chain out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!detail::trim(line).empty())
            parse_chain_term(line, out);
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

/// Either format, chosen by the first non-blank character.
inline Chain parse_chain_document(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        return chain_from_json(j);
    }
    return chain_from_lines(text);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json certificate_to_json(const ExactnessCertificate& cert)
{
    Json p = Json::array();
    for (const auto& c : cert.annihilator.coefficients())
        p.push_back(to_text(c));
    return Json{{"block", {{"n", cert.n}, {"w", cert.w}}},
                {"U", to_text_lines(cert.cycle)},
                {"V", to_text_lines(cert.primitive)},
                {"p", std::move(p)}};
}

/// Parsed certificate fields, not yet trusted.
struct CertificateClaim {
    int n = 0;
    int w = 0;
    Chain u;
    Chain v;
    Polynomial p;
};

inline CertificateClaim certificate_from_json(const Json& j)
{
    const auto need = [&](const char* key) -> const Json& {
        if (!j.is_object() || !j.contains(key))
            throw ParseError(std::string("certificate lacks '") + key + "'");
        return j.at(key);
    };
    const Json& block = need("block");
    if (!block.is_object() || !block.contains("n") || !block.contains("w") || !block.at("n").is_number_integer()
        || !block.at("w").is_number_integer())
        throw ParseError("certificate block must be {n, w} integers");
    CertificateClaim c;
    c.n = block.at("n").get<int>();
    c.w = block.at("w").get<int>();
    if (c.n < 1 || c.n > kMaxDim || c.w < 0)
        throw ParseError("certificate block out of range");
    const auto lines = [&](const char* key) {
        const Json& arr = need(key);
        if (!arr.is_array())
            throw ParseError(std::string("'") + key + "' must be an array of term lines");
        Chain out;
        for (const auto& line : arr) {
            if (!line.is_string())
                throw ParseError(std::string("'") + key + "' must be an array of term lines");
            parse_chain_term(line.get<std::string>(), out);
        }
        return out;
    };
    c.u = lines("U");
    c.v = lines("V");
    const Json& p = need("p");
    if (!p.is_array())
        throw ParseError("'p' must be an array of coefficients");
    std::vector<Rational> coeffs;
    for (const auto& e : p)
        coeffs.push_back(detail::json_rational(e));
    c.p = Polynomial(std::move(coeffs));
    return c;
}

struct CertificateVerdict {
    bool valid = false;
    std::string reason;
};

/// Re-derives everything from the claim: block membership, d V = U, p(0) != 0 and
/// p(Psi) U = 0. Psi is recomputed from its definition.
inline CertificateVerdict check_certificate(const CertificateClaim& c)
{
    for (const Chain* ch : {&c.u, &c.v})
        if (!ch->is_zero() && chain_dim(*ch) != c.n)
            return {false, "chain dimension differs from the block"};
    for (const auto& [w, v] : c.u.terms())
        if (weight_signature(w) != WeightSignature{2, c.w, c.w})
            return {false, "U term " + to_text(w) + " outside C_2^(w,w)"};
    for (const auto& [w, v] : c.v.terms())
        if (weight_signature(w) != WeightSignature{3, c.w, c.w})
            return {false, "V term " + to_text(w) + " outside C_3^(w,w)"};
    if (boundary(c.v) != c.u)
        return {false, "boundary of V differs from U"};
    if (c.p.is_zero() || c.p[0] == 0)
        return {false, "annihilator has zero constant term"};
    if (!apply_polynomial(c.p, c.u).is_zero())
        return {false, "p(Psi) does not annihilate U"};
    return {true, "d V = U and p(Psi) U = 0"};
}

}  // namespace schouten
