// schouten: batch front end for the double-weighted Schouten complex.
//
// Output is produced in memory and written once at the end; a file target is written
// through a temporary and renamed, so a failing run never leaves a partial file.
//
// Exit codes: 0 success, 1 a check or guaranteed zero failed, 2 malformed input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schouten/schouten.hpp"

namespace {

using namespace schouten;

enum class Format { structured, csv, plain };

struct RunConfig {
    std::string command;
    int n = 2;
    std::optional<int> m;
    std::optional<int> w;
    std::optional<int> h;
    std::string input;
    std::string output;
    Format format = Format::plain;
    std::uint64_t seed = kDefaultSeed;
    std::string suite = "all";
};

const char* format_name(Format f)
{
    switch (f) {
    case Format::structured:
        return "structured";
    case Format::csv:
        return "csv";
    case Format::plain:
        return "plain";
    }
    return "?";
}

std::string header_line(const RunConfig& c)
{
    std::string s = "# schouten " + c.command;
    if (c.command == "verify")
        s += " " + c.suite;
    s += " n=" + std::to_string(c.n);
    if (c.m)
        s += " m=" + std::to_string(*c.m);
    if (c.w)
        s += " w=" + std::to_string(*c.w);
    if (c.h)
        s += " h=" + std::to_string(*c.h);
    s += " format=" + std::string(format_name(c.format)) + " seed=" + std::to_string(c.seed);
    return s;
}

Json config_json(const RunConfig& c)
{
    Json j{{"command", c.command}, {"n", c.n}, {"format", format_name(c.format)}, {"seed", c.seed}};
    if (c.command == "verify")
        j["suite"] = c.suite;
    for (auto [key, v] : {std::pair{"m", c.m}, std::pair{"w", c.w}, std::pair{"h", c.h}})
        if (v)
            j[key] = *v;
    return j;
}

void write_output(const RunConfig& c, const std::string& text)
{
    if (c.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const std::filesystem::path target(c.output);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ParseError("cannot write '" + tmp.string() + "'");
        out << text;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw ParseError("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

int need(const std::optional<int>& v, const char* flag)
{
    if (!v)
        throw ParseError(std::string("missing required flag --") + flag);
    return *v;
}

// ---------------------------------------------------------------------------------------

int cmd_dims(const RunConfig& c)
{
    const int w = need(c.w, "w"), h = need(c.h, "h");
    const int top = max_arity(c.n, w, h);
    std::ostringstream out;
    const int last = std::max(top, 1);
    if (c.format == Format::structured) {
        Json rows = Json::array();
        for (int m = 1; m <= last; ++m)
            rows.push_back(Json{{"m", m}, {"dim", chain_dimension(c.n, m, w, h).get_str()}});
        out << Json{{"config", config_json(c)}, {"max_arity", top}, {"rows", rows}}.dump(2) << "\n";
    } else {
        out << header_line(c) << " max_arity=" << top << "\n";
        out << (c.format == Format::csv ? "n,m,w,h,dim\n" : "");
        for (int m = 1; m <= last; ++m) {
            const std::string d = chain_dimension(c.n, m, w, h).get_str();
            if (c.format == Format::csv)
                out << c.n << "," << m << "," << w << "," << h << "," << d << "\n";
            else
                out << "m=" << m << "  dim=" << d << "\n";
        }
    }
    write_output(c, out.str());
    return 0;
}

/// Zeros the theory guarantees: b_1 always, every b_m off the diagonal, b_2 on it.
bool guaranteed_zero(int m, int w, int h) { return m == 1 || w != h || m == 2; }

int cmd_betti(const RunConfig& c)
{
    const int w = need(c.w, "w"), h = need(c.h, "h");
    std::vector<int> degrees;
    if (c.m)
        degrees.push_back(*c.m);
    else
        for (int m = chain_dimension(c.n, 0, w, h) != 0 ? 0 : 1; m <= max_arity(c.n, w, h); ++m)
            degrees.push_back(m);
    std::vector<HomologyReport> reports;
    for (int m : degrees)
        reports.push_back(betti(c.n, m, w, h));
    int status = 0;
    std::ostringstream out;
    Json rows = Json::array();
    if (c.format != Format::structured)
        out << header_line(c) << "\n" << (c.format == Format::csv ? "n,m,w,h,dim,rank_out,rank_in,betti\n" : "");
    for (const auto& r : reports) {
        const bool violated = guaranteed_zero(r.m, r.w, r.h) && r.betti != 0;
        if (violated)
            status = 1;
        if (c.format == Format::structured)
            rows.push_back(Json{{"n", r.n}, {"m", r.m}, {"w", r.w}, {"h", r.h}, {"dim", r.dim_m}, {"rank_out", r.rank_out},
                                {"rank_in", r.rank_in}, {"betti", r.betti}, {"guaranteed_zero", guaranteed_zero(r.m, r.w, r.h)}});
        else if (c.format == Format::csv)
            out << r.n << "," << r.m << "," << r.w << "," << r.h << "," << r.dim_m << "," << r.rank_out << "," << r.rank_in
                << "," << r.betti << "\n";
        else
            out << "b_" << r.m << "^(" << r.w << "," << r.h << ") = " << r.betti << "   (dim " << r.dim_m << ", rank out "
                << r.rank_out << ", rank in " << r.rank_in << ")" << (violated ? "   VIOLATES GUARANTEED ZERO" : "")
                << "\n";
    }
    if (c.format == Format::structured)
        out << Json{{"config", config_json(c)}, {"rows", rows}}.dump(2) << "\n";
    write_output(c, out.str());
    if (status)
        std::cerr << "error: a Betti number guaranteed to vanish is nonzero\n";
    return status;
}

int cmd_euler(const RunConfig& c)
{
    const int w = need(c.w, "w"), h = need(c.h, "h");
    const int top = max_arity(c.n, w, h);
    const BigInt chi = euler_characteristic(c.n, w, h);
    std::ostringstream out;
    if (c.format == Format::structured) {
        Json dims = Json::array();
        for (int m = 0; m <= top; ++m)
            dims.push_back(chain_dimension(c.n, m, w, h).get_str());
        out << Json{{"config", config_json(c)}, {"max_arity", top}, {"dims", dims}, {"euler", chi.get_str()}}.dump(2)
            << "\n";
    } else if (c.format == Format::csv) {
        out << header_line(c) << "\nn,w,h,max_arity,euler\n" << c.n << "," << w << "," << h << "," << top << "," << chi
            << "\n";
    } else {
        out << header_line(c) << "\nchi^(" << w << "," << h << ") = " << chi << "   (m = 0.." << top << ")\n";
    }
    write_output(c, out.str());
    return chi == 0 ? 0 : 1;
}

struct SuiteLine {
    std::string name;
    CheckResult result;
};

int cmd_verify(const RunConfig& c)
{
    const std::string& s = c.suite;
    if (s != "dsq" && s != "jacobi" && s != "weights" && s != "psi" && s != "all")
        throw ParseError("unknown suite '" + s + "' (dsq | jacobi | weights | psi | all)");
    const auto range = [](const std::optional<int>& v, int lo, int hi) {
        std::vector<int> out;
        if (v)
            out.push_back(*v);
        else
            for (int k = lo; k <= hi; ++k)
                out.push_back(k);
        return out;
    };
    std::vector<SuiteLine> lines;
    std::vector<std::string> notes;
    for (const char* name : {"dsq", "weights"}) {
        if (s != name && s != "all")
            continue;
        for (int w : range(c.w, 0, 2))
            for (int h : range(c.h, -1, 2))
                for (int m = 2, top_m = c.m.value_or(4); m <= top_m; ++m) {
                    const CheckResult r = std::string(name) == "dsq" ? check_dsq(c.n, m, w, h) : check_weights(c.n, m, w, h);
                    lines.push_back({std::string(name) + " m=" + std::to_string(m) + " w=" + std::to_string(w) + " h="
                                         + std::to_string(h),
                                     r});
                }
    }
    if (s == "jacobi" || s == "all")
        lines.push_back({"jacobi n=" + std::to_string(c.n), check_bracket_identities(c.n, c.seed)});
    if (s == "psi" || s == "all")
        for (int w : range(c.w, 0, 2)) {
            lines.push_back({"psi w=" + std::to_string(w), check_psi_structure(c.n, w)});
            if (Stratification(w).omega_e() == 0)
                notes.push_back("psi w=" + std::to_string(w) + ": no TL strata (Omega_e = 0), TL check vacuous");
        }
    bool all_ok = true;
    std::ostringstream out;
    if (c.format == Format::structured) {
        Json rows = Json::array();
        for (const auto& l : lines) {
            Json row{{"check", l.name}, {"cases", l.result.checked}, {"pass", l.result.ok()}};
            if (!l.result.ok())
                row["witness"] = *l.result.witness;
            rows.push_back(row);
            all_ok = all_ok && l.result.ok();
        }
        out << Json{{"config", config_json(c)}, {"checks", rows}, {"notes", notes}, {"pass", all_ok}}.dump(2) << "\n";
    } else {
        out << header_line(c) << "\n" << (c.format == Format::csv ? "check,cases,result,witness\n" : "");
        for (const auto& l : lines) {
            all_ok = all_ok && l.result.ok();
            if (c.format == Format::csv)
                out << l.name << "," << l.result.checked << "," << (l.result.ok() ? "pass" : "fail") << ",\""
                    << l.result.witness.value_or("") << "\"\n";
            else
                out << (l.result.ok() ? "PASS " : "FAIL ") << l.name << "  (" << l.result.checked << " cases)"
                    << (l.result.ok() ? "" : "\n     witness: " + *l.result.witness) << "\n";
        }
        for (const auto& note : notes)
            out << "# note: " << note << "\n";
    }
    write_output(c, out.str());
    return all_ok ? 0 : 1;
}

/// Reads the input chain and pins down its (2, w, w) block. Anything else is malformed
/// input for this command (exit 2).
std::pair<Chain, std::pair<int, int>> read_block_cycle(const RunConfig& c)
{
    if (c.input.empty())
        throw ParseError("certify needs --input");
    Chain u = parse_chain_document(read_file(c.input));
    if (u.is_zero()) {
        if (!c.w)
            throw ParseError("zero chain: pass --w (and --n) to name its block");
        return {u, {c.n, *c.w}};
    }
    const int n = chain_dim(u);
    const WeightSignature sig = weight_signature(u.terms().begin()->first);
    if (sig.m != 2 || sig.w != sig.h)
        throw ParseError("input is not a 2-chain of weight (w,w)");
    require_pair_block(u, n, sig.w);
    if (c.w && *c.w != sig.w)
        throw ParseError("input weight differs from --w");
    return {u, {n, sig.w}};
}

int cmd_certify(const RunConfig& c)
{
    auto [u, block] = read_block_cycle(c);
    try {
        const ExactnessCertificate cert = certify_exact(u, block.first, block.second);
        write_output(c, certificate_to_json(cert).dump(2) + "\n");
        return 0;
    } catch (const NotACycle& e) {
        std::cerr << "error: input is not a cycle; its boundary is\n";
        for (const auto& line : to_text_lines(e.boundary()))
            std::cerr << "  " << line << "\n";
        return 1;
    }
}

int cmd_check(const RunConfig& c)
{
    if (c.input.empty())
        throw ParseError("check-certificate needs --input");
    Json j;
    try {
        j = Json::parse(read_file(c.input));
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const CertificateVerdict v = check_certificate(certificate_from_json(j));
    std::ostringstream out;
    if (c.format == Format::structured)
        out << Json{{"config", config_json(c)}, {"valid", v.valid}, {"reason", v.reason}}.dump(2) << "\n";
    else
        out << header_line(c) << "\n" << (v.valid ? "VALID " : "INVALID ") << v.reason << "\n";
    write_output(c, out.str());
    return v.valid ? 0 : 1;
}

int cmd_basis(const RunConfig& c)
{
    const int m = need(c.m, "m"), w = need(c.w, "w"), h = need(c.h, "h");
    const BasisIndex b = chain_basis(c.n, m, w, h);
    std::ostringstream out;
    if (c.format == Format::structured) {
        Json words = Json::array();
        for (const auto& word : b.words()) {
            Json factors = Json::array();
            for (const auto& g : word.factors())
                factors.push_back(generator_to_json(g));
            words.push_back(factors);
        }
        out << Json{{"config", config_json(c)}, {"size", b.size()}, {"words", words}}.dump(2) << "\n";
    } else {
        out << header_line(c) << " size=" << b.size() << "\n" << (c.format == Format::csv ? "index,word\n" : "");
        for (std::size_t k = 0; k < b.size(); ++k)
            out << k << (c.format == Format::csv ? "," : "  ") << to_text(b[k]) << "\n";
    }
    write_output(c, out.str());
    return 0;
}

int cmd_psi_matrix(const RunConfig& c)
{
    const int w = need(c.w, "w");
    const BasisIndex b = enumerate_basis(c.n, 2, w, w);
    SparseMatrixQ psi_m(b.size(), b.size());
    std::vector<SparseMatrixQ::Column> cols(b.size());
    parallel_for(b.size(), [&](std::size_t k) {
        const Chain image = psi(Chain::single(b[k], Rational(1)));
        for (const auto& [word, v] : image.terms()) {
            const auto row = b.find(word);
            if (!row)
                throw InvariantViolation("Psi left the block at " + to_text(b[k]));
            cols[k].emplace_back(*row, v);
        }
    });
    for (std::size_t k = 0; k < cols.size(); ++k)
        psi_m.set_column(k, std::move(cols[k]));
    std::ostringstream out;
    if (c.format == Format::structured) {
        Json entries = Json::array();
        for (std::size_t j = 0; j < psi_m.cols(); ++j)
            for (const auto& [i, v] : psi_m.column(j))
                entries.push_back(Json{i, j, to_text(v)});
        Json words = Json::array();
        for (const auto& word : b.words())
            words.push_back(to_text(word));
        out << Json{{"config", config_json(c)}, {"basis", words}, {"rows", psi_m.rows()}, {"cols", psi_m.cols()},
                    {"entries", entries}}
                   .dump(2)
            << "\n";
    } else {
        out << header_line(c) << "\n" << to_coordinate_text(psi_m);
    }
    write_output(c, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Double-weighted homology of polynomial multivector fields"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    RunConfig cfg;
    int m = 0, w = 0, h = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "ambient dimension")->check(CLI::Range(1, kMaxDim));
        sub->add_option("--m", m, "homological degree");
        sub->add_option("--w", w, "first weight, sum of (|alpha| - 1)");
        sub->add_option("--h", h, "second weight, sum of (|beta| - 1)");
        sub->add_option("--input", cfg.input, "input file");
        sub->add_option("--output", cfg.output, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "structured | csv | plain")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, Format>{{"structured", Format::structured}, {"csv", Format::csv}, {"plain", Format::plain}}));
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
        return sub;
    };
    std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> commands{
        {add_common(app.add_subcommand("dims", "dim C_m^(w,h) for m = 1..M_max")), cmd_dims},
        {add_common(app.add_subcommand("betti", "Betti numbers by exact rank")), cmd_betti},
        {add_common(app.add_subcommand("euler", "Euler characteristic of a block")), cmd_euler},
        {add_common(app.add_subcommand("certify", "exactness certificate for a (2,w,w) cycle")), cmd_certify},
        {add_common(app.add_subcommand("check-certificate", "re-verify a certificate")), cmd_check},
        {add_common(app.add_subcommand("basis", "list the canonical basis of C_m^(w,h)")), cmd_basis},
        {add_common(app.add_subcommand("psi-matrix", "matrix of Psi on C_2^(w,w)")), cmd_psi_matrix},
    };
    CLI::App* verify = add_common(app.add_subcommand("verify", "identity and structure checks"));
    verify->add_option("suite", cfg.suite, "dsq | jacobi | weights | psi | all");
    commands.emplace_back(verify, cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    for (auto& [sub, fn] : commands) {
        if (!sub->parsed())
            continue;
        cfg.command = sub->get_name();
        if (sub->count("--m"))
            cfg.m = m;
        if (sub->count("--w"))
            cfg.w = w;
        if (sub->count("--h"))
            cfg.h = h;
        try {
            return fn(cfg);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::out_of_range& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return 3;
        }
    }
    return 2;
}
