#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadrep/quadrep.hpp"
#include "quadrep/verify.hpp"

namespace quadrep::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, computation_error = 1, usage_error = 2, verification_failure = 3 };

struct CliConfig {
    std::int64_t max_factor_bound = 1'000'000'000'000;
    std::int64_t max_enum_b = 10'000;
    std::int64_t truncation = 5000;
    double tolerance = 1e-3;
    std::string output = "json";

    Limits limits() const
    {
        Limits lim;
        lim.max_factor = max_factor_bound;
        lim.max_enum_b = max_enum_b;
        return lim;
    }

    void validate() const
    {
        if (max_factor_bound <= 0 || max_enum_b <= 0 || truncation <= 0)
            throw CLI::ValidationError("config", "bounds must be positive");
        if (!(tolerance > 0))
            throw CLI::ValidationError("config", "tolerance must be positive");
        if (output != "json" && output != "csv" && output != "plain")
            throw CLI::ValidationError("config", "output must be json, csv or plain");
    }
};

/// key=value lines; '#' starts a comment.
inline void load_config_file(const std::string& path, CliConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--config", "cannot read " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (trim(line).empty())
            continue;
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "max_factor_bound")
                cfg.max_factor_bound = std::stoll(value);
            else if (key == "max_enum_b")
                cfg.max_enum_b = std::stoll(value);
            else if (key == "truncation" || key == "B")
                cfg.truncation = std::stoll(value);
            else if (key == "tolerance")
                cfg.tolerance = std::stod(value);
            else if (key == "output")
                cfg.output = value;
            else
                throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": unknown key " + key);
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": bad value " + value);
        }
    }
}

// ---------------------------------------------------------------------------
// Serialization

inline Json integer_json(const Integer& x)
{
    static const Integer limit = Integer(1) << 53;
    if (boost::multiprecision::abs(x) < limit)
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Json integer_json(std::int64_t x)
{
    if (x >= (std::int64_t{1} << 53) || x <= -(std::int64_t{1} << 53))
        return Json(std::to_string(x));
    return Json(x);
}

inline Json rational_json(const Rational& x) { return Json(to_string(x)); }

inline Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json series_json(const SeriesEval& e)
{
    return Json{{"value", e.value}, {"truncation", integer_json(e.truncation)}, {"tail_bound", e.tail_bound}};
}

inline Json fingerprint_json(const GenusFingerprint& fp)
{
    Json j = Json::object();
    for (const auto& [p, s] : fp.signs)
        j[std::to_string(p)] = s.value();
    return j;
}

inline std::string scalar_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j)
            scalars = scalars && !v.is_structured();
        if (scalars) {
            std::string joined;
            for (std::size_t i = 0; i < j.size(); ++i)
                joined += (i ? ";" : "") + scalar_text(j[i]);
            out.emplace_back(prefix, joined);
        } else {
            for (std::size_t i = 0; i < j.size(); ++i)
                flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else {
        out.emplace_back(prefix, scalar_text(j));
    }
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

/// json: pretty printed; csv: key,value rows over the flattened document; plain: "key: value" lines.
inline void emit(const Json& j, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        out << j.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (format == "csv") {
        out << "key,value\n";
        for (const auto& [k, v] : rows)
            out << csv_field(k) << ',' << csv_field(v) << '\n';
    } else {
        for (const auto& [k, v] : rows)
            out << k << ": " << v << '\n';
    }
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
    std::int64_t disc = 0;
    std::string ideal = "ok";
};

inline constexpr const char* ideal_grammar = "ideal grammar: ok | prim:a,b | frac:num/den:a,b | prime:p,k";

/// Input errors in --disc and --ideal are usage errors, not computation errors.
inline Discriminant read_disc(std::int64_t d, const Limits& lim)
{
    try {
        return Discriminant(d, lim);
    } catch (const DomainError& e) {
        throw CLI::ValidationError("--disc", e.what());
    }
}

inline FracIdeal read_ideal(const Discriminant& D, const std::string& text)
{
    try {
        return parse_ideal(D, text);
    } catch (const DomainError& e) {
        throw CLI::ValidationError("--ideal", std::string(e.what()) + "; " + ideal_grammar);
    }
}

struct Handler {
    Json result;
    int code = ExitCode::ok;
};

inline Handler cmd_repnum(const Common& c, std::int64_t m, std::int64_t b, const std::string& method,
                          const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    const Discriminant D = read_disc(c.disc, lim);
    const FracIdeal I = read_ideal(D, c.ideal);
    if (b < 1)
        throw DomainError("repnum: b must be positive");
    Json methods = Json::object();
    std::optional<NormProfile> profile;
    auto get_profile = [&]() -> const NormProfile& {
        if (!profile)
            profile = residue_norm_profile(I, b, lim);
        return *profile;
    };
    if (method == "brute" || method == "all")
        methods["brute"] = integer_json(get_profile().at(m));
    if (method == "formula" || method == "all")
        methods["formula"] = integer_json(rep_count(RepQuery{I, m, b}, lim));
    if (method == "gauss-dft" || method == "all")
        methods["gauss-dft"] = integer_json(dft_reconstruct(gauss_table(get_profile()), m).value);
    bool agree = true;
    for (const auto& [k, v] : methods.items())
        agree = agree && v == methods.begin().value();
    Handler h;
    h.result = Json{{"N", methods.begin().value()}, {"agree", agree}, {"methods", methods}};
    if (!agree)
        h.code = ExitCode::verification_failure;
    return h;
}

struct GaussArgs {
    std::string kind = "ideal";
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t c = 1;
    std::int64_t p = 3;
    int r = 1;
};

inline Json exact_json(const ExactGaussValue& v)
{
    Json j{{"kind", to_string(v.kind)}, {"coeff", rational_json(v.coeff)}};
    if (v.kind == ExactGaussValue::Kind::ramified)
        j["sqrt_of"] = v.p;
    j["value"] = complex_json(v.to_complex());
    return j;
}

inline Handler cmd_gauss(const Common& c, const GaussArgs& g, const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    Handler h;
    if (g.kind == "classical") {
        const auto cg = classical_gauss(g.a, g.c);
        const auto direct = eval_complex(cg.direct);
        const bool agree = std::abs(direct - cg.closed.to_complex()) <= 1e-6;
        h.result = Json{{"a", g.a}, {"c", g.c}, {"closed", exact_json(cg.closed)}, {"direct", complex_json(direct)},
                        {"agree", agree}};
        h.code = agree ? ExitCode::ok : ExitCode::verification_failure;
        return h;
    }
    if (g.kind == "twisted") {
        h.result = Json{{"p", g.p}, {"r", g.r}, {"c", g.c}, {"value", complex_json(twisted_sum_direct(g.p, g.r, g.c))}};
        return h;
    }
    const Discriminant D = read_disc(c.disc, lim);
    const FracIdeal I = read_ideal(D, c.ideal);
    if (g.b < 1)
        throw DomainError("gauss: b must be positive");
    const ExponentVector v = gauss_direct(I, floor_mod(g.a, g.b), g.b, lim);
    const auto direct = eval_complex(v);
    h.result = Json{{"a", g.a}, {"b", g.b}, {"direct", {{"counts", v.counts}, {"value", complex_json(direct)}}}};
    const auto f = factorize(g.b, lim);
    if (g.b > 1 && f.size() == 1) {
        const auto pp = f.factors().front();
        FracIdeal J = I;
        if (D.ramifies(pp.prime) && !coprime_to_prime(I, pp.prime)) {
            J = coprime_genus_representative(I, D.value(), lim);
            h.result["representative"] = format_ideal(J);
        }
        const auto closed = gauss_closed(J, g.a, pp.prime, pp.exponent);
        const bool agree = std::abs(direct - closed.to_complex()) <= 1e-6;
        h.result["closed"] = exact_json(closed);
        h.result["agree"] = agree;
        h.code = agree ? ExitCode::ok : ExitCode::verification_failure;
    }
    return h;
}

inline Handler cmd_sigma(const Common& c, std::int64_t m, double s, const std::string& form, const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    const Discriminant D = read_disc(c.disc, lim);
    const GenusFingerprint fp = GenusCache::global().get(read_ideal(D, c.ideal), lim);
    const SigmaQuery q{fp, m, s};
    Handler h;
    Json& j = h.result;
    if (form == "def" || form == "all")
        j["def"] = sigma_def(q, lim);
    if (form == "decomp" || form == "all")
        j["decomp"] = sigma_decomp(q, lim);
    if (form == "euler" || form == "all")
        j["euler"] = sigma_euler(q, lim);
    j["vanishes"] = sigma_vanishes(fp, m);
    j["fingerprint"] = fingerprint_json(fp);
    if (form == "all") {
        const double d = j["def"].get<double>();
        const bool agree = verify::rel_close(d, j["decomp"].get<double>(), 1e-12) &&
                           verify::rel_close(d, j["euler"].get<double>(), 1e-12);
        j["agree"] = agree;
        h.code = agree ? ExitCode::ok : ExitCode::verification_failure;
    }
    return h;
}

struct SeriesArgs {
    std::int64_t m = 1;
    double s = 4.0;
    std::optional<std::int64_t> B;
    std::optional<double> tol;
    bool verify = false;
    bool oracle = false;
    bool residue = false;
};

inline Handler cmd_series(const Common& c, const SeriesArgs& a, const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    const Discriminant D = read_disc(c.disc, lim);
    const FracIdeal I = read_ideal(D, c.ideal);
    const std::int64_t B = a.B.value_or(cfg.truncation);
    const double tol = a.tol.value_or(cfg.tolerance);
    const GenusFingerprint fp = GenusCache::global().get(I, lim);
    Handler h;
    if (a.residue) {
        const SeriesEval r = residue_at_2(fp, a.m, B, lim);
        const double ex = residue_extrapolated(fp, a.m, B, lim);
        const bool pass = std::abs(ex - r.value) <= 0.01 * std::max(std::abs(r.value), 1e-300) ||
                          (r.value == 0.0 && std::abs(ex) <= 1e-12);
        h.result = Json{{"residue", series_json(r)}, {"extrapolated", ex}, {"pass", pass}};
        h.code = pass ? ExitCode::ok : ExitCode::verification_failure;
        return h;
    }
    const LhsMode mode = a.oracle ? LhsMode::oracle : LhsMode::formula;
    if (!a.verify) {
        h.result = Json{{"lhs", series_json(series_lhs(I, a.m, a.s, B, mode, lim))},
                        {"rhs", series_json(series_rhs(fp, a.m, a.s, B, lim))}};
        return h;
    }
    const TheoremReport rep = verify_theorem(I, a.m, a.s, B, tol, mode, lim);
    Json factors = Json::array();
    for (const auto& f : rep.factors)
        factors.push_back(Json{{"p", f.p},
                               {"direct", f.direct.value},
                               {"direct_tail_bound", f.direct.tail_bound},
                               {"closed", f.closed},
                               {"rhs", f.rhs},
                               {"agree", f.agree}});
    h.result = Json{{"lhs", series_json(rep.lhs)},
                    {"rhs", series_json(rep.rhs)},
                    {"difference", rep.difference},
                    {"tolerance", rep.tolerance},
                    {"factors", factors},
                    {"pass", rep.pass}};
    h.code = rep.pass ? ExitCode::ok : ExitCode::verification_failure;
    return h;
}

inline Handler cmd_genus(const Common& c, const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    const Discriminant D = read_disc(c.disc, lim);
    const FracIdeal I = read_ideal(D, c.ideal);
    const GenusFingerprint fp = GenusCache::global().get(I, lim);
    Handler h;
    h.result = Json{{"ideal", format_ideal(I)},
                    {"norm", rational_json(ideal_norm(I))},
                    {"coprime_to_D", coprime_to(I, D.value(), lim)},
                    {"fingerprint", fingerprint_json(fp)}};
    if (!coprime_to(I, D.value(), lim))
        h.result["representative"] = format_ideal(coprime_genus_representative(I, D.value(), lim));
    return h;
}

struct IdealArgs {
    std::string op = "norm";
    std::string other = "ok";
    std::int64_t p = 2;
    int k = 1;
    std::string elem;
};

inline Handler cmd_ideal(const Common& c, const IdealArgs& a, const CliConfig& cfg)
{
    const Limits lim = cfg.limits();
    const Discriminant D = read_disc(c.disc, lim);
    Handler h;
    Json& j = h.result;
    if (a.op == "primes-above") {
        Json list = Json::array();
        for (const auto& P : prime_above(D, a.p))
            list.push_back(Json{{"kind", to_string(P.kind)}, {"ideal", format_ideal(P.ideal)}});
        j = Json{{"p", a.p}, {"primes", list}};
        return h;
    }
    if (a.op == "principal") {
        if (a.elem.empty())
            throw CLI::ValidationError("--elem", "required for op principal");
        QuadElem x = QuadElem::rational(1);
        try {
            x = parse_elem(a.elem);
        } catch (const DomainError& e) {
            throw CLI::ValidationError("--elem", e.what());
        }
        j = Json{{"element", format_elem(x)}, {"ideal", format_ideal(principal_ideal(FieldElem{Rational(1), x}, D))}};
        return h;
    }
    const FracIdeal I = read_ideal(D, c.ideal);
    j["ideal"] = format_ideal(I);
    if (a.op == "norm") {
        j["norm"] = rational_json(ideal_norm(I));
    } else if (a.op == "mul") {
        const FracIdeal J = read_ideal(D, a.other);
        j["other"] = format_ideal(J);
        j["product"] = format_ideal(mul_ideals(I, J));
    } else if (a.op == "inverse") {
        j["inverse"] = format_ideal(inverse(I));
    } else if (a.op == "conjugate") {
        j["conjugate"] = format_ideal(conjugate(I));
    } else if (a.op == "valuation") {
        const auto primes = prime_above(D, a.p);
        if (a.k < 1 || a.k > static_cast<int>(primes.size()))
            throw CLI::ValidationError("--k", "prime index out of range");
        const auto& P = primes[static_cast<std::size_t>(a.k - 1)];
        j["prime"] = format_ideal(P.ideal);
        j["valuation"] = ideal_valuation(I, P);
    } else if (a.op == "zbasis") {
        const auto [x, y] = z_basis(I);
        j["scale"] = rational_json(I.scale());
        j["basis"] = Json::array({format_elem(x.elem), format_elem(y.elem)});
    } else {
        throw CLI::ValidationError("--op", "unknown op " + a.op);
    }
    return h;
}

inline Handler cmd_verify(const std::string& suite, const CliConfig& cfg, std::vector<verify::CriterionResult>& timing)
{
    std::vector<verify::Criterion> todo;
    if (suite == "all") {
        todo = verify::all_criteria();
    } else {
        for (const auto& [name, list] : verify::suites())
            if (name == suite)
                todo = list;
    }
    Json criteria = Json::array();
    bool pass = true;
    for (verify::Criterion c : todo) {
        const verify::CriterionResult r = c(cfg.limits());
        timing.push_back(r);
        pass = pass && r.pass;
        criteria.push_back(Json{{"id", r.id},
                                {"title", r.title},
                                {"pass", r.pass},
                                {"checks", r.checks},
                                {"failures", r.failures},
                                {"detail", r.detail}});
    }
    Handler h;
    h.result = Json{{"suite", suite}, {"criteria", criteria}, {"pass", pass}};
    h.code = pass ? ExitCode::ok : ExitCode::verification_failure;
    return h;
}

// ---------------------------------------------------------------------------

/// Parses argv (program name first), runs one subcommand and writes its result to out.
/// Diagnostics, help and --meta go to err.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"Representation numbers, Gauss sums and G-series of ideals in real quadratic fields"};
    app.name("quadrep");
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    std::string config_path;
    std::string output;
    std::int64_t max_b = 0;
    std::int64_t max_factor = 0;
    bool meta = false;
    app.add_option("--config", config_path, "key=value config file");
    auto* out_opt = app.add_option("--output", output, "json, csv or plain")
                        ->check(CLI::IsMember({"json", "csv", "plain"}));
    auto* maxb_opt = app.add_option("--max-b", max_b, "largest modulus for enumeration")->check(CLI::PositiveNumber);
    auto* maxf_opt =
        app.add_option("--max-factor", max_factor, "largest integer to factor")->check(CLI::PositiveNumber);
    app.add_flag("--meta", meta, "write run metadata to stderr");

    Common common;
    auto add_common = [&](CLI::App* sub, bool ideal) {
        sub->add_option("--disc", common.disc, "odd squarefree discriminant D = 1 mod 4")->required();
        if (ideal)
            sub->add_option("--ideal", common.ideal, "ok | prim:a,b | frac:num/den:a,b | prime:p,k");
    };

    std::int64_t m = 1;
    std::int64_t b = 1;
    std::string method = "all";
    auto* repnum = app.add_subcommand("repnum", "N_b(a, m) by enumeration, closed formula or Gauss sums");
    add_common(repnum, true);
    repnum->add_option("--m", m)->required();
    repnum->add_option("--b", b)->required();
    repnum->add_option("--method", method)->check(CLI::IsMember({"brute", "formula", "gauss-dft", "all"}));

    GaussArgs gargs;
    auto* gauss = app.add_subcommand("gauss", "Gauss sums of an ideal, classical and twisted sums");
    gauss->add_option("--kind", gargs.kind)->check(CLI::IsMember({"ideal", "classical", "twisted"}));
    gauss->add_option("--disc", common.disc);
    gauss->add_option("--ideal", common.ideal);
    gauss->add_option("--a", gargs.a);
    gauss->add_option("--b", gargs.b);
    gauss->add_option("--c", gargs.c);
    gauss->add_option("--p", gargs.p);
    gauss->add_option("--r", gargs.r);

    double s = 0.0;
    std::string form = "all";
    auto* sigma = app.add_subcommand("sigma", "generalized divisor sum sigma(a, m, s)");
    add_common(sigma, true);
    sigma->add_option("--m", m)->required();
    sigma->add_option("--s", s)->required();
    sigma->add_option("--form", form)->check(CLI::IsMember({"def", "decomp", "euler", "all"}));

    SeriesArgs sargs;
    auto* series = app.add_subcommand("series", "sum_b G^b(a, m, 0) b^-s and its closed form");
    add_common(series, true);
    series->add_option("--m", sargs.m)->required();
    series->add_option("--s", sargs.s);
    series->add_option("--B", sargs.B, "truncation point");
    series->add_option("--tol", sargs.tol, "relative tolerance for --verify");
    series->add_flag("--verify", sargs.verify, "compare both sides and every Euler factor for p <= 50");
    series->add_flag("--oracle", sargs.oracle, "count the terms b <= 60 by enumeration");
    series->add_flag("--residue", sargs.residue, "residue at s = 2 and its numerical limit");

    auto* genus = app.add_subcommand("genus", "genus fingerprint of an ideal");
    add_common(genus, true);

    IdealArgs iargs;
    auto* ideal = app.add_subcommand("ideal", "ideal arithmetic");
    add_common(ideal, true);
    ideal->add_option("--op", iargs.op)
        ->check(CLI::IsMember(
            {"norm", "mul", "inverse", "conjugate", "primes-above", "valuation", "zbasis", "principal"}));
    ideal->add_option("--other", iargs.other, "second factor for mul");
    ideal->add_option("--p", iargs.p, "prime for primes-above and valuation");
    ideal->add_option("--k", iargs.k, "which prime above p (1-based) for valuation");
    ideal->add_option("--elem", iargs.elem, "generator u+v*sqrtD/2 for principal");

    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"oracle", "gauss", "sigma", "theorem", "all"}));

    std::vector<const char*> cargv;
    for (const auto& a : argv)
        cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
        if (!config_path.empty())
            load_config_file(config_path, cfg);
        if (const char* env = std::getenv("QUADREP_MAX_B")) {
            try {
                cfg.max_enum_b = std::stoll(env);
            } catch (const std::logic_error&) {
                throw CLI::ValidationError("QUADREP_MAX_B", std::string("not an integer: ") + env);
            }
        }
        if (maxb_opt->count())
            cfg.max_enum_b = max_b;
        if (maxf_opt->count())
            cfg.max_factor_bound = max_factor;
        if (out_opt->count())
            cfg.output = output;
        cfg.validate();
        if (gauss->parsed() && gargs.kind == "ideal" && common.disc == 0)
            throw CLI::RequiredError("--disc");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage_error;
    }

    Handler h;
    std::vector<verify::CriterionResult> timing;
    try {
        if (repnum->parsed())
            h = cmd_repnum(common, m, b, method, cfg);
        else if (gauss->parsed())
            h = cmd_gauss(common, gargs, cfg);
        else if (sigma->parsed())
            h = cmd_sigma(common, m, s, form, cfg);
        else if (series->parsed())
            h = cmd_series(common, sargs, cfg);
        else if (genus->parsed())
            h = cmd_genus(common, cfg);
        else if (ideal->parsed())
            h = cmd_ideal(common, iargs, cfg);
        else
            h = cmd_verify(suite, cfg, timing);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun with --help for more information.\n";
        return ExitCode::usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::computation_error;
    }
    emit(h.result, cfg.output, out);

    if (meta) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        std::ostringstream ts;
        ts << std::put_time(std::gmtime(&tt), "%Y-%m-%dT%H:%M:%SZ");
        Json mj{{"timestamp", ts.str()},
                {"elapsed_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                {"max_enum_b", cfg.max_enum_b},
                {"max_factor_bound", cfg.max_factor_bound},
                {"exit_code", h.code}};
        if (!timing.empty()) {
            Json tj = Json::object();
            for (const auto& r : timing)
                tj[r.id] = r.seconds;
            mj["criterion_seconds"] = tj;
        }
        err << mj.dump() << '\n';
    }
    return h.code;
}

} // namespace quadrep::cli
