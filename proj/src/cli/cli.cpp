#include "adelic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adelic/errors.hpp"
#include "adelic/local_factors.hpp"
#include "adelic/modular.hpp"
#include "adelic/mzv.hpp"
#include "adelic/ordering.hpp"
#include "adelic/theta.hpp"
#include "adelic/verify.hpp"

namespace adelic::cli {

using nlohmann::json;

namespace {

struct Knobs {
    std::optional<double> target;
    std::optional<std::int64_t> max_terms;
    std::optional<int> levels;
    bool pretty = false;

    TruncationSpec trunc() const {
        TruncationSpec t;
        if (target)
            t.target_abs_error = *target;
        if (max_terms)
            t.max_outer_index = *max_terms;
        return t;
    }

    QuadratureSpec quad(QuadratureSpec base) const {
        if (target)
            base.target_abs_error = *target;
        if (levels)
            base.levels = *levels;
        return base;
    }
};

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void require_finite(const EvaluationResult &r) {
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()) || !std::isfinite(r.abs_error_estimate))
        throw NonConvergence("evaluation produced a non-finite value");
}

json result_json(const EvaluationResult &r) {
    require_finite(r);
    return {{"value", complex_json(r.value)},
            {"abs_error_estimate", r.abs_error_estimate},
            {"method", std::string(to_string(r.method))},
            {"terms_or_nodes_used", r.terms_or_nodes_used}};
}

json dual_json(const DualPathResult &d) {
    json doc = result_json(d.primary);
    doc["oracle"] = result_json(d.oracle);
    doc["discrepancy"] = d.discrepancy();
    return doc;
}

json report_json(const IdentityReport &r) {
    return {{"identity", r.identity},       {"lhs", complex_json(r.lhs)},
            {"rhs", complex_json(r.rhs)},   {"residual", r.residual},
            {"tolerance", r.tolerance},     {"error_budget", r.error_budget},
            {"pass", r.pass}};
}

Composition composition_from(const std::string &text) {
    return Composition{parse_complex_list(text)};
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path);
    out << text << '\n';
}

std::string render_table(const json &rows) {
    std::ostringstream os;
    std::size_t width = 8;
    for (const auto &r : rows)
        width = std::max(width, r["identity"].get<std::string>().size());
    os << std::left << std::setw(static_cast<int>(width)) << "identity"
       << "  result  residual     tolerance\n";
    for (const auto &r : rows) {
        os << std::left << std::setw(static_cast<int>(width)) << r["identity"].get<std::string>() << "  "
           << (r["pass"].get<bool>() ? "pass  " : "FAIL  ") << "  " << std::setw(11) << std::setprecision(3)
           << r["residual"].get<double>() << "  " << r["tolerance"].get<double>() << '\n';
    }
    return os.str();
}

int emit_error(std::ostream &err, const std::string &kind, const std::string &detail, int code) {
    err << json{{"error", {{"kind", kind}, {"detail", detail}}}}.dump() << '\n';
    return code;
}

} // namespace

std::complex<double> parse_complex(const std::string &raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            text += c;
    auto fail = [&]() -> std::complex<double> {
        throw InvalidArgument("cannot parse complex number '" + raw + "' (expected re[+im i])");
    };
    auto number = [&](const std::string &s, double &v) {
        if (s.empty())
            return false;
        std::size_t used = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            return false;
        }
        return used == s.size() && std::isfinite(v);
    };
    if (text.empty())
        return fail();
    double re = 0, im = 0;
    if (text.back() != 'i') {
        if (!number(text, re))
            return fail();
        return {re, 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // The imaginary part starts at the last sign that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        if (!number(body, im))
            return fail();
        return {0.0, im};
    }
    std::string im_text = body.substr(split);
    if (im_text == "+" || im_text == "-")
        im_text += "1";
    if (!number(body.substr(0, split), re) || !number(im_text, im))
        return fail();
    return {re, im};
}

std::vector<std::complex<double>> parse_complex_list(const std::string &text) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_complex(item));
    if (out.empty())
        throw InvalidArgument("empty exponent list");
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multiple zeta functions, local factors, theta and modular L-functions", "adelic"};
    app.require_subcommand(1);
    app.fallthrough();

    Knobs knobs;
    double target = 0;
    std::int64_t max_terms = 0;
    int levels = 0;
    auto *o_target = app.add_option("--target-error", target, "absolute error target")
                         ->envname("ADELIC_TARGET_ERROR")
                         ->check(CLI::PositiveNumber);
    auto *o_terms = app.add_option("--max-terms", max_terms, "cap on the outer summation index")
                        ->envname("ADELIC_MAX_TERMS")
                        ->check(CLI::Range(std::int64_t{2}, std::int64_t{4'000'000'000}));
    auto *o_levels = app.add_option("--quad-levels", levels, "maximum tanh-sinh refinement level")
                         ->envname("ADELIC_QUAD_LEVELS")
                         ->check(CLI::Range(1, 20));
    app.add_flag("--pretty", knobs.pretty, "indented output; verify prints a table");

    json params = json::object();
    std::function<json()> action;

    // Options are kept as strings and parsed by the handlers so that every
    // malformed value surfaces as InvalidArgument.
    std::map<std::string, std::string> opt;
    auto text_option = [&](CLI::App *sub, const std::string &name, const std::string &help) {
        return sub->add_option("--" + name, opt[name], help);
    };
    auto has = [&](const std::string &name) { return !opt[name].empty(); };
    auto number_of = [&](const std::string &name) {
        if (opt[name].empty())
            throw InvalidArgument("missing --" + name);
        const Complex z = parse_complex(opt.at(name));
        params[name] = opt.at(name);
        return z;
    };

    auto *mzv = app.add_subcommand("mzv", "zeta(s1,...,sd) by nested summation");
    text_option(mzv, "exponents", "comma-separated exponents, e.g. 1,2")->required();
    mzv->callback([&] {
        action = [&] {
            params["exponents"] = opt["exponents"];
            return result_json(mzf_eval(composition_from(opt["exponents"]), knobs.trunc()));
        };
    });

    auto *kont = app.add_subcommand("kontsevich", "iterated integral of a word in dx/(1-x), dx/x");
    text_option(kont, "word", "letters 1 = dx/(1-x), 0 = dx/x, e.g. 110");
    text_option(kont, "composition", "positive integers k1,...,kd with kd > 1");
    text_option(kont, "lower-cutoff", "width of the last panel at x = 1 (default 1e-15)");
    kont->callback([&] {
        action = [&] {
            if (has("word") == has("composition"))
                throw InvalidArgument("give exactly one of --word and --composition");
            IteratedWord word;
            if (has("word")) {
                word = IteratedWord::parse(opt["word"]);
            } else {
                IntegerComposition k;
                for (Complex z : parse_complex_list(opt["composition"])) {
                    if (z.imag() != 0 || z.real() != std::round(z.real()))
                        throw InvalidComposition("composition parts must be integers");
                    k.parts.push_back(static_cast<int>(z.real()));
                }
                word = composition_to_word(k);
            }
            QuadratureSpec spec;
            spec.lower_cutoff = has("lower-cutoff") ? number_of("lower-cutoff").real() : 1e-15;
            params["word"] = word.to_string();
            return result_json(kontsevich_eval(word, knobs.quad(spec)));
        };
    });

    auto *local = app.add_subcommand("local", "iterated p-adic local factor");
    text_option(local, "p", "prime")->required();
    text_option(local, "exponents", "comma-separated exponents")->required();
    local->callback([&] {
        action = [&] {
            const Complex pz = number_of("p");
            if (pz.imag() != 0 || pz.real() != std::round(pz.real()))
                throw InvalidArgument("p must be an integer");
            params["exponents"] = opt["exponents"];
            const Prime p(static_cast<std::int64_t>(pz.real()));
            EvaluationResult r;
            r.value = iterated_local_factor(p, composition_from(opt["exponents"]));
            r.abs_error_estimate = 1e-15 * std::abs(r.value);
            r.method = Method::closed_form;
            return result_json(r);
        };
    });

    auto *arch = app.add_subcommand("archimedean", "local factor at the real place and its iteration");
    text_option(arch, "s", "single argument");
    text_option(arch, "s1", "first argument of the iterated integral");
    text_option(arch, "s2", "second argument of the iterated integral");
    arch->callback([&] {
        action = [&] {
            if (has("s")) {
                EvaluationResult r;
                r.value = archimedean_factor(number_of("s"));
                r.abs_error_estimate = 1e-13 * std::abs(r.value);
                r.method = Method::closed_form;
                return result_json(r);
            }
            if (!has("s1") || !has("s2"))
                throw InvalidArgument("give --s, or both --s1 and --s2");
            return result_json(iterated_archimedean(number_of("s1"), number_of("s2"), knobs.quad(QuadratureSpec{})));
        };
    });

    auto *theta = app.add_subcommand("theta", "finite-adelic orbit sums and completed theta integrals");
    text_option(theta, "exponents", "finite-adelic multiple zeta at these exponents");
    text_option(theta, "s", "completed zeta as a theta integral");
    text_option(theta, "s1", "first argument of the iterated theta integral");
    text_option(theta, "s2", "second argument of the iterated theta integral");
    text_option(theta, "variable", "r (theta(ir) variable) or t (idele norm, r = t^2)");
    theta->callback([&] {
        action = [&]() -> json {
            const std::string var = has("variable") ? opt["variable"] : "r";
            if (var != "r" && var != "t")
                throw InvalidArgument("--variable must be r or t");
            params["variable"] = var;
            const auto spec = knobs.quad(theta_default_spec());
            if (has("exponents")) {
                params["exponents"] = opt["exponents"];
                return result_json(finite_adelic_mzf(composition_from(opt["exponents"]), knobs.trunc()));
            }
            if (has("s"))
                return dual_json(var == "r" ? completed_zeta_via_theta(number_of("s"), spec)
                                            : completed_zeta_tvar(number_of("s"), spec));
            if (!has("s1") || !has("s2"))
                throw InvalidArgument("give --exponents, --s, or both --s1 and --s2");
            const Complex s1 = number_of("s1"), s2 = number_of("s2");
            if (var == "t")
                return result_json(completed_iterated_theta_tvar(s1, s2, spec));
            return dual_json(completed_iterated_theta(s1, s2, spec));
        };
    });

    auto *mod = app.add_subcommand("modular", "L-functions of level-one cusp forms");
    text_option(mod, "form", "delta (default), delta-e4, delta-e6");
    text_option(mod, "form2", "second form for double L-functions (default: same as --form)");
    text_option(mod, "coeffs", "number of coefficients to compute (default 10000)");
    text_option(mod, "coeffs-in", "read coefficients of the first form from a JSON file");
    text_option(mod, "coeffs-out", "write the coefficients of the first form to a JSON file");
    text_option(mod, "quantity", "l, lambda, double-l, double-lambda, diagonal (default l)");
    text_option(mod, "normalization", "standard (default) or doubled");
    text_option(mod, "s", "argument of single L-functions");
    text_option(mod, "s1", "first argument of double L-functions");
    text_option(mod, "s2", "second argument of double L-functions");
    mod->callback([&] {
        action = [&]() -> json {
            std::size_t N = 10000;
            if (has("coeffs")) {
                const Complex z = number_of("coeffs");
                if (z.imag() != 0 || z.real() < 1 || z.real() > 1e6 || z.real() != std::round(z.real()))
                    throw InvalidArgument("--coeffs must be an integer in [1, 1000000]");
                N = static_cast<std::size_t>(z.real());
            }
            auto build = [&](const std::string &name) {
                if (name == "delta")
                    return delta_coefficients(N);
                if (name == "delta-e4")
                    return delta_times_eisenstein(4, N);
                if (name == "delta-e6")
                    return delta_times_eisenstein(6, N);
                throw InvalidArgument("unknown form '" + name + "'");
            };
            const std::string form = has("form") ? opt["form"] : "delta";
            auto f = has("coeffs-in") ? coefficients_from_json(read_file(opt["coeffs-in"])) : build(form);
            params["form"] = has("coeffs-in") ? f.label() : form;
            if (has("coeffs-out")) {
                write_file(opt["coeffs-out"], coefficients_to_json(f));
                params["coeffs-out"] = opt["coeffs-out"];
                if (!has("s") && !has("s1"))
                    return {{"label", f.label()}, {"weight", f.weight()}, {"coefficients", f.size()}};
            }
            const auto g = has("form2") ? build(opt["form2"]) : f;
            const std::string q = has("quantity") ? opt["quantity"] : "l";
            params["quantity"] = q;
            const std::string nname = has("normalization") ? opt["normalization"] : "standard";
            if (nname != "standard" && nname != "doubled")
                throw InvalidArgument("--normalization must be standard or doubled");
            const auto norm = nname == "doubled" ? CuspNormalization::adelic_doubled : CuspNormalization::standard;
            const auto spec = knobs.quad(modular_default_spec());
            if (q == "l")
                return result_json(l_series(f, number_of("s"), knobs.trunc()));
            if (q == "lambda")
                return dual_json(completed_l(f, number_of("s"), spec, norm));
            if (q == "diagonal")
                return result_json(diagonal_l_series(f, g, number_of("s"), knobs.trunc()));
            if (q == "double-l")
                return result_json(double_l_series(f, g, number_of("s1"), number_of("s2"), knobs.trunc()));
            if (q == "double-lambda")
                return dual_json(completed_double_l(f, g, number_of("s1"), number_of("s2"), spec, norm));
            throw InvalidArgument("unknown quantity '" + q + "'");
        };
    });

    auto *stuffle = app.add_subcommand("stuffle", "quasi-shuffle expansion of a product of two series");
    text_option(stuffle, "left", "exponents of the first factor");
    text_option(stuffle, "right", "exponents of the second factor");
    text_option(stuffle, "sigma1", "ordering such as (1(23)) to enumerate compatible orderings");
    text_option(stuffle, "sigma2", "second ordering for the enumeration");
    text_option(stuffle, "tolerance", "tolerance of the numeric check (default 1e-8)");
    stuffle->callback([&] {
        action = [&]() -> json {
            if (has("sigma1") || has("sigma2")) {
                const auto a = Ordering::parse(opt["sigma1"]), b = Ordering::parse(opt["sigma2"]);
                params["sigma1"] = a.to_string();
                params["sigma2"] = b.to_string();
                json list = json::array();
                for (const auto &o : enumerate_compatible(a, b))
                    list.push_back(o.to_string());
                return {{"orderings", list}, {"count", list.size()}};
            }
            if (!has("left") || !has("right"))
                throw InvalidArgument("give --left and --right, or --sigma1 and --sigma2");
            params["left"] = opt["left"];
            params["right"] = opt["right"];
            const auto a = composition_from(opt["left"]), b = composition_from(opt["right"]);
            json terms = json::array();
            for (const auto &t : stuffle_expand(a, b))
                terms.push_back({{"exponents", format_composition(t.composition)},
                                 {"ordering", t.ordering.to_string()},
                                 {"coefficient", t.coefficient}});
            const double tol = has("tolerance") ? number_of("tolerance").real() : 1e-8;
            const auto trunc = knobs.trunc();
            const auto rep = verify_stuffle_numeric(a, b, [&](const Composition &c) { return mzf_eval(c, trunc); }, tol);
            json doc = report_json(rep);
            doc["value"] = complex_json(rep.rhs);
            doc["terms"] = terms;
            return doc;
        };
    });

    auto *verify = app.add_subcommand("verify", "run cross-path identity suites");
    text_option(verify, "suite", "all (default), " + [] {
        std::string s;
        for (const auto &n : suite_names())
            if (n != "all")
                s += (s.empty() ? "" : ", ") + n;
        return s;
    }());
    text_option(verify, "inject-fault", "")->group("");
    bool verify_failed = false;
    verify->callback([&] {
        action = [&]() -> json {
            VerifyOptions vo;
            vo.target_error = knobs.target;
            vo.max_terms = knobs.max_terms;
            vo.quad_levels = knobs.levels;
            vo.fault = opt["inject-fault"];
            if (!vo.fault.empty() && vo.fault != "tau2")
                throw InvalidArgument("unknown fault '" + vo.fault + "'");
            const std::string suite = has("suite") ? opt["suite"] : "all";
            params["suite"] = suite;
            json rows = json::array();
            for (const auto &r : run_suite(suite, vo)) {
                rows.push_back(report_json(r));
                verify_failed = verify_failed || !r.pass;
            }
            return rows;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        return emit_error(err, "UsageError", e.what(), 2);
    }

    if (o_target->count() > 0)
        knobs.target = target;
    if (o_terms->count() > 0)
        knobs.max_terms = max_terms;
    if (o_levels->count() > 0)
        knobs.levels = levels;

    const auto start = std::chrono::steady_clock::now();
    json body;
    try {
        body = action();
    } catch (const DomainError &e) {
        return emit_error(err, e.kind(), e.what(), 2);
    } catch (const NumericError &e) {
        return emit_error(err, e.kind(), e.what(), 3);
    } catch (const std::exception &e) {
        return emit_error(err, "InternalError", e.what(), 3);
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (knobs.target)
        params["target_error"] = *knobs.target;
    if (knobs.max_terms)
        params["max_terms"] = *knobs.max_terms;
    if (knobs.levels)
        params["quad_levels"] = *knobs.levels;

    const bool is_verify = body.is_array();
    if (is_verify && knobs.pretty) {
        out << render_table(body);
        return verify_failed ? 1 : 0;
    }
    if (is_verify) {
        out << body.dump() << '\n';
        return verify_failed ? 1 : 0;
    }
    json doc = body;
    doc["params"] = params;
    doc["elapsed_ms"] = elapsed;
    out << (knobs.pretty ? doc.dump(2) : doc.dump()) << '\n';
    if (doc.contains("pass") && !doc["pass"].get<bool>())
        return 1;
    return 0;
}

} // namespace adelic::cli
