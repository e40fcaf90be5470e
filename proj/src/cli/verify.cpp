#include "adelic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "adelic/errors.hpp"
#include "adelic/local_factors.hpp"
#include "adelic/modular.hpp"
#include "adelic/mzv.hpp"
#include "adelic/theta.hpp"

namespace adelic {

namespace {

using Rows = std::vector<IdentityReport>;

struct Context {
    const VerifyOptions &opts;

    double tol(double t) const { return opts.target_error ? std::max(t, *opts.target_error) : t; }

    TruncationSpec trunc(double target) const {
        TruncationSpec t;
        if (opts.max_terms)
            t.max_outer_index = *opts.max_terms;
        t.target_abs_error = opts.target_error ? *opts.target_error : target;
        return t;
    }

    QuadratureSpec quad(QuadratureSpec base) const {
        if (opts.quad_levels)
            base.levels = *opts.quad_levels;
        if (opts.target_error)
            base.target_abs_error = std::max(base.target_abs_error, *opts.target_error);
        return base;
    }
};

IdentityReport make_row(std::string identity, Complex lhs, Complex rhs, double tol, double budget = 0) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.tolerance = tol;
    r.error_budget = budget;
    r.pass = std::isfinite(r.residual) && r.residual <= tol + budget;
    return r;
}

IdentityReport dual_row(const std::string &identity, const DualPathResult &d, double tol) {
    return make_row(identity, d.primary.value, d.oracle.value, tol);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

Composition comp(std::initializer_list<double> xs) {
    Composition c;
    for (double x : xs)
        c.exponents.emplace_back(x);
    return c;
}

void zeta_rows(const Context &ctx, Rows &rows) {
    const auto z2 = mzf_eval(comp({2}), ctx.trunc(8e-9));
    rows.push_back(make_row("zeta(2) series = reference", z2.value, riemann_zeta(2.0), ctx.tol(1e-8)));
    const auto z3 = mzf_eval(comp({3}), ctx.trunc(5e-9));
    rows.push_back(make_row("zeta(3) series = reference", z3.value, riemann_zeta(3.0), ctx.tol(1e-8)));
    const auto z12 = mzf_eval(comp({1, 2}), ctx.trunc(9e-8));
    rows.push_back(make_row("zeta(1,2) = zeta(3)", z12.value, z3.value, ctx.tol(1e-7)));
}

void kontsevich_rows(const Context &ctx, Rows &rows) {
    QuadratureSpec spec;
    spec.lower_cutoff = 1e-15;
    spec = ctx.quad(spec);
    const std::pair<const char *, double> cases[] = {{"10", 2}, {"110", 3}, {"100", 3}};
    for (const auto &[word, s] : cases) {
        const auto r = kontsevich_eval(IteratedWord::parse(word), spec);
        rows.push_back(make_row(std::string("iterated integral ") + word + " = zeta(" + fmt(s) + ")", r.value,
                                riemann_zeta(s), ctx.tol(1e-5)));
    }
}

void local_rows(const Context &ctx, Rows &rows) {
    rows.push_back(make_row("I_2(2,2) = 16/45", iterated_local_factor(Prime(2), comp({2, 2})), 16.0 / 45.0,
                            ctx.tol(1e-12)));
    std::mt19937 rng(1101);
    std::uniform_real_distribution<double> u(1.0, 4.0);
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 5; ++i) {
            const double s1 = u(rng), s2 = u(rng);
            CompensatedSum brute;
            for (int k2 = 1; k2 <= 40; ++k2)
                for (int k1 = 0; k1 < k2; ++k1)
                    brute.add(std::pow(p, -k1 * s1 - k2 * s2));
            rows.push_back(make_row("I_" + std::to_string(p) + "(" + fmt(s1) + "," + fmt(s2) +
                                        ") closed form = brute force",
                                    iterated_local_factor(Prime(p), comp({s1, s2})), brute.value(),
                                    ctx.tol(1e-10)));
        }
    }
    rows.push_back(make_row("Haar decomposition residual p=2, kmax=30", haar_consistency(Prime(2), 30), 0.0,
                            std::ldexp(1.0, -30)));
}

void adelic_rows(const Context &ctx, Rows &rows) {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> inner(1.2, 3.0), outer(3.0, 4.5);
    std::uniform_int_distribution<int> depth(1, 3);
    for (int i = 0; i < 10; ++i) {
        Composition c;
        const int d = depth(rng);
        for (int j = 0; j + 1 < d; ++j)
            c.exponents.emplace_back(inner(rng));
        c.exponents.emplace_back(outer(rng));
        const auto t = ctx.trunc(1e-8);
        const auto a = finite_adelic_mzf(c, t);
        const auto b = mzf_eval(c, t);
        rows.push_back(make_row("finite-adelic orbit sum = series, s=" + format_composition(c), a.value, b.value,
                                a.abs_error_estimate + b.abs_error_estimate));
    }
}

void theta_rows(const Context &ctx, Rows &rows) {
    const auto spec = ctx.quad(theta_default_spec());
    for (double s : {2.0, 4.0, 6.0})
        rows.push_back(dual_row("completed zeta via theta, s=" + fmt(s), completed_zeta_via_theta(s, spec),
                                ctx.tol(1e-8)));
    for (double s1 : {3.0, 4.0, 6.0})
        for (double s2 : {3.0, 4.0, 6.0})
            rows.push_back(dual_row("iterated theta quadrature = incomplete-gamma series, s=(" + fmt(s1) + "," +
                                        fmt(s2) + ")",
                                    completed_iterated_theta(s1, s2, spec), ctx.tol(1e-5)));
    const auto r = completed_iterated_theta(4.0, 6.0, spec);
    const auto t = completed_iterated_theta_tvar(4.0, 6.0, spec);
    rows.push_back(make_row("t-variable iterated theta = I_theta/4, s=(4,6)", t.value, 0.25 * r.primary.value,
                            ctx.tol(1e-5)));
}

FourierCoefficients delta_for(const Context &ctx, std::size_t N) {
    auto d = delta_coefficients(N);
    if (ctx.opts.fault != "tau2")
        return d;
    std::vector<BigInt> c;
    for (std::size_t n = 1; n <= d.size(); ++n)
        c.push_back(d.exact(n));
    c[1] += 1;
    return FourierCoefficients(12, std::move(c), "Delta(faulted)");
}

void l_stuffle_row(const Context &ctx, const FourierCoefficients &d, Rows &rows) {
    const auto t = ctx.trunc(1e-7);
    const auto a = l_series(d, 9.0, t), b = l_series(d, 10.0, t);
    const auto x = double_l_series(d, d, 9.0, 10.0, t), y = double_l_series(d, d, 10.0, 9.0, t);
    const auto z = diagonal_l_series(d, d, 19.0, t);
    const double budget = std::abs(a.value) * b.abs_error_estimate + std::abs(b.value) * a.abs_error_estimate +
                          x.abs_error_estimate + y.abs_error_estimate + z.abs_error_estimate;
    rows.push_back(make_row("L(D,9) L(D,10) = L(D,D,9,10) + L(D,D,10,9) + sum tau(n)^2 n^-19", a.value * b.value,
                            x.value + y.value + z.value, ctx.tol(1e-6), budget));
}

IdentityReport lambda_shuffle_row(const Context &ctx, const FourierCoefficients &d) {
    const auto spec = ctx.quad(modular_default_spec());
    return verify_shuffle_archimedean(
        7.0, 9.0, [&](Complex s) { return completed_l_integral(d, s, spec); },
        [&](Complex s1, Complex s2) { return completed_double_l(d, d, s1, s2, spec).primary; }, ctx.tol(1e-5));
}

void modular_rows(const Context &ctx, Rows &rows) {
    const auto small = delta_for(ctx, 1000);
    const long expected[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    double worst = 0;
    for (int n = 1; n <= 10; ++n)
        worst = std::max(worst, std::abs(small(n) - static_cast<double>(expected[n - 1])));
    rows.push_back(make_row("tau(1..10) from the eta product (max deviation)", worst, 0.0, 0.0));
    rows.push_back(make_row("tau(6) = tau(2) tau(3)", small(6), small(2) * small(3), 0.0));
    rows.push_back(make_row("tau(10) = tau(2) tau(5)", small(10), small(2) * small(5), 0.0));

    const auto d = delta_for(ctx, 10000);
    const auto spec = ctx.quad(modular_default_spec());
    rows.push_back(dual_row("Lambda(D,8) quadrature = (2pi)^-s Gamma(s) L(D,s)", completed_l(d, 8.0, spec),
                            ctx.tol(1e-7)));
    rows.push_back(dual_row("Lambda(D,D,7,9) quadrature = incomplete-gamma series",
                            completed_double_l(d, d, 7.0, 9.0, spec), ctx.tol(1e-5)));
    QuadratureSpec direct = spec;
    direct.lower_cutoff = 0.08;
    rows.push_back(make_row("Lambda(D,7) = Lambda(D,5) by direct summation",
                            completed_l_integral(d, 7.0, direct, SmallT::direct).value,
                            completed_l_integral(d, 5.0, direct, SmallT::direct).value, ctx.tol(1e-6)));
    l_stuffle_row(ctx, d, rows);
    auto shuffle = lambda_shuffle_row(ctx, d);
    shuffle.identity = "Lambda(D,7) Lambda(D,9) = Lambda(D,D,7,9) + Lambda(D,D,9,7)";
    rows.push_back(shuffle);
}

// All ordered set partitions of {1..n}, by assigning each index a block
// position and keeping the assignments whose positions form 0..m-1.
std::vector<Ordering> all_orderings(int n) {
    std::vector<Ordering> out;
    std::vector<int> label(n, 0);
    for (;;) {
        const int m = *std::max_element(label.begin(), label.end()) + 1;
        std::vector<std::vector<int>> blocks(m);
        for (int i = 0; i < n; ++i)
            blocks[label[i]].push_back(i + 1);
        if (std::all_of(blocks.begin(), blocks.end(), [](const auto &b) { return !b.empty(); }))
            out.emplace_back(std::move(blocks));
        int i = 0;
        while (i < n && ++label[i] == n)
            label[i++] = 0;
        if (i == n)
            return out;
    }
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

void ordering_rows(const Context &, Rows &rows) {
    for (int total = 2; total <= 7; ++total) {
        const auto everything = all_orderings(total);
        for (int a = 1; a < total; ++a) {
            const int b = total - a;
            const auto s1 = Ordering::chain(1, a), s2 = Ordering::chain(a + 1, b);
            std::vector<int> left(a), right(b);
            for (int i = 0; i < a; ++i)
                left[i] = i + 1;
            for (int i = 0; i < b; ++i)
                right[i] = a + 1 + i;
            const auto brute = std::count_if(everything.begin(), everything.end(), [&](const Ordering &o) {
                return o.restriction(left) == s1 && o.restriction(right) == s2;
            });
            const auto tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            rows.push_back(make_row("compatible orderings of chains " + tag + " = brute force",
                                    static_cast<double>(enumerate_compatible(s1, s2).size()),
                                    static_cast<double>(brute), 0.0));
            rows.push_back(make_row("strict interleavings of chains " + tag + " = binomial",
                                    static_cast<double>(enumerate_strict_compatible(s1, s2).size()),
                                    binomial(a + b, a), 0.0));
        }
    }
}

void stuffle_rows(const Context &ctx, Rows &rows) {
    std::map<std::string, EvaluationResult> cache;
    const auto t = ctx.trunc(1e-8);
    SeriesEvaluator eval = [&](const Composition &c) {
        const auto key = format_composition(c);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, mzf_eval(c, t)).first;
        return it->second;
    };
    rows.push_back(verify_stuffle_numeric(comp({2}), comp({3}), eval, ctx.tol(1e-8)));
    rows.push_back(verify_stuffle_numeric(comp({2}), comp({2}), eval, ctx.tol(1e-8)));
    l_stuffle_row(ctx, delta_for(ctx, 10000), rows);
}

void shuffle_rows(const Context &ctx, Rows &rows) {
    const auto spec = ctx.quad(theta_default_spec());
    auto single = [&](Complex s) { return completed_zeta_via_theta(s, spec).primary; };
    auto iterated = [&](Complex s1, Complex s2) { return completed_iterated_theta(s1, s2, spec).primary; };
    auto r = verify_shuffle_archimedean(4.0, 6.0, single, iterated, ctx.tol(1e-5));
    r.identity = "theta: " + r.identity;
    rows.push_back(r);
    r = verify_shuffle_archimedean(4.0, 4.0, single, iterated, ctx.tol(1e-5));
    r.identity = "theta: " + r.identity;
    rows.push_back(r);
    rows.push_back(lambda_shuffle_row(ctx, delta_for(ctx, 10000)));
    rows.back().identity = "Lambda(D): " + rows.back().identity;
}

using SuiteFn = void (*)(const Context &, Rows &);

const std::vector<std::pair<std::string, SuiteFn>> &suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"zeta", zeta_rows},         {"kontsevich", kontsevich_rows}, {"local", local_rows},
        {"adelic", adelic_rows},     {"theta", theta_rows},           {"modular", modular_rows},
        {"orderings", ordering_rows}, {"stuffle-basic", stuffle_rows}, {"shuffle", shuffle_rows},
    };
    return table;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names{"all"};
    for (const auto &[name, fn] : suites())
        names.push_back(name);
    return names;
}

std::vector<IdentityReport> run_suite(const std::string &name, const VerifyOptions &opts) {
    const Context ctx{opts};
    Rows rows;
    bool found = false;
    for (const auto &[suite, fn] : suites()) {
        if (name == "all" || name == suite) {
            fn(ctx, rows);
            found = true;
        }
    }
    if (!found) {
        std::string known;
        for (const auto &n : suite_names())
            known += (known.empty() ? "" : ", ") + n;
        throw InvalidArgument("unknown suite '" + name + "' (known: " + known + ")");
    }
    return rows;
}

} // namespace adelic
