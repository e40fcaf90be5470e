// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "adelic/cli.hpp"
#include "adelic/local_factors.hpp"
#include "adelic/modular.hpp"
#include "adelic/mzv.hpp"
#include "adelic/ordering.hpp"
#include "adelic/theta.hpp"
#include "oracles.hpp"

using namespace adelic;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string &what, double value) {
        ok = ok && cond;
        detail << (detail.tellp() > 0 ? "; " : "") << what << '=' << value;
    }
};

Composition comp(std::initializer_list<double> xs) {
    Composition c;
    for (double x : xs)
        c.exponents.emplace_back(x);
    return c;
}

TruncationSpec target(double t) {
    TruncationSpec s;
    s.target_abs_error = t;
    return s;
}

Check zeta_values() {
    Check c;
    const double z2 = mzf_eval(comp({2}), target(8e-9)).value.real();
    const double z3 = mzf_eval(comp({3}), target(5e-9)).value.real();
    c.expect(std::abs(z2 - oracle::zeta(2.0).real()) <= 1e-8, "|zeta(2)-oracle|", std::abs(z2 - oracle::zeta(2.0).real()));
    c.expect(std::abs(z3 - oracle::zeta(3.0).real()) <= 1e-8, "|zeta(3)-oracle|", std::abs(z3 - oracle::zeta(3.0).real()));
    c.expect(std::abs(oracle::zeta(2.0).real() - 1.6449340668) < 1e-10, "oracle zeta(2)", oracle::zeta(2.0).real());
    return c;
}

Check euler_identity() {
    Check c;
    const auto a = mzf_eval(comp({1, 2}), target(9e-8)).value;
    const auto b = mzf_eval(comp({3}), target(5e-9)).value;
    c.expect(std::abs(a - b) <= 1e-7, "|zeta(1,2)-zeta(3)|", std::abs(a - b));
    return c;
}

Check iterated_integrals() {
    Check c;
    QuadratureSpec spec;
    spec.lower_cutoff = 1e-15;
    const auto a = kontsevich_eval(IteratedWord::parse("10"), spec).value;
    const auto b = kontsevich_eval(IteratedWord::parse("110"), spec).value;
    const double pi2 = oracle::pi * oracle::pi / 6;
    c.expect(std::abs(a - pi2) <= 1e-5, "|w1w0 - pi^2/6|", std::abs(a - pi2));
    c.expect(std::abs(b - oracle::zeta(3.0)) <= 1e-5, "|w1w1w0 - zeta(3)|", std::abs(b - oracle::zeta(3.0)));
    return c;
}

Check local_factors() {
    Check c;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(1.0, 4.0);
    double worst = 0;
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 5; ++i) {
            const double s1 = u(rng), s2 = u(rng);
            double brute = 0;
            for (int k2 = 40; k2 >= 1; --k2)
                for (int k1 = k2 - 1; k1 >= 0; --k1)
                    brute += std::pow(double(p), -k1 * s1 - k2 * s2);
            worst = std::max(worst, std::abs(iterated_local_factor(Prime(p), comp({s1, s2})) - brute));
        }
    }
    c.expect(worst <= 1e-10, "max |closed-brute|", worst);
    const double fixed = std::abs(iterated_local_factor(Prime(2), comp({2, 2})) - 16.0 / 45.0);
    c.expect(fixed <= 1e-12, "|I_2(2,2)-16/45|", fixed);
    return c;
}

Check finite_adelic() {
    Check c;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> inner(1.1, 3.0), outer(3.0, 5.0);
    std::uniform_int_distribution<int> depth(1, 3);
    double worst_ratio = 0;
    for (int i = 0; i < 10; ++i) {
        Composition x;
        const int d = depth(rng);
        for (int j = 0; j + 1 < d; ++j)
            x.exponents.emplace_back(inner(rng));
        x.exponents.emplace_back(outer(rng));
        const auto a = finite_adelic_mzf(x, target(1e-8));
        const auto b = mzf_eval(x, target(1e-8));
        worst_ratio = std::max(worst_ratio, std::abs(a.value - b.value) / (a.abs_error_estimate + b.abs_error_estimate));
    }
    c.expect(worst_ratio <= 1.0, "max residual/budget", worst_ratio);
    return c;
}

Check theta() {
    Check c;
    const auto spec = theta_default_spec();
    double worst = 0;
    for (double s1 : {3.0, 4.0, 6.0})
        for (double s2 : {3.0, 4.0, 6.0})
            worst = std::max(worst, completed_iterated_theta(s1, s2, spec).discrepancy());
    c.expect(worst <= 1e-5, "(a) max dual-path gap", worst);
    const auto r = completed_iterated_theta(4.0, 6.0, spec).primary.value;
    const auto t = completed_iterated_theta_tvar(4.0, 6.0, spec).value;
    c.expect(std::abs(t - 0.25 * r) <= 1e-5, "(b) |tvar - I/4|", std::abs(t - 0.25 * r));
    const auto q = completed_iterated_theta(6.0, 4.0, spec).primary.value;
    const auto z4 = completed_zeta_via_theta(4.0, spec).primary.value;
    const auto z6 = completed_zeta_via_theta(6.0, spec).primary.value;
    c.expect(std::abs(r + q - z4 * z6) <= 1e-5, "(c) shuffle residual", std::abs(r + q - z4 * z6));
    return c;
}

Check tau() {
    Check c;
    const auto d = delta_coefficients(1000);
    const auto literal = oracle::delta_literal(11);
    const long expected[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    int mismatches = 0;
    for (int n = 1; n <= 10; ++n)
        mismatches += (d.exact(n) != expected[n - 1]) + (literal[n - 1] != expected[n - 1]);
    c.expect(mismatches == 0, "tau mismatches", mismatches);
    c.expect(d.exact(6) == d.exact(2) * d.exact(3), "tau(6)-tau(2)tau(3)",
             static_cast<double>(d.exact(6) - d.exact(2) * d.exact(3)));
    return c;
}

Check modular() {
    Check c;
    const auto d = delta_coefficients(10000);
    const auto spec = modular_default_spec();
    const double g8 = completed_l(d, 8.0, spec).discrepancy();
    c.expect(g8 <= 1e-7, "Lambda(8) gap", g8);
    const double g79 = completed_double_l(d, d, 7.0, 9.0, spec).discrepancy();
    c.expect(g79 <= 1e-5, "Lambda(7,9) gap", g79);
    const TruncationSpec t{10000, 1e-7};
    const auto a = l_series(d, 9.0, t).value, b = l_series(d, 10.0, t).value;
    const auto x = double_l_series(d, d, 9.0, 10.0, t).value, y = double_l_series(d, d, 10.0, 9.0, t).value;
    double diag = 0; // Σ τ(n)² n^{-19}, summed directly
    for (std::size_t n = d.size(); n >= 1; --n)
        diag += d(n) * d(n) * std::pow(double(n), -19.0);
    const double res = std::abs(a * b - (x + y + diag));
    c.expect(res <= 1e-6, "stuffle residual", res);
    return c;
}

Check orderings() {
    Check c;
    int mismatches = 0, strict_mismatches = 0;
    for (int total = 2; total <= 7; ++total) {
        const auto everything = oracle::all_orderings(total);
        for (int a = 1; a < total; ++a) {
            const auto s1 = Ordering::chain(1, a), s2 = Ordering::chain(a + 1, total - a);
            const auto ia = s1.indices(), ib = s2.indices();
            std::size_t filtered = 0;
            for (const auto &o : everything)
                filtered += o.restriction(ia) == s1 && o.restriction(ib) == s2;
            mismatches += enumerate_compatible(s1, s2).size() != filtered;
            double binom = 1;
            for (int i = 1; i <= a; ++i)
                binom = binom * (total - a + i) / i;
            strict_mismatches += enumerate_strict_compatible(s1, s2).size() != static_cast<std::size_t>(binom);
        }
    }
    c.expect(mismatches == 0, "count mismatches", mismatches);
    c.expect(strict_mismatches == 0, "strict mismatches", strict_mismatches);
    c.expect(enumerate_compatible(Ordering::chain(1, 1), Ordering::chain(2, 1)).size() == 3, "(1,1)",
             enumerate_compatible(Ordering::chain(1, 1), Ordering::chain(2, 1)).size());
    c.expect(enumerate_compatible(Ordering::chain(1, 2), Ordering::chain(3, 1)).size() == 5, "(2,1)",
             enumerate_compatible(Ordering::chain(1, 2), Ordering::chain(3, 1)).size());
    return c;
}

Check verify_all() {
    Check c;
    std::ostringstream out, err;
    const int code = cli::run({"verify", "--suite", "all"}, out, err);
    c.expect(code == 0, "exit", code);
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        std::function<Check()> run;
    };
    const Criterion criteria[] = {
        {1, "zeta(2), zeta(3) by nested summation", 1, zeta_values},
        {2, "zeta(1,2) = zeta(3)", 5, euler_identity},
        {3, "iterated integrals of low weight", 30, iterated_integrals},
        {4, "iterated local factors", 1, local_factors},
        {5, "finite-adelic orbit sums", 10, finite_adelic},
        {6, "completed iterated theta integrals", 60, theta},
        {7, "tau coefficients and Hecke", 1, tau},
        {8, "completed modular L-functions and stuffle", 120, modular},
        {9, "compatible ordering counts", 1, orderings},
        {10, "verify all", 300, verify_all},
    };
    int failures = 0;
    for (const auto &cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception &e) {
            result.ok = false;
            result.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < cr.budget_s;
        const bool pass = result.ok && in_time;
        failures += !pass;
        std::printf("criterion %2d %-45s %s  %.2fs/%gs  %s\n", cr.id, cr.name, pass ? "PASS" : "FAIL", secs,
                    cr.budget_s, result.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
