#include "adelic/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

constexpr double pi = std::numbers::pi;

// θ(ir) - 1 <= small_r_constant * r^{-1/2} for every r > 0 (θ(i) - 1 < 0.0865).
constexpr double small_r_constant = 1.09;

// θ(ir) - 1 <= large_r_constant(H) * e^{-πr} for r >= H.
double large_r_constant(double H) { return 2.0 / (1.0 - std::exp(-3.0 * pi * H)); }

double real_upper_gamma(double a, double x) { return upper_incomplete_gamma(Complex(a, 0), x).real(); }

// ∫_0^∞ |θ(ir) - 1| r^{σ/2 - 1} dr = 2 π^{-σ/2} Γ(σ/2) ζ(σ), σ > 1.
double theta_mellin_abs(double sigma) {
    return 2.0 * std::pow(pi, -0.5 * sigma) * std::tgamma(0.5 * sigma) *
           riemann_zeta(Complex(sigma, 0)).real();
}

// ∫_0^ε |θ(ir) - 1| r^{σ/2 - 1} dr
double theta_low_tail(double sigma, double eps) {
    const double c = 0.5 * (sigma - 1.0);
    return small_r_constant * std::pow(eps, c) / c;
}

// ∫_H^∞ |θ(ir) - 1| r^{σ/2 - 1} dr
double theta_high_tail(double sigma, double H) {
    return large_r_constant(H) * std::pow(pi, -0.5 * sigma) * real_upper_gamma(0.5 * sigma, pi * H);
}

Complex rpow(double r, Complex a) { return std::exp(a * std::log(r)); }

void require_above_one(Complex s, const char *what) {
    if (!(s.real() > 1.0)) {
        std::ostringstream msg;
        msg << what << ": Re s = " << s.real() << " must exceed 1";
        throw DivergenceError(msg.str());
    }
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return primes;
}

// d^×x-measure of p^k Z_p^×: p/(p-1) · (additive measure p^{-k}(p-1)/p) / |p^k|_p.
double orbit_measure(double p, int k) {
    const double norm = std::pow(p, -k);
    return p / (p - 1.0) * (norm * (p - 1.0) / p) / norm;
}

} // namespace

double ThetaTail::bound() const {
    const double n = static_cast<double>(nmax);
    return 2.0 * std::exp(-pi * n * n * t) / (1.0 - std::exp(-pi * (2.0 * n + 1.0) * t));
}

double theta_minus_one_direct(double t) {
    if (!(t > 0))
        throw InvalidArgument("theta_minus_one: t must be positive");
    double sum = 0;
    for (long n = 1;; ++n) {
        const double dn = static_cast<double>(n);
        sum += 2.0 * std::exp(-pi * dn * dn * t);
        if (ThetaTail{t, n + 1}.bound() < 1e-16 * (sum + 1e-300))
            return sum;
    }
}

double theta_minus_one(double t) {
    if (!(t > 0))
        throw InvalidArgument("theta_minus_one: t must be positive");
    if (t >= 1.0)
        return theta_minus_one_direct(t);
    const double dual = theta_minus_one_direct(1.0 / t);
    return (1.0 + dual) / std::sqrt(t) - 1.0;
}

QuadratureSpec theta_default_spec() {
    QuadratureSpec spec;
    spec.lower_cutoff = 1e-20;
    spec.upper_cutoff = 60.0;
    spec.levels = 10;
    spec.target_abs_error = 1e-10;
    return spec;
}

EvaluationResult finite_adelic_mzf(const Composition &comp, const TruncationSpec &trunc) {
    trunc.validate();
    const auto d = comp.depth();
    if (d == 0)
        return {1.0, 0.0, Method::series, 0};
    comp.require_convergent();
    const std::int64_t N = required_truncation(comp, trunc);

    const auto small_primes =
        primes_up_to(static_cast<std::int64_t>(std::sqrt(static_cast<double>(N))) + 1);

    // suffix[j] accumulates chains x_j, ..., x_d among the orbits visited so
    // far; suffix[d] is the empty chain.
    std::vector<CompensatedSum> suffix(d + 1);
    suffix[d].add(1.0);

    constexpr std::int64_t block = 1 << 15;
    std::vector<std::int64_t> rest(block);
    std::vector<double> log_norm(block), measure(block);

    for (std::int64_t hi = N + 1; hi > 1;) {
        const std::int64_t lo = std::max<std::int64_t>(1, hi - block);
        const auto len = static_cast<std::size_t>(hi - lo);
        for (std::size_t i = 0; i < len; ++i) {
            rest[i] = lo + static_cast<std::int64_t>(i);
            log_norm[i] = 0.0;
            measure[i] = 1.0; // ∏_p d^×(Z_p^×) over primes not yet seen
        }
        for (const std::int64_t p : small_primes) {
            if (p * p >= hi)
                break;
            const double lp = std::log(static_cast<double>(p));
            for (std::int64_t m = ((lo + p - 1) / p) * p; m < hi; m += p) {
                const auto i = static_cast<std::size_t>(m - lo);
                int k = 0;
                while (rest[i] % p == 0) {
                    rest[i] /= p;
                    ++k;
                }
                log_norm[i] -= k * lp;
                measure[i] *= orbit_measure(static_cast<double>(p), k);
            }
        }
        // Orbits in increasing norm |x|_f = 1/n, i.e. decreasing n.
        for (std::size_t i = len; i-- > 0;) {
            if (rest[i] > 1) {
                const double q = static_cast<double>(rest[i]);
                log_norm[i] -= std::log(q);
                measure[i] *= orbit_measure(q, 1);
            }
            for (std::size_t j = 0; j < d; ++j) {
                const Complex weight = measure[i] * std::exp(comp.exponents[j] * log_norm[i]);
                suffix[j].add(weight * suffix[j + 1].value());
            }
        }
        hi = lo;
    }

    const Complex value = suffix[0].value();
    return {value, nested_tail_bound(comp, N) + 1e-15 * std::abs(value), Method::series, N};
}

DualPathResult completed_zeta_via_theta(Complex s, const QuadratureSpec &spec) {
    require_above_one(s, "completed_zeta_via_theta");
    spec.validate();
    QuadratureSpec local = spec;
    local.tail_bound += theta_low_tail(s.real(), spec.lower_cutoff) +
                        theta_high_tail(s.real(), spec.upper_cutoff);
    const Complex a = 0.5 * s - 1.0;
    DualPathResult out;
    out.primary = integrate_semiaxis(
        [&](double t) { return theta_minus_one(t) * rpow(t, a); }, local);
    const Complex closed =
        2.0 * std::exp(-0.5 * s * std::log(pi)) * gamma(0.5 * s) * riemann_zeta(s);
    out.oracle = {closed, 1e-14 * std::abs(closed), Method::closed_form, 0};
    return out;
}

DualPathResult completed_iterated_theta(Complex s1, Complex s2, const QuadratureSpec &spec) {
    require_above_one(s1, "completed_iterated_theta (s1)");
    require_above_one(s2, "completed_iterated_theta (s2)");
    spec.validate();
    const double sig1 = s1.real(), sig2 = s2.real();
    const double eps = spec.lower_cutoff, H = spec.upper_cutoff;
    const Complex a1 = 0.5 * s1 - 1.0, a2 = 0.5 * s2 - 1.0;

    DualPathResult out;
    {
        QuadratureSpec local = spec;
        local.tail_bound += theta_low_tail(sig2, eps) * theta_mellin_abs(sig1) +
                            theta_high_tail(sig1, H) * theta_mellin_abs(sig2);
        out.primary = integrate_simplex2(
            [&](double r1, double r2) {
                return theta_minus_one(r1) * rpow(r1, a1) * theta_minus_one(r2) * rpow(r2, a2);
            },
            local);
    }

    // Σ_{m>M} of the m-th oracle term is at most
    //   2·1.09 π^{-(σ1+σ2-1)/2} Γ((σ1+σ2-1)/2) / c2 · M^{-(σ1+σ2-2)} / (σ1+σ2-2)
    // with c2 = (σ2 - 1)/2, from |Γ(a, x)| <= Γ(Re a, x) and θ(ir)-1 <= 1.09 r^{-1/2}.
    const double c2 = 0.5 * (sig2 - 1.0);
    const double p = sig1 + sig2 - 1.0;
    const double term_const =
        2.0 * small_r_constant * std::pow(pi, -0.5 * p) * std::tgamma(0.5 * p) / c2;
    auto m_tail = [&](double M) { return term_const * std::pow(M, 1.0 - p) / (p - 1.0); };
    long M = 1;
    while (m_tail(static_cast<double>(M)) > 0.25 * spec.target_abs_error) {
        M *= 2;
        if (M > (1L << 20))
            throw TailTooLarge("completed_iterated_theta: oracle series needs too many terms");
    }

    const double gamma_a = std::tgamma(0.5 * sig1);
    QuadratureSpec inner = spec;
    inner.tail_bound = small_r_constant * gamma_a * std::pow(eps, c2) / c2 +
                       gamma_a * theta_high_tail(sig2, H);
    CompensatedSum sum;
    double err = m_tail(static_cast<double>(M)) + spec.tail_bound;
    std::int64_t nodes = 0;
    for (long m = 1; m <= M; ++m) {
        const double x = pi * static_cast<double>(m) * static_cast<double>(m);
        const Complex prefactor = 2.0 * std::exp(-0.5 * s1 * std::log(x));
        const auto J = integrate_semiaxis(
            [&](double r) {
                return upper_incomplete_gamma(0.5 * s1, x * r) * theta_minus_one(r) * rpow(r, a2);
            },
            inner);
        sum.add(prefactor * J.value);
        err += std::abs(prefactor) * J.abs_error_estimate;
        nodes += J.terms_or_nodes_used;
    }
    out.oracle = {sum.value(), err, Method::series, nodes};
    return out;
}

EvaluationResult completed_iterated_theta_tvar(Complex s1, Complex s2,
                                               const QuadratureSpec &spec) {
    require_above_one(s1, "completed_iterated_theta_tvar (s1)");
    require_above_one(s2, "completed_iterated_theta_tvar (s2)");
    spec.validate();
    const double sig1 = s1.real(), sig2 = s2.real();
    QuadratureSpec local = spec;
    local.lower_cutoff = std::sqrt(spec.lower_cutoff);
    local.upper_cutoff = std::sqrt(spec.upper_cutoff);
    // In t the tails are exactly a quarter of the r-variable tails.
    local.tail_bound += 0.25 * (theta_low_tail(sig2, spec.lower_cutoff) * theta_mellin_abs(sig1) +
                                theta_high_tail(sig1, spec.upper_cutoff) * theta_mellin_abs(sig2));
    const Complex a1 = s1 - 1.0, a2 = s2 - 1.0;
    return integrate_simplex2(
        [&](double t1, double t2) {
            return theta_minus_one(t1 * t1) * rpow(t1, a1) * theta_minus_one(t2 * t2) * rpow(t2, a2);
        },
        local);
}

DualPathResult completed_zeta_tvar(Complex s, const QuadratureSpec &spec) {
    require_above_one(s, "completed_zeta_tvar");
    spec.validate();
    QuadratureSpec local = spec;
    local.lower_cutoff = std::sqrt(spec.lower_cutoff);
    local.upper_cutoff = std::sqrt(spec.upper_cutoff);
    local.tail_bound += 0.5 * (theta_low_tail(s.real(), spec.lower_cutoff) +
                               theta_high_tail(s.real(), spec.upper_cutoff));
    const Complex a = s - 1.0;
    DualPathResult out;
    out.primary = integrate_semiaxis(
        [&](double t) { return theta_minus_one(t * t) * rpow(t, a); }, local);
    const Complex closed = std::exp(-0.5 * s * std::log(pi)) * gamma(0.5 * s) * riemann_zeta(s);
    out.oracle = {closed, 1e-14 * std::abs(closed), Method::closed_form, 0};
    return out;
}

} // namespace adelic
