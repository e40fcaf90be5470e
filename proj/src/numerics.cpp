#include "adelic/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

constexpr double pi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

Complex gamma_right_half(Complex z) {
    z -= 1.0;
    Complex x = lanczos_coeffs[0];
    for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i)
        x += lanczos_coeffs[i] / (z + static_cast<double>(i));
    const Complex t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

Complex lower_gamma_series(Complex a, double x) {
    Complex term = 1.0 / a;
    Complex sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + static_cast<double>(n));
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            return std::exp(a * std::log(x) - x) * sum;
    }
    throw ConvergenceError("incomplete gamma: lower series did not converge");
}

Complex upper_gamma_continued_fraction(Complex a, double x) {
    constexpr double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 100000; ++i) {
        const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const Complex delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::exp(a * std::log(x) - x) * h;
    }
    throw ConvergenceError("incomplete gamma: continued fraction did not converge");
}

struct TanhSinhOutcome {
    Complex value;
    double level_difference = 0;
    double propagated_error = 0; // weighted sum of per-node error estimates
    std::int64_t nodes = 0;
};

constexpr int min_level = 5;
constexpr double tau_max = 3.5;

// Tanh-sinh over [a, b]. g(u) returns the integrand value and an error
// estimate attached to that value (zero for plain integrands).
template <class G>
TanhSinhOutcome tanh_sinh(const G &g, double a, double b, int max_level, double target) {
    const double half = 0.5 * (b - a);
    TanhSinhOutcome out;
    if (!(half > 0))
        return out;

    auto node = [&](double tau, Complex &acc, double &err_acc) {
        const double y = 0.5 * pi * std::sinh(tau);
        const double cy = std::cosh(y);
        const double w = half * 0.5 * pi * std::cosh(tau) / (cy * cy);
        if (!(w > 0))
            return;
        // Distance from the nearer endpoint, computed without cancellation.
        const double gap = half * 2.0 / (std::exp(2.0 * std::abs(y)) + 1.0);
        const double u = y >= 0 ? b - gap : a + gap;
        const auto [val, err] = g(u);
        acc += w * val;
        err_acc += w * err;
        ++out.nodes;
    };

    // Level 0: integer tau.
    double h = 1.0;
    Complex sum = 0;
    double err_sum = 0;
    for (int j = -static_cast<int>(tau_max); j <= static_cast<int>(tau_max); ++j)
        node(static_cast<double>(j), sum, err_sum);
    Complex estimate = h * sum;
    double err_estimate = h * err_sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        Complex fresh = 0;
        double fresh_err = 0;
        for (double tau = h; tau <= tau_max; tau += 2.0 * h) {
            node(tau, fresh, fresh_err);
            node(-tau, fresh, fresh_err);
        }
        const Complex next = 0.5 * estimate + h * fresh;
        const double next_err = 0.5 * err_estimate + h * fresh_err;
        const double diff = std::abs(next - estimate);
        estimate = next;
        err_estimate = next_err;
        if (!std::isfinite(estimate.real()) || !std::isfinite(estimate.imag()))
            throw NonConvergence("tanh-sinh: non-finite integrand value");
        if (level >= std::min(min_level, max_level) && diff < target) {
            out.value = estimate;
            out.level_difference = diff;
            out.propagated_error = err_estimate;
            return out;
        }
        out.level_difference = diff;
    }
    std::ostringstream msg;
    msg << "tanh-sinh: refinement cap " << max_level << " reached with level difference "
        << out.level_difference << " above target " << target;
    throw NonConvergence(msg.str());
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(lower_cutoff > 0) || !(upper_cutoff > lower_cutoff))
        throw InvalidArgument("QuadratureSpec: need 0 < lower_cutoff < upper_cutoff");
    if (levels < 1)
        throw InvalidArgument("QuadratureSpec: levels must be positive");
    if (!(target_abs_error > 0))
        throw InvalidArgument("QuadratureSpec: target_abs_error must be positive");
    if (!(tail_bound >= 0))
        throw InvalidArgument("QuadratureSpec: tail_bound must be nonnegative");
}

std::string_view to_string(Method m) {
    switch (m) {
    case Method::series:
        return "series";
    case Method::quadrature:
        return "quadrature";
    case Method::closed_form:
        return "closed_form";
    case Method::monte_carlo:
        return "monte_carlo";
    }
    return "unknown";
}

Complex gamma(Complex z) {
    if (z.real() < 0.5) {
        const double n = std::round(z.real());
        if (n <= 0 && std::abs(z - n) < 1e-14) {
            std::ostringstream msg;
            msg << "gamma: pole at z = " << n;
            throw PoleError(msg.str());
        }
        return pi / (std::sin(pi * z) * gamma_right_half(1.0 - z));
    }
    return gamma_right_half(z);
}

Complex upper_incomplete_gamma(Complex a, double x) {
    if (!(x > 0))
        throw InvalidArgument("upper_incomplete_gamma: x must be positive");
    if (x >= a.real() + 1.0)
        return upper_gamma_continued_fraction(a, x);
    return gamma(a) - lower_gamma_series(a, x);
}

Complex riemann_zeta(Complex s) {
    if (!(s.real() > 0))
        throw DivergenceError("riemann_zeta: only Re s > 0 is supported");
    if (std::abs(s - 1.0) < 1e-14)
        throw PoleError("riemann_zeta: pole at s = 1");
    // Borwein: d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!).
    constexpr int n = 64;
    std::array<double, n + 1> d{};
    double term = 1.0; // i = 0
    double acc = term;
    d[0] = acc;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0));
        acc += term;
        d[i] = acc;
    }
    Complex eta = 0;
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        eta += sign * (d[k] - d[n]) * std::exp(-s * std::log(static_cast<double>(k + 1)));
    }
    eta *= -1.0 / d[n];
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

EvaluationResult integrate_semiaxis(const std::function<Complex(double)> &f,
                                    const QuadratureSpec &spec) {
    spec.validate();
    auto g = [&](double u) {
        const double t = std::exp(u);
        return std::pair<Complex, double>{f(t) * t, 0.0};
    };
    const auto out = tanh_sinh(g, std::log(spec.lower_cutoff), std::log(spec.upper_cutoff),
                               spec.levels, spec.target_abs_error);
    return {out.value, out.level_difference + spec.tail_bound, Method::quadrature, out.nodes};
}

EvaluationResult integrate_simplex2(const std::function<Complex(double, double)> &f,
                                    const QuadratureSpec &spec) {
    spec.validate();
    const double log_upper = std::log(spec.upper_cutoff);
    std::int64_t nodes = 0;
    auto outer = [&](double u2) {
        const double t2 = std::exp(u2);
        if (t2 >= spec.upper_cutoff)
            return std::pair<Complex, double>{0.0, 0.0};
        auto inner = [&](double u1) {
            const double t1 = std::exp(u1);
            return std::pair<Complex, double>{f(t1, t2) * t1, 0.0};
        };
        const auto in = tanh_sinh(inner, u2, log_upper, spec.levels, spec.target_abs_error);
        nodes += in.nodes;
        return std::pair<Complex, double>{in.value * t2, in.level_difference * t2};
    };
    const auto out = tanh_sinh(outer, std::log(spec.lower_cutoff), log_upper, spec.levels,
                               spec.target_abs_error);
    return {out.value, out.level_difference + out.propagated_error + spec.tail_bound,
            Method::quadrature, nodes};
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1)
        throw InvalidArgument("gauss_legendre: need at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // P_0..P_{n} at x, by the three-term recurrence.
    auto legendre_all = [n](double x) {
        std::vector<double> p(n + 2);
        p[0] = 1.0;
        p[1] = x;
        for (int j = 1; j <= n; ++j)
            p[j + 1] = ((2.0 * j + 1.0) * x * p[j] - j * p[j - 1]) / (j + 1.0);
        return p;
    };

    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            const auto p = legendre_all(x);
            dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
            const double dx = p[n] / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const auto p = legendre_all(x);
        dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    std::vector<std::vector<double>> p_at(n);
    for (int i = 0; i < n; ++i)
        p_at[i] = legendre_all(rule.nodes[i]);

    rule.cumulative.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const auto &pi_ = p_at[i];
        for (int k = 0; k < n; ++k) {
            const auto &pk = p_at[k];
            double s = 0.5 * (rule.nodes[i] + 1.0);
            for (int j = 1; j < n; ++j)
                s += 0.5 * pk[j] * (pi_[j + 1] - pi_[j - 1]);
            rule.cumulative[i][k] = rule.weights[k] * s;
        }
    }
    return rule;
}

} // namespace adelic
