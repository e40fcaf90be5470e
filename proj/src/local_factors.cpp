#include "adelic/local_factors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

Prime::Prime(std::int64_t p) : p_(p) {
    if (!is_prime(p))
        throw InvalidArgument("Prime: " + std::to_string(p) + " is not prime");
}

double additive_orbit_measure(const Prime &p, int k) {
    const double q = static_cast<double>(p.value());
    return std::pow(q, -k) * (q - 1.0) / q;
}

double multiplicative_orbit_measure(const Prime &p, int k) {
    const double q = static_cast<double>(p.value());
    const double norm = std::pow(q, -k);
    return q / (q - 1.0) * additive_orbit_measure(p, k) / norm;
}

Complex euler_factor(const Prime &p, Complex s) {
    if (!(s.real() > 0)) {
        std::ostringstream msg;
        msg << "euler_factor: Re s = " << s.real() << " must be positive";
        throw DivergenceError(msg.str());
    }
    return 1.0 / (1.0 - std::exp(-s * std::log(static_cast<double>(p.value()))));
}

Complex iterated_local_factor(const Prime &p, const Composition &comp) {
    const auto d = comp.depth();
    const double lp = std::log(static_cast<double>(p.value()));
    Complex suffix = 0;
    Complex numerator = 1, denominator = 1;
    for (std::size_t j = d; j-- > 0;) {
        suffix += comp.exponents[j];
        if (!(suffix.real() > 0)) {
            std::ostringstream msg;
            msg << "iterated_local_factor: Re(s_" << j + 1 << " + ... + s_" << d
                << ") must be positive";
            throw DivergenceError(msg.str());
        }
        const Complex t = std::exp(-suffix * lp);
        denominator *= 1.0 - t;
        if (j >= 1)
            numerator *= t;
    }
    return numerator / denominator;
}

Complex archimedean_factor(Complex s) {
    return std::exp(-0.5 * s * std::log(std::numbers::pi)) * gamma(0.5 * s);
}

EvaluationResult iterated_archimedean(Complex s1, Complex s2, const QuadratureSpec &spec) {
    const double sig1 = s1.real(), sig2 = s2.real();
    if (!(sig2 > 0) || !(sig1 + sig2 > 0))
        throw DivergenceError("iterated_archimedean: need Re s2 > 0 and Re(s1 + s2) > 0");
    spec.validate();
    const double pi = std::numbers::pi;
    const double eps = spec.lower_cutoff, H = spec.upper_cutoff;

    // Below the lower cutoff in t2.
    double low_tail;
    if (sig1 > 0) {
        low_tail = 4.0 * std::pow(eps, sig2) / sig2 * 0.5 * std::pow(pi, -0.5 * sig1) *
                   std::tgamma(0.5 * sig1);
    } else {
        const double s1p = std::min(sig1, -1e-3);
        const double a = s1p + sig2 > 0 ? s1p : -0.5 * sig2;
        low_tail = 4.0 * (std::pow(eps, a + sig2) / (-a * (a + sig2)) +
                          0.007 * std::pow(eps, sig2) / sig2);
    }
    // Beyond the upper cutoff in t1.
    const double high_tail =
        4.0 * 0.5 * std::pow(pi, -0.5 * sig1) *
        std::abs(upper_incomplete_gamma(Complex(0.5 * sig1, 0.0), pi * H * H)) * 0.5 *
        std::pow(pi, -0.5 * sig2) * std::tgamma(0.5 * sig2);

    QuadratureSpec local = spec;
    local.tail_bound = spec.tail_bound + low_tail + high_tail;
    auto f = [&](double t1, double t2) {
        return 4.0 * std::exp(-pi * (t1 * t1 + t2 * t2)) * std::exp((s1 - 1.0) * std::log(t1)) *
               std::exp((s2 - 1.0) * std::log(t2));
    };
    return integrate_simplex2(f, local);
}

double haar_consistency(const Prime &p, int kmax) {
    if (kmax < 1)
        throw InvalidArgument("haar_consistency: kmax must be at least 1");
    double total = 0;
    for (int k = 0; k <= kmax; ++k)
        total += additive_orbit_measure(p, k);
    return std::abs(total - 1.0);
}

} // namespace adelic
