#pragma once

// Special functions and quadrature engines shared by every analytic module.

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace adelic {

using Complex = std::complex<double>;

/// Controls for the double-exponential quadrature engines.
///
/// The engines integrate over [lower_cutoff, upper_cutoff] only; whatever lies
/// outside is the caller's responsibility and is reported through
/// `tail_bound`, which is added verbatim to the error estimate.
struct QuadratureSpec {
    double lower_cutoff = 1e-6;
    double upper_cutoff = 60.0;
    int levels = 10;
    double target_abs_error = 1e-10;
    double tail_bound = 0.0;

    /// Throws InvalidArgument unless 0 < lower < upper, levels >= 1, target > 0.
    void validate() const;
};

enum class Method { series, quadrature, closed_form, monte_carlo };

std::string_view to_string(Method m);

struct EvaluationResult {
    Complex value{};
    double abs_error_estimate = 0.0;
    Method method = Method::series;
    std::int64_t terms_or_nodes_used = 0;
};

/// Two evaluations of the same quantity along independent routes.
struct DualPathResult {
    EvaluationResult primary;
    EvaluationResult oracle;

    double discrepancy() const { return std::abs(primary.value - oracle.value); }
};

/// Compensated (Neumaier) accumulator for complex sums with many small terms.
class CompensatedSum {
  public:
    void add(Complex x) {
        add_part(re_, cre_, x.real());
        add_part(im_, cim_, x.imag());
    }
    Complex value() const { return {re_ + cre_, im_ + cim_}; }

  private:
    static void add_part(double &sum, double &comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

/// Gamma function: Lanczos approximation (g = 7, 9 terms) with the reflection
/// formula for Re z < 0.5. Throws PoleError within 1e-14 of 0, -1, -2, ...
Complex gamma(Complex z);

/// Upper incomplete gamma Γ(a, x) for x > 0: continued fraction when
/// x >= Re a + 1, otherwise Γ(a) minus the lower series.
Complex upper_incomplete_gamma(Complex a, double x);

/// Riemann zeta for Re s > 0, s != 1, via the alternating (eta) series with
/// Borwein's Chebyshev acceleration. Used for closed-form reference values.
Complex riemann_zeta(Complex s);

/// Tanh-sinh quadrature of f over [lower_cutoff, upper_cutoff].
///
/// The rule is applied in the logarithmic variable u = ln t (dt = t du), which
/// suits Mellin-type integrands that vary on multiplicative scales. Levels are
/// refined until two successive levels differ by less than the target; the
/// error estimate is that difference plus `spec.tail_bound`.
EvaluationResult integrate_semiaxis(const std::function<Complex(double)> &f,
                                    const QuadratureSpec &spec);

/// Integral of f(t1, t2) over lower < t2 < t1 < upper. The outer variable is
/// t2; for every outer node the inner integral over t1 in (t2, upper) is
/// computed with its own adaptive tanh-sinh rule.
EvaluationResult integrate_simplex2(const std::function<Complex(double, double)> &f,
                                    const QuadratureSpec &spec);

/// Gauss-Legendre nodes and weights on [-1, 1], plus the cumulative
/// integration matrix: cumulative[i][k] = ∫_{-1}^{x_i} ℓ_k(x) dx for the
/// Lagrange basis ℓ_k on the nodes.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<std::vector<double>> cumulative;
};

GaussLegendreRule gauss_legendre(int n);

} // namespace adelic
