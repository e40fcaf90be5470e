#include "adelic/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double to_double(const BigInt &x) { return x.convert_to<double>(); }

bool is_cusp_weight(int k) { return k >= 12 && k % 2 == 0; }

// Coefficients of ∏(1 - q^n) as (exponent, sign) pairs up to order N.
std::vector<std::pair<std::size_t, int>> pentagonal_terms(std::size_t N) {
    std::vector<std::pair<std::size_t, int>> terms{{0, 1}};
    for (std::size_t k = 1;; ++k) {
        const std::size_t e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > N)
            break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        terms.emplace_back(e1, sign);
        if (e2 <= N)
            terms.emplace_back(e2, sign);
    }
    return terms;
}

std::vector<BigInt> shift_to_cusp(const PowerSeriesZ &p, std::size_t N) {
    // q · p(q): a_n is the coefficient of q^{n-1}.
    return std::vector<BigInt>(p.coefficients().begin(), p.coefficients().begin() + N);
}

void check_coefficient_count(std::size_t N) {
    if (N < 1)
        throw InvalidArgument("at least one coefficient is required");
}

// A(H) with |F(it)| <= A(H) e^{-2πt} for every t >= H.
double decay_constant(const FourierCoefficients &f, double H) {
    const double C = f.growth_constant();
    const double half_k = 0.5 * f.weight();
    double sum = 0;
    for (long n = 1;; ++n) {
        const double term = std::pow(static_cast<double>(n), half_k) * std::exp(-two_pi * (n - 1) * H);
        sum += term;
        if (static_cast<double>(n) * two_pi * H > half_k && term < 1e-18 * sum)
            break;
    }
    return C * sum;
}

double real_upper_gamma(double a, double x) { return upper_incomplete_gamma(Complex(a, 0), x).real(); }

// ∫_H^∞ |F(it)| t^{σ-1} dt
double high_tail(const FourierCoefficients &f, double sigma, double H) {
    return decay_constant(f, H) * std::pow(two_pi, -sigma) * real_upper_gamma(sigma, two_pi * H);
}

// ∫_0^ε |F(it)| t^{σ-1} dt for ε < 1, through |F(it)| = t^{-k} |F(i/t)|.
double low_tail(const FourierCoefficients &f, double sigma, double eps) {
    const double k = f.weight();
    return decay_constant(f, 1.0 / eps) * std::pow(two_pi, sigma - k) *
           real_upper_gamma(k - sigma, two_pi / eps);
}

// ∫_0^∞ |F(it)| t^{σ-1} dt
double mellin_abs(const FourierCoefficients &f, double sigma) {
    const double k = f.weight();
    return decay_constant(f, 1.0) * (std::pow(two_pi, -sigma) * real_upper_gamma(sigma, two_pi) +
                                     std::pow(two_pi, sigma - k) * real_upper_gamma(k - sigma, two_pi));
}

void require_cusp_form(const FourierCoefficients &f) {
    if (!is_cusp_weight(f.weight()))
        throw InvalidArgument(f.label() + " is not a cusp form; theta-type integrals need modularity");
}

Complex npow(std::size_t n, Complex s) { return std::exp(-s * std::log(static_cast<double>(n))); }

// Σ_{n<=N} a_n n^{-s} with the growth-bound tail for n > N.
EvaluationResult dirichlet_sum(const FourierCoefficients &f, Complex s, std::int64_t N) {
    const Composition shifted{{s - 0.5 * f.weight()}};
    CompensatedSum sum;
    double magnitude = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const Complex term = f(n) * npow(n, s);
        sum.add(term);
        magnitude += std::abs(term);
    }
    const double tail = f.growth_constant() * nested_tail_bound(shifted, N);
    return {sum.value(), tail + 1e-15 * magnitude, Method::series, N};
}

std::int64_t truncation_for(const Composition &shifted, double C, std::int64_t available,
                            const TruncationSpec &trunc) {
    const std::int64_t cap = std::min<std::int64_t>(available, trunc.max_outer_index);
    if (cap < 2)
        throw TailTooLarge("fewer than two coefficients available");
    return required_truncation(shifted, TruncationSpec{cap, trunc.target_abs_error / C});
}

double normalization_factor(CuspNormalization norm, int depth) {
    if (norm == CuspNormalization::standard)
        return 1.0;
    return depth == 1 ? 2.0 : 4.0;
}

} // namespace

PowerSeriesZ::PowerSeriesZ(std::size_t order) : c_(order + 1) {}

PowerSeriesZ::PowerSeriesZ(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty())
        throw InvalidArgument("power series needs at least the constant term");
}

PowerSeriesZ PowerSeriesZ::operator*(const PowerSeriesZ &other) const {
    const std::size_t N = std::min(order(), other.order());
    PowerSeriesZ out(N);
    for (std::size_t i = 0; i <= N; ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; i + j <= N; ++j)
            out.c_[i + j] += c_[i] * other.c_[j];
    }
    return out;
}

FourierCoefficients::FourierCoefficients(int weight, std::vector<BigInt> coeffs, std::string label)
    : FourierCoefficients(weight, std::move(coeffs), std::move(label), true) {
    if (!is_cusp_weight(weight)) {
        std::ostringstream msg;
        msg << "cusp form weight must be even and at least 12, got " << weight;
        throw InvalidArgument(msg.str());
    }
}

FourierCoefficients::FourierCoefficients(int weight, std::vector<BigInt> coeffs, std::string label,
                                         bool)
    : weight_(weight), exact_(std::move(coeffs)), label_(std::move(label)) {
    if (weight_ < 0 || weight_ % 2 != 0)
        throw InvalidArgument("weight must be even and nonnegative");
    check_coefficient_count(exact_.size());
    approx_.reserve(exact_.size());
    double ratio = 0;
    for (std::size_t n = 1; n <= exact_.size(); ++n) {
        approx_.push_back(to_double(exact_[n - 1]));
        ratio = std::max(ratio, std::abs(approx_.back()) /
                                    std::pow(static_cast<double>(n), 0.5 * weight_));
    }
    growth_ = 1.5 * std::max(ratio, 1e-300);
}

FourierCoefficients FourierCoefficients::dirichlet_series(int growth_weight,
                                                          std::vector<BigInt> coeffs,
                                                          std::string label) {
    return FourierCoefficients(growth_weight, std::move(coeffs), std::move(label), true);
}

FourierCoefficients FourierCoefficients::scaled(const BigInt &factor, std::string label) const {
    std::vector<BigInt> c = exact_;
    for (auto &x : c)
        x *= factor;
    return FourierCoefficients(weight_, std::move(c), std::move(label), true);
}

FourierCoefficients FourierCoefficients::plus(const FourierCoefficients &other,
                                              std::string label) const {
    if (other.weight_ != weight_)
        throw InvalidArgument("cannot add forms of different weight");
    const std::size_t N = std::min(size(), other.size());
    std::vector<BigInt> c(N);
    for (std::size_t i = 0; i < N; ++i)
        c[i] = exact_[i] + other.exact_[i];
    return FourierCoefficients(weight_, std::move(c), std::move(label), true);
}

PowerSeriesZ euler_product(std::size_t N) {
    PowerSeriesZ p(N);
    for (const auto &[e, sign] : pentagonal_terms(N))
        p[e] = sign;
    return p;
}

FourierCoefficients delta_coefficients(std::size_t N) {
    check_coefficient_count(N);
    const std::size_t order = N - 1;
    const auto terms = pentagonal_terms(order);
    PowerSeriesZ acc(order);
    acc[0] = 1;
    for (int rep = 0; rep < 24; ++rep) {
        PowerSeriesZ next(order);
        for (std::size_t i = 0; i <= order; ++i) {
            BigInt &out = next[i];
            for (const auto &[e, sign] : terms) {
                if (e > i)
                    break;
                if (sign > 0)
                    out += acc[i - e];
                else
                    out -= acc[i - e];
            }
        }
        acc = std::move(next);
    }
    return FourierCoefficients(12, shift_to_cusp(acc, N), "Delta");
}

FourierCoefficients delta_coefficients_chunked(std::size_t N, std::size_t chunk) {
    check_coefficient_count(N);
    if (chunk == 0)
        throw InvalidArgument("chunk width must be positive");
    const std::size_t order = N - 1;

    auto multiply = [&](const PowerSeriesZ &a, const PowerSeriesZ &b) {
        PowerSeriesZ out(order);
        for (std::size_t lo = 0; lo <= order; lo += chunk) {
            const std::size_t hi = std::min(order + 1, lo + chunk);
            for (std::size_t n = hi; n-- > lo;) {
                BigInt s = 0;
                for (std::size_t j = 0; j <= n; ++j)
                    s += a[j] * b[n - j];
                out[n] = s;
            }
        }
        return out;
    };

    const PowerSeriesZ p = euler_product(order);
    const PowerSeriesZ p2 = multiply(p, p);
    const PowerSeriesZ p4 = multiply(p2, p2);
    const PowerSeriesZ p8 = multiply(p4, p4);
    const PowerSeriesZ p16 = multiply(p8, p8);
    return FourierCoefficients(12, shift_to_cusp(multiply(p16, p8), N), "Delta");
}

PowerSeriesZ eisenstein_coefficients(int k, std::size_t N) {
    if (k != 4 && k != 6)
        throw InvalidArgument("only E4 and E6 are provided");
    const int r = k - 1;
    const BigInt scale = (k == 4) ? BigInt(240) : BigInt(-504);
    std::vector<BigInt> sigma(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        const BigInt dr = boost::multiprecision::pow(BigInt(d), r);
        for (std::size_t m = d; m <= N; m += d)
            sigma[m] += dr;
    }
    PowerSeriesZ e(N);
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n)
        e[n] = scale * sigma[n];
    return e;
}

FourierCoefficients delta_times_eisenstein(int k, std::size_t N) {
    const auto delta = delta_coefficients(N);
    const auto e = eisenstein_coefficients(k, N);
    // a_n = Σ_{j=1..n} τ(j) e_{n-j}
    std::vector<BigInt> c(N);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t j = 1; j <= n; ++j)
            c[n - 1] += delta.exact(j) * e[n - j];
    return FourierCoefficients(12 + k, std::move(c), k == 4 ? "Delta*E4" : "Delta*E6");
}

double cusp_form_direct(const FourierCoefficients &f, double t) {
    if (!(t > 0))
        throw InvalidArgument("cusp_form_direct: t must be positive");
    const double C = f.growth_constant();
    const double half_k = 0.5 * f.weight();
    const double q = std::exp(-two_pi * t);
    double sum = 0, magnitude = 0;
    for (std::size_t n = 1;; ++n) {
        if (n > f.size()) {
            std::ostringstream msg;
            msg << "cusp form " << f.label() << ": " << f.size()
                << " coefficients do not reach convergence at t = " << t;
            throw InvalidArgument(msg.str());
        }
        const double dn = static_cast<double>(n);
        const double term = f(n) * std::exp(-two_pi * dn * t);
        sum += term;
        magnitude += std::abs(term);
        // Past the peak of n^{k/2} q^n the bounds decrease geometrically.
        const double r = std::pow((dn + 2) / (dn + 1), half_k) * q;
        if (r < 1) {
            const double rest = C * std::pow(dn + 1, half_k) * std::exp(-two_pi * (dn + 1) * t) / (1 - r);
            if (rest < 1e-17 * magnitude + 1e-300)
                return sum;
        }
    }
}

double cusp_form_at(const FourierCoefficients &f, double t) {
    if (!(t > 0))
        throw InvalidArgument("cusp_form_at: t must be positive");
    if (t >= 1.0)
        return cusp_form_direct(f, t);
    require_cusp_form(f);
    const double sign = (f.weight() / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(t, -f.weight()) * cusp_form_direct(f, 1.0 / t);
}

EvaluationResult l_series(const FourierCoefficients &f, Complex s, const TruncationSpec &trunc) {
    trunc.validate();
    const double edge = 0.5 * f.weight() + 1.0;
    if (!(s.real() > edge)) {
        std::ostringstream msg;
        msg << "L(" << f.label() << ", s) needs Re s > " << edge << ", got " << s.real();
        throw DivergenceError(msg.str());
    }
    const Composition shifted{{s - 0.5 * f.weight()}};
    const auto N = truncation_for(shifted, f.growth_constant(), static_cast<std::int64_t>(f.size()), trunc);
    return dirichlet_sum(f, s, N);
}

EvaluationResult diagonal_l_series(const FourierCoefficients &f, const FourierCoefficients &g,
                                   Complex s, const TruncationSpec &trunc) {
    const std::size_t N = std::min(f.size(), g.size());
    std::vector<BigInt> c(N);
    for (std::size_t n = 1; n <= N; ++n)
        c[n - 1] = f.exact(n) * g.exact(n);
    const auto product = FourierCoefficients::dirichlet_series(
        f.weight() + g.weight(), std::move(c), f.label() + "." + g.label());
    return l_series(product, s, trunc);
}

EvaluationResult double_l_series(const FourierCoefficients &f, const FourierCoefficients &g,
                                 Complex s1, Complex s2, const TruncationSpec &trunc) {
    trunc.validate();
    const double kf = 0.5 * f.weight(), kg = 0.5 * g.weight();
    if (!(s2.real() > kg + 1.0) || !(s1.real() + s2.real() > kf + kg + 2.0)) {
        std::ostringstream msg;
        msg << "double L-series needs Re s2 > " << kg + 1.0 << " and Re(s1 + s2) > " << kf + kg + 2.0;
        throw DivergenceError(msg.str());
    }
    const Composition shifted{{s1 - kf, s2 - kg}};
    const double C = f.growth_constant() * g.growth_constant();
    const auto N = truncation_for(shifted, C, static_cast<std::int64_t>(std::min(f.size(), g.size())), trunc);

    CompensatedSum inner, total;
    double magnitude = 0, inner_magnitude = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const Complex term = g(n) * npow(n, s2);
        total.add(term * inner.value());
        magnitude += std::abs(term) * inner_magnitude;
        const Complex a = f(n) * npow(n, s1);
        inner.add(a);
        inner_magnitude += std::abs(a);
    }
    return {total.value(), C * nested_tail_bound(shifted, N) + 1e-15 * magnitude, Method::series, N};
}

QuadratureSpec modular_default_spec() {
    QuadratureSpec spec;
    spec.lower_cutoff = 0.01;
    spec.upper_cutoff = 40.0;
    spec.levels = 10;
    spec.target_abs_error = 1e-12;
    return spec;
}

EvaluationResult completed_l_integral(const FourierCoefficients &f, Complex s,
                                      const QuadratureSpec &spec, SmallT mode,
                                      CuspNormalization norm) {
    spec.validate();
    require_cusp_form(f);
    const double sigma = s.real();
    const double k = f.weight();
    const double H = spec.upper_cutoff;
    EvaluationResult out;
    if (mode == SmallT::inversion) {
        if (!(H > 1.0))
            throw InvalidArgument("upper cutoff must exceed 1 for the inversion split");
        const double sign = (f.weight() / 2) % 2 == 0 ? 1.0 : -1.0;
        QuadratureSpec local = spec;
        local.lower_cutoff = 1.0;
        local.tail_bound += high_tail(f, sigma, H) + high_tail(f, k - sigma, H);
        const Complex a = s - 1.0, b = k - s - 1.0;
        out = integrate_semiaxis(
            [&](double t) {
                const double lt = std::log(t);
                return cusp_form_direct(f, t) * (std::exp(a * lt) + sign * std::exp(b * lt));
            },
            local);
    } else {
        if (!(spec.lower_cutoff < 1.0))
            throw InvalidArgument("lower cutoff must be below 1");
        QuadratureSpec local = spec;
        local.tail_bound += high_tail(f, sigma, H) + low_tail(f, sigma, spec.lower_cutoff);
        const Complex a = s - 1.0;
        out = integrate_semiaxis(
            [&](double t) { return cusp_form_direct(f, t) * std::exp(a * std::log(t)); }, local);
    }
    const double factor = normalization_factor(norm, 1);
    out.value *= factor;
    out.abs_error_estimate *= factor;
    return out;
}

DualPathResult completed_l(const FourierCoefficients &f, Complex s, const QuadratureSpec &spec,
                           CuspNormalization norm) {
    const double edge = 0.5 * f.weight() + 1.0;
    if (!(s.real() > edge)) {
        std::ostringstream msg;
        msg << "series side of Λ(" << f.label() << ", s) needs Re s > " << edge;
        throw DivergenceError(msg.str());
    }
    DualPathResult out;
    out.primary = completed_l_integral(f, s, spec, SmallT::inversion, norm);
    const auto L = dirichlet_sum(f, s, static_cast<std::int64_t>(f.size()));
    const Complex factor =
        normalization_factor(norm, 1) * std::exp(-s * std::log(two_pi)) * gamma(s);
    out.oracle = {factor * L.value, std::abs(factor) * L.abs_error_estimate, Method::series,
                  L.terms_or_nodes_used};
    return out;
}

DualPathResult completed_double_l(const FourierCoefficients &f, const FourierCoefficients &g,
                                  Complex s1, Complex s2, const QuadratureSpec &spec,
                                  CuspNormalization norm) {
    spec.validate();
    require_cusp_form(f);
    require_cusp_form(g);
    if (!(spec.lower_cutoff < 1.0) || !(spec.upper_cutoff > 1.0))
        throw InvalidArgument("cutoffs must straddle t = 1");
    const double sig1 = s1.real(), sig2 = s2.real();
    const double lo = spec.lower_cutoff, H = spec.upper_cutoff;
    const double factor = normalization_factor(norm, 2);
    const Complex a1 = s1 - 1.0, a2 = s2 - 1.0;

    DualPathResult out;
    {
        QuadratureSpec local = spec;
        local.tail_bound +=
            low_tail(g, sig2, lo) * mellin_abs(f, sig1) + high_tail(f, sig1, H) * mellin_abs(g, sig2);
        out.primary = integrate_simplex2(
            [&](double t1, double t2) {
                return cusp_form_at(f, t1) * std::exp(a1 * std::log(t1)) * cusp_form_at(g, t2) *
                       std::exp(a2 * std::log(t2));
            },
            local);
    }

    // ∫_t^∞ F(iu) u^{s1-1} du = Σ_n a_n (2πn)^{-s1} Γ(s1, 2πnt). Terms with
    // 2πnt beyond cutoff carry e^{-2πnt} <= e^{-45 - σ1 - k/2} and are bounded
    // through Γ(σ, x) <= 2 x^{σ-1} e^{-x} (valid for x >= 2(σ - 1)).
    constexpr double t0 = 0.1;
    const double half_kf = 0.5 * f.weight();
    const double cutoff = sig1 + half_kf + 45.0;
    double worst_truncation = 0;
    auto bracket = [&](double t) {
        CompensatedSum sum;
        std::size_t n = 1;
        for (; two_pi * n * t < cutoff; ++n) {
            if (n > f.size())
                throw InvalidArgument("too few coefficients for the double completed oracle");
            sum.add(f(n) * std::exp(-s1 * std::log(two_pi * n)) * upper_incomplete_gamma(s1, two_pi * n * t));
        }
        const double dn = static_cast<double>(n);
        const double r = std::pow((dn + 1) / dn, half_kf) * std::exp(-two_pi * t);
        const double first = 2.0 * f.growth_constant() * std::pow(dn, half_kf - 1.0) *
                             std::pow(t, sig1 - 1.0) * std::exp(-two_pi * dn * t) / two_pi;
        worst_truncation = std::max(worst_truncation, r < 1 ? first / (1 - r) : 1.0);
        return sum.value();
    };
    QuadratureSpec local = spec;
    local.lower_cutoff = t0;
    local.tail_bound += (low_tail(g, sig2, t0) + high_tail(g, sig2, H)) * mellin_abs(f, sig1);
    auto oracle = integrate_semiaxis(
        [&](double t) { return cusp_form_direct(g, t) * std::exp(a2 * std::log(t)) * bracket(t); },
        local);
    oracle.abs_error_estimate += worst_truncation * mellin_abs(g, sig2);
    oracle.method = Method::series;
    out.oracle = oracle;

    for (auto *r : {&out.primary, &out.oracle}) {
        r->value *= factor;
        r->abs_error_estimate *= factor;
    }
    return out;
}

std::string coefficients_to_json(const FourierCoefficients &f) {
    nlohmann::json doc;
    doc["label"] = f.label();
    doc["weight"] = f.weight();
    auto &arr = doc["coefficients"] = nlohmann::json::array();
    for (std::size_t n = 1; n <= f.size(); ++n)
        arr.push_back(f.exact(n).str());
    return doc.dump();
}

FourierCoefficients coefficients_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("coefficient file is not valid JSON: ") + e.what());
    }
    int weight = 12;
    std::string label = "imported";
    nlohmann::json arr = doc;
    if (doc.is_object()) {
        if (!doc.contains("coefficients"))
            throw InvalidArgument("coefficient file lacks a \"coefficients\" array");
        arr = doc["coefficients"];
        if (doc.contains("weight")) {
            if (!doc["weight"].is_number_integer())
                throw InvalidArgument("\"weight\" must be an integer");
            weight = doc["weight"].get<int>();
        }
        if (doc.contains("label") && doc["label"].is_string())
            label = doc["label"].get<std::string>();
    }
    if (!arr.is_array())
        throw InvalidArgument("coefficients must be a JSON array");
    std::vector<BigInt> c;
    c.reserve(arr.size());
    for (const auto &item : arr) {
        if (item.is_number_integer()) {
            c.emplace_back(item.get<std::int64_t>());
        } else if (item.is_string()) {
            const auto s = item.get<std::string>();
            const bool ok = !s.empty() &&
                            std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                        [](char ch) { return ch >= '0' && ch <= '9'; }) &&
                            s != "-";
            if (!ok)
                throw InvalidArgument("coefficient \"" + s + "\" is not a decimal integer");
            c.emplace_back(s);
        } else {
            throw InvalidArgument("coefficients must be integers or decimal strings");
        }
    }
    return FourierCoefficients(weight, std::move(c), label);
}

} // namespace adelic
