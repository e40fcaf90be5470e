#include "adelic/mzv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

// c * x^a * (1 + ln x)^b, an upper bound valid for x >= 1.
struct Envelope {
    double c = 1.0;
    double a = 0.0;
    int b = 0;
};

constexpr double exponent_eps = 1e-12;

// ∫_N^∞ x^e (1 + ln x)^b dx for e < -1.
double power_log_integral(double e, int b, double N) {
    const double r = -(e + 1.0);
    const double lower = r * (1.0 + std::log(N));
    const double g = upper_incomplete_gamma(Complex(b + 1.0, 0.0), lower).real();
    return std::exp(r) * std::pow(r, -(b + 1.0)) * g;
}

// Largest value of x^e (1 + ln x)^b over x >= from (e < -1).
double power_log_max(double e, int b, double from) {
    const double l_from = 1.0 + std::log(from);
    const double l_star = b > 0 ? static_cast<double>(b) / (-e) : 0.0;
    auto f = [&](double l) { return std::exp(e * (l - 1.0)) * std::pow(l, b); };
    if (l_star > l_from)
        return f(l_star);
    return f(l_from);
}

// Sum bound for Σ_{n>=from} x^e L^b with e < -1, f unimodal in x.
double power_log_sum_from(double e, int b, double from) {
    const double integral = power_log_integral(e, b, from);
    const double l_from = 1.0 + std::log(from);
    const bool decreasing = b == 0 || l_from >= b / (-e);
    // Σ_{n>from} f(n) ≤ ∫_from^∞ f when f is decreasing; otherwise add max f.
    return decreasing ? integral : integral + power_log_max(e, b, from);
}

// Envelope for Σ_{n<=m} n^{-sigma} E(n).
Envelope sum_envelope(const Envelope &env, double sigma) {
    const double e = env.a - sigma;
    if (e > -1.0 + exponent_eps) {
        if (e >= 0)
            return {env.c, e + 1.0, env.b};
        return {env.c / (e + 1.0), e + 1.0, env.b};
    }
    if (e >= -1.0 - exponent_eps)
        return {env.c, 0.0, env.b + 1};
    // Bounded by the full series: first term plus the sum over n >= 1 bounded
    // by the integral from 1 plus the maximum of the unimodal summand.
    const double total = power_log_integral(e, env.b, 1.0) + power_log_max(e, env.b, 1.0);
    return {env.c * total, 0.0, 0};
}

} // namespace

bool Composition::converges() const {
    double suffix = 0;
    const auto d = exponents.size();
    for (std::size_t j = d; j-- > 0;) {
        suffix += exponents[j].real();
        if (!(suffix > static_cast<double>(d - j)))
            return false;
    }
    return true;
}

void Composition::require_convergent() const {
    double suffix = 0;
    const auto d = exponents.size();
    for (std::size_t j = d; j-- > 0;) {
        suffix += exponents[j].real();
        if (!(suffix > static_cast<double>(d - j))) {
            std::ostringstream msg;
            msg << "composition diverges: Re(s_" << j + 1 << " + ... + s_" << d << ") = " << suffix
                << " must exceed " << d - j;
            throw DivergenceError(msg.str());
        }
    }
}

int IntegerComposition::weight() const {
    int w = 0;
    for (int k : parts)
        w += k;
    return w;
}

Composition IntegerComposition::to_composition() const {
    Composition c;
    for (int k : parts)
        c.exponents.emplace_back(static_cast<double>(k), 0.0);
    return c;
}

bool IteratedWord::convergent() const {
    return !letters.empty() && letters.front() == Form::omega1 && letters.back() == Form::omega0;
}

std::string IteratedWord::to_string() const {
    std::string s;
    for (Form f : letters)
        s += f == Form::omega1 ? '1' : '0';
    return s;
}

IteratedWord IteratedWord::parse(const std::string &text) {
    IteratedWord w;
    for (char ch : text) {
        if (ch == '1')
            w.letters.push_back(Form::omega1);
        else if (ch == '0')
            w.letters.push_back(Form::omega0);
        else
            throw InvalidArgument("word: expected only '0' (dx/x) and '1' (dx/(1-x)), got '" +
                                  text + "'");
    }
    return w;
}

void TruncationSpec::validate() const {
    if (max_outer_index < 2)
        throw InvalidArgument("TruncationSpec: max_outer_index must be at least 2");
    if (!(target_abs_error > 0))
        throw InvalidArgument("TruncationSpec: target_abs_error must be positive");
}

double nested_tail_bound(const Composition &comp, std::int64_t N) {
    if (comp.depth() == 0)
        return 0.0;
    comp.require_convergent();
    Envelope env;
    const auto d = comp.depth();
    for (std::size_t j = 0; j + 1 < d; ++j)
        env = sum_envelope(env, comp.exponents[j].real());
    const double e = env.a - comp.exponents[d - 1].real();
    return env.c * power_log_sum_from(e, env.b, static_cast<double>(N));
}

std::int64_t required_truncation(const Composition &comp, const TruncationSpec &trunc) {
    trunc.validate();
    if (comp.depth() == 0)
        return 0;
    const double target = trunc.target_abs_error;
    const std::int64_t cap = trunc.max_outer_index;
    if (nested_tail_bound(comp, cap) > target) {
        std::ostringstream msg;
        msg << "tail bound " << nested_tail_bound(comp, cap) << " at N = " << cap
            << " exceeds target " << target;
        throw TailTooLarge(msg.str());
    }
    std::int64_t hi = 2;
    while (hi < cap && nested_tail_bound(comp, hi) > target)
        hi = std::min(cap, hi * 2);
    std::int64_t lo = std::max<std::int64_t>(2, hi / 2);
    if (nested_tail_bound(comp, lo) <= target)
        return lo;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (nested_tail_bound(comp, mid) <= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

// acc[j] holds the nested sum of depth j over indices below the current n.
// Updating j from deep to shallow keeps n1 < n2 < ... strict.

Complex nested_sum_integer(const std::vector<int> &k, std::int64_t N) {
    const auto d = k.size();
    const int kmax = *std::max_element(k.begin(), k.end());
    std::vector<double> sum(d + 1, 0.0), comp(d + 1, 0.0), pw(kmax + 1, 1.0);
    sum[0] = 1.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double inv = 1.0 / static_cast<double>(n);
        for (int p = 1; p <= kmax; ++p)
            pw[p] = pw[p - 1] * inv;
        for (std::size_t j = d; j >= 1; --j) {
            const double x = (sum[j - 1] + comp[j - 1]) * pw[k[j - 1]];
            const double t = sum[j] + x;
            if (std::abs(sum[j]) >= std::abs(x))
                comp[j] += (sum[j] - t) + x;
            else
                comp[j] += (x - t) + sum[j];
            sum[j] = t;
        }
    }
    return {sum[d] + comp[d], 0.0};
}

Complex nested_sum_real(const std::vector<double> &s, std::int64_t N) {
    const auto d = s.size();
    std::vector<double> sum(d + 1, 0.0), comp(d + 1, 0.0);
    sum[0] = 1.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        for (std::size_t j = d; j >= 1; --j) {
            const double x = (sum[j - 1] + comp[j - 1]) * std::exp(-s[j - 1] * ln);
            const double t = sum[j] + x;
            if (std::abs(sum[j]) >= std::abs(x))
                comp[j] += (sum[j] - t) + x;
            else
                comp[j] += (x - t) + sum[j];
            sum[j] = t;
        }
    }
    return {sum[d] + comp[d], 0.0};
}

Complex nested_sum_complex(const std::vector<Complex> &s, std::int64_t N) {
    const auto d = s.size();
    std::vector<CompensatedSum> acc(d + 1);
    acc[0].add(1.0);
    for (std::int64_t n = 1; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        for (std::size_t j = d; j >= 1; --j)
            acc[j].add(acc[j - 1].value() * std::exp(-s[j - 1] * ln));
    }
    return acc[d].value();
}

} // namespace

EvaluationResult mzf_eval(const Composition &comp, const TruncationSpec &trunc) {
    trunc.validate();
    if (comp.depth() == 0)
        return {1.0, 0.0, Method::series, 0};
    comp.require_convergent();
    const std::int64_t N = required_truncation(comp, trunc);

    bool all_real = true, all_small_int = true;
    for (const auto &s : comp.exponents) {
        if (s.imag() != 0)
            all_real = false;
        if (s.imag() != 0 || s.real() != std::round(s.real()) || s.real() < 0 || s.real() > 64)
            all_small_int = false;
    }

    Complex value;
    if (all_small_int) {
        std::vector<int> k;
        for (const auto &s : comp.exponents)
            k.push_back(static_cast<int>(s.real()));
        value = nested_sum_integer(k, N);
    } else if (all_real) {
        std::vector<double> s;
        for (const auto &x : comp.exponents)
            s.push_back(x.real());
        value = nested_sum_real(s, N);
    } else {
        value = nested_sum_complex(comp.exponents, N);
    }
    // Rounding in the compensated sums is far below the tail; count it anyway.
    const double rounding = 1e-15 * std::abs(value);
    return {value, nested_tail_bound(comp, N) + rounding, Method::series, N};
}

IteratedWord composition_to_word(const IntegerComposition &k) {
    if (k.parts.empty())
        throw InvalidComposition("composition must have at least one part");
    for (int p : k.parts)
        if (p < 1)
            throw InvalidComposition("composition parts must be positive integers");
    if (k.parts.back() < 2)
        throw InvalidComposition("last part must exceed 1 for a convergent iterated integral");
    IteratedWord w;
    for (int p : k.parts) {
        w.letters.push_back(Form::omega1);
        for (int i = 1; i < p; ++i)
            w.letters.push_back(Form::omega0);
    }
    return w;
}

namespace {

struct Panel {
    // Distances from x = 1 of the panel's endpoints (left > right), except the
    // first panel [0, 1/2] which is described by its x-range directly.
    double left_gap;
    double right_gap;
};

struct PanelNode {
    double x;
    double gap; // 1 - x, held separately so 1/(1-x) keeps full precision
};

double iterate_word(const IteratedWord &word, const GaussLegendreRule &rule,
                    const std::vector<Panel> &panels, double &last_panel_share) {
    const int m = static_cast<int>(rule.nodes.size());
    std::vector<std::vector<PanelNode>> nodes(panels.size(), std::vector<PanelNode>(m));
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double lg = panels[p].left_gap, rg = panels[p].right_gap;
        for (int i = 0; i < m; ++i) {
            const double frac = 0.5 * (rule.nodes[i] + 1.0);
            const double gap = lg - frac * (lg - rg);
            const double x = (lg >= 1.0) ? frac * (1.0 - rg) : 1.0 - gap;
            nodes[p][i] = {x, gap};
        }
    }

    std::vector<std::vector<double>> F(panels.size(), std::vector<double>(m, 1.0));
    std::vector<double> g(m), next(m);
    double total = 0;
    for (Form letter : word.letters) {
        double running = 0;
        for (std::size_t p = 0; p < panels.size(); ++p) {
            const double half = 0.5 * (panels[p].left_gap - panels[p].right_gap);
            for (int k = 0; k < m; ++k) {
                const auto &nd = nodes[p][k];
                g[k] = F[p][k] * (letter == Form::omega0 ? 1.0 / nd.x : 1.0 / nd.gap);
            }
            double panel_total = 0;
            for (int k = 0; k < m; ++k)
                panel_total += rule.weights[k] * g[k];
            panel_total *= half;
            for (int i = 0; i < m; ++i) {
                double s = 0;
                for (int k = 0; k < m; ++k)
                    s += rule.cumulative[i][k] * g[k];
                next[i] = running + half * s;
            }
            F[p] = next;
            running += panel_total;
            if (p + 1 == panels.size())
                last_panel_share = std::abs(panel_total);
        }
        total = running;
    }
    return total;
}

} // namespace

EvaluationResult kontsevich_eval(const IteratedWord &word, const QuadratureSpec &spec) {
    if (!word.convergent())
        throw DivergentWord("word '" + word.to_string() +
                            "' must start with dx/(1-x) and end with dx/x");
    if (!(spec.lower_cutoff > 0 && spec.lower_cutoff < 0.5))
        throw InvalidArgument("kontsevich_eval: lower_cutoff must lie in (0, 1/2)");
    if (spec.levels < 1 || !(spec.target_abs_error > 0))
        throw InvalidArgument("kontsevich_eval: need levels >= 1 and a positive target");

    std::vector<Panel> panels{{1.0, 0.5}};
    double gap = 0.5;
    while (gap * 0.5 >= spec.lower_cutoff) {
        panels.push_back({gap, gap * 0.5});
        gap *= 0.5;
    }
    panels.push_back({gap, 0.0});

    const int order = 8 + 2 * spec.levels;
    double last_coarse = 0, last_fine = 0;
    const double coarse = iterate_word(word, gauss_legendre(order), panels, last_coarse);
    const double fine = iterate_word(word, gauss_legendre(order + 8), panels, last_fine);
    const double diff = std::abs(fine - coarse);
    if (diff > spec.target_abs_error) {
        std::ostringstream msg;
        msg << "kontsevich_eval: panel orders " << order << " and " << order + 8
            << " differ by " << diff;
        throw NonConvergence(msg.str());
    }
    const auto n_nodes =
        static_cast<std::int64_t>(panels.size()) * (2 * order + 8) *
        static_cast<std::int64_t>(word.letters.size());
    return {fine, diff + last_fine + spec.tail_bound, Method::quadrature, n_nodes};
}

} // namespace adelic
