#pragma once

// Multiple zeta functions as nested Dirichlet series, and multiple zeta
// values as iterated integrals over the simplex 0 < x1 < ... < xn < 1.

#include <cstdint>
#include <string>
#include <vector>

#include "adelic/numerics.hpp"

namespace adelic {

/// Exponents (s1, ..., sd) of ζ(s1, ..., sd) = Σ_{0<n1<...<nd} ∏ n_i^{-s_i}.
struct Composition {
    std::vector<Complex> exponents;

    std::size_t depth() const { return exponents.size(); }

    /// Re(s_j + ... + s_d) > d - j + 1 for every j.
    bool converges() const;

    /// Throws DivergenceError naming the first failing suffix.
    void require_convergent() const;
};

struct IntegerComposition {
    std::vector<int> parts;

    int weight() const;
    Composition to_composition() const;
};

enum class Form { omega0, omega1 }; // dx/x and dx/(1-x)

/// Word in the forms ω0, ω1, read in integration order (x1 first).
struct IteratedWord {
    std::vector<Form> letters;

    bool convergent() const;
    /// '1' for ω1 and '0' for ω0, e.g. "110" for ω1 ω1 ω0.
    std::string to_string() const;
    static IteratedWord parse(const std::string &text);
};

struct TruncationSpec {
    std::int64_t max_outer_index = 400'000'000;
    double target_abs_error = 1e-8;

    void validate() const;
};

/// Upper bound for the part of ζ(s1..sd) with n_d > N (everything that the
/// truncated nested sum omits). Valid whenever the composition converges.
double nested_tail_bound(const Composition &comp, std::int64_t N);

/// Smallest N <= max_outer_index whose tail bound meets the target.
/// Throws TailTooLarge when even max_outer_index is not enough.
std::int64_t required_truncation(const Composition &comp, const TruncationSpec &trunc);

/// Nested summation truncated at the outer index N chosen by
/// required_truncation. Depth 0 returns exactly 1.
EvaluationResult mzf_eval(const Composition &comp, const TruncationSpec &trunc);

/// ω1 ω0^{k1-1} ω1 ω0^{k2-1} ... ω1 ω0^{kd-1}. Throws InvalidComposition
/// unless all parts are positive and the last part exceeds 1.
IteratedWord composition_to_word(const IntegerComposition &k);

/// Iterated integral of the word over 0 < x1 < ... < xn < 1.
///
/// The partial integrals F_j(x) = ∫_0^x F_{j-1}(y) ω_j(y) are carried on
/// Gauss-Legendre panels graded geometrically towards x = 1, one cumulative
/// integration per letter. spec.lower_cutoff is the width of the last panel
/// at 1, spec.levels sets the panel order, and the reported error compares
/// two panel orders.
EvaluationResult kontsevich_eval(const IteratedWord &word, const QuadratureSpec &spec);

} // namespace adelic
