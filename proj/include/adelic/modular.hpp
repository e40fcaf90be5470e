#pragma once

// Level-one cusp forms F(τ) = Σ a_n q^n with exact integer coefficients, their
// L-functions L(F, s) = Σ a_n n^{-s}, the completed Λ(F, s) = ∫_0^∞ F(it) t^{s-1} dt,
// and the double (ordered) versions over n1 < n2 and t1 > t2.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adelic/mzv.hpp"
#include "adelic/numerics.hpp"

namespace adelic {

using BigInt = boost::multiprecision::cpp_int;

/// Truncated power series c_0 + c_1 q + ... + c_N q^N over Z.
class PowerSeriesZ {
  public:
    explicit PowerSeriesZ(std::size_t order);
    PowerSeriesZ(std::vector<BigInt> coeffs);

    std::size_t order() const { return c_.size() - 1; }
    const BigInt &operator[](std::size_t i) const { return c_[i]; }
    BigInt &operator[](std::size_t i) { return c_[i]; }
    const std::vector<BigInt> &coefficients() const { return c_; }

    /// Product truncated at the smaller of the two orders.
    PowerSeriesZ operator*(const PowerSeriesZ &other) const;
    bool operator==(const PowerSeriesZ &other) const = default;

  private:
    std::vector<BigInt> c_;
};

class FourierCoefficients {
  public:
    /// coeffs[0] is a_1. Throws InvalidArgument unless the weight is even and
    /// at least 12 and at least one coefficient is given.
    FourierCoefficients(int weight, std::vector<BigInt> coeffs, std::string label);

    /// A bare Dirichlet series with |a_n| = O(n^{growth_weight/2}); used for
    /// synthetic test series that are not cusp forms. growth_weight must be
    /// even and nonnegative.
    static FourierCoefficients dirichlet_series(int growth_weight, std::vector<BigInt> coeffs,
                                                std::string label);

    int weight() const { return weight_; }
    const std::string &label() const { return label_; }
    std::size_t size() const { return exact_.size(); }

    /// a_n for 1 <= n <= size().
    const BigInt &exact(std::size_t n) const { return exact_.at(n - 1); }
    double operator()(std::size_t n) const { return approx_[n - 1]; }

    /// 1.5 · max_n |a_n| / n^{weight/2}: the constant of the growth bound
    /// |a_n| <= C n^{weight/2} used by every tail estimate.
    double growth_constant() const { return growth_; }

    /// Coefficients scaled by an integer, same weight.
    FourierCoefficients scaled(const BigInt &factor, std::string label) const;
    /// Sum of two forms of equal weight, truncated at the shorter length.
    FourierCoefficients plus(const FourierCoefficients &other, std::string label) const;

    bool operator==(const FourierCoefficients &other) const {
        return weight_ == other.weight_ && exact_ == other.exact_;
    }

  private:
    FourierCoefficients(int weight, std::vector<BigInt> coeffs, std::string label, bool);

    int weight_;
    std::vector<BigInt> exact_;
    std::vector<double> approx_;
    std::string label_;
    double growth_ = 0;
};

/// ∏_{n>=1} (1 - q^n) to order N by Euler's pentagonal number theorem.
PowerSeriesZ euler_product(std::size_t N);

/// τ(1..N) from Δ = q ∏ (1 - q^n)^{24}, computed as 24 sparse multiplications
/// by the pentagonal series.
FourierCoefficients delta_coefficients(std::size_t N);

/// The same coefficients with a different multiplication schedule: (∏(1-q^n))^{24}
/// by repeated squaring on dense series, multiplied in column chunks of the
/// given width. Used to confirm exactness independently of evaluation order.
FourierCoefficients delta_coefficients_chunked(std::size_t N, std::size_t chunk);

/// E4 = 1 + 240 Σ σ3(n) q^n and E6 = 1 - 504 Σ σ5(n) q^n to order N.
/// Throws InvalidArgument unless k is 4 or 6.
PowerSeriesZ eisenstein_coefficients(int k, std::size_t N);

/// Δ·E_k, the cusp form of weight 12 + k (k in {4, 6}), with N coefficients.
FourierCoefficients delta_times_eisenstein(int k, std::size_t N);

/// Normalization of F(it). adelic_doubled multiplies every single completed
/// value by 2 and every double completed value by 4.
enum class CuspNormalization { standard, adelic_doubled };

/// F(it) = Σ a_n e^{-2πnt}. For t < 1 the value is obtained from
/// F(i/t) = (-1)^{k/2} t^k F(it) so that only fast-decaying sums are formed.
/// Throws InvalidArgument when the coefficients run out before the sum
/// converges.
double cusp_form_at(const FourierCoefficients &f, double t);

/// Direct summation of F(it) without the modular inversion.
double cusp_form_direct(const FourierCoefficients &f, double t);

/// Σ a_n n^{-s} truncated at the smallest N meeting the target under the
/// growth bound. Requires Re s > weight/2 + 1. Throws TailTooLarge when the
/// available coefficients (or max_outer_index) do not suffice.
EvaluationResult l_series(const FourierCoefficients &f, Complex s, const TruncationSpec &trunc);

/// Σ a_n b_n n^{-s}, the diagonal term of the product of two L-series; the
/// growth weight is weight(f) + weight(g).
EvaluationResult diagonal_l_series(const FourierCoefficients &f, const FourierCoefficients &g,
                                   Complex s, const TruncationSpec &trunc);

/// Σ_{0<n1<n2} a_{n1} b_{n2} n1^{-s1} n2^{-s2}. Requires Re s2 > weight(g)/2 + 1
/// and Re(s1 + s2) > (weight(f) + weight(g))/2 + 2.
EvaluationResult double_l_series(const FourierCoefficients &f, const FourierCoefficients &g,
                                 Complex s1, Complex s2, const TruncationSpec &trunc);

/// Cutoffs suited to cusp forms: [0.01, 40] in t.
QuadratureSpec modular_default_spec();

/// How the integral near t = 0 is handled.
enum class SmallT {
    inversion, // ∫_1^∞ F(it) (t^{s-1} + (-1)^{k/2} t^{k-s-1}) dt, valid for every s
    direct     // ∫ F(it) t^{s-1} dt over the spec cutoffs with F summed directly
};

/// Λ(F, s) = ∫_0^∞ F(it) t^{s-1} dt by quadrature, for any s.
EvaluationResult completed_l_integral(const FourierCoefficients &f, Complex s,
                                      const QuadratureSpec &spec, SmallT mode = SmallT::inversion,
                                      CuspNormalization norm = CuspNormalization::standard);

/// primary: completed_l_integral; oracle: (2π)^{-s} Γ(s) L(F, s) using all
/// available coefficients. Requires Re s > weight/2 + 1.
DualPathResult completed_l(const FourierCoefficients &f, Complex s, const QuadratureSpec &spec,
                           CuspNormalization norm = CuspNormalization::standard);

/// Λ(F, G, s1, s2) = ∫_{t1>t2>0} F(it1) t1^{s1-1} G(it2) t2^{s2-1} dt1 dt2.
///
/// primary: two-dimensional quadrature on the simplex.
/// oracle:  the t1 integral in closed form,
///   ∫_{t0}^∞ G(it) t^{s2-1} Σ_n a_n (2πn)^{-s1} Γ(s1, 2πnt) dt,
/// where below t0 = 0.1 both G and the bracket are bounded analytically.
DualPathResult completed_double_l(const FourierCoefficients &f, const FourierCoefficients &g,
                                  Complex s1, Complex s2, const QuadratureSpec &spec,
                                  CuspNormalization norm = CuspNormalization::standard);

/// JSON {"label", "weight", "coefficients": ["1", "-24", ...]}.
std::string coefficients_to_json(const FourierCoefficients &f);

/// Accepts the object form above or a bare array of decimal strings or
/// integers (weight then defaults to 12). Throws InvalidArgument on bad input.
FourierCoefficients coefficients_from_json(const std::string &text);

} // namespace adelic
