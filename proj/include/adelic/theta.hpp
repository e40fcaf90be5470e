#pragma once

// Finite-adelic multiple zeta (orbit sums over n·Ẑ^×) and completed iterated
// zeta as iterated Mellin transforms of θ(it) - 1 = 2 Σ_{n>=1} e^{-πn²t}.

#include "adelic/mzv.hpp"
#include "adelic/numerics.hpp"

namespace adelic {

/// Bound on the omitted part 2 Σ_{n>=nmax} e^{-πn²t} of θ(it) - 1.
struct ThetaTail {
    double t;
    long nmax;

    double bound() const;
};

/// θ(it) - 1 by direct summation, stopped once the ThetaTail bound drops
/// below 1e-16 of the partial sum. Cost grows like t^{-1/2}.
double theta_minus_one_direct(double t);

/// θ(it) - 1 for any t > 0: direct summation for t >= 1, and for t < 1 the
/// inversion θ(it) = t^{-1/2} θ(i/t) so that only the fast side is summed.
double theta_minus_one(double t);

/// Quadrature controls for the theta integrals: cutoffs in the r variable
/// wide enough that the analytic tail bounds are below 1e-10 for Re s >= 2.
QuadratureSpec theta_default_spec();

/// ∫ over |x1|_f > ... > |xd|_f of ∏ f_f(x_i)|x_i|_f^{s_i} d^×x_i, summed orbit
/// by orbit: each n·Ẑ^× is assembled from its local data (p-adic valuations,
/// orbit measures) and orbits are visited in increasing norm order. Uses the
/// same truncation rule and tail bound as mzf_eval.
EvaluationResult finite_adelic_mzf(const Composition &comp, const TruncationSpec &trunc);

/// primary: ∫_0^∞ (θ(it) - 1) t^{s/2} dt/t by quadrature.
/// oracle:  2 π^{-s/2} Γ(s/2) ζ(s) in closed form. Requires Re s > 1.
DualPathResult completed_zeta_via_theta(Complex s, const QuadratureSpec &spec);

/// I_θ(s1, s2) = ∫_{r1 > r2 > 0} (θ(ir1)-1) r1^{s1/2} (θ(ir2)-1) r2^{s2/2} dr1/r1 dr2/r2.
///
/// primary: two-dimensional quadrature over the simplex.
/// oracle:  the inner integral in closed form,
///   2 Σ_{m>=1} (πm²)^{-s1/2} ∫_0^∞ Γ(s1/2, πm²r) (θ(ir)-1) r^{s2/2-1} dr,
/// truncated in m by an explicit bound. Requires Re s1 > 1 and Re s2 > 1.
DualPathResult completed_iterated_theta(Complex s1, Complex s2, const QuadratureSpec &spec);

/// The same iterated integral in the idele-norm variable t (r = t²) with
/// F(t) = θ(it²) - 1: ∫_{t1 > t2 > 0} F(t1) t1^{s1} F(t2) t2^{s2} dt1/t1 dt2/t2.
/// Equals I_θ(s1, s2) / 4. Cutoffs in spec are given in the r variable.
EvaluationResult completed_iterated_theta_tvar(Complex s1, Complex s2,
                                               const QuadratureSpec &spec);

/// ∫_0^∞ F(t) t^s dt/t with F(t) = θ(it²) - 1, which is π^{-s/2} Γ(s/2) ζ(s).
/// primary: quadrature; oracle: closed form. Requires Re s > 1.
DualPathResult completed_zeta_tvar(Complex s, const QuadratureSpec &spec);

} // namespace adelic
