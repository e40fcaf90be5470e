#pragma once

// Local factors of zeta at a prime p and at the real place, and their
// iterated (ordered) versions. p-adic numbers never appear as data: every
// integrand involved is constant on the orbits p^k Z_p^×, so integrals reduce
// to orbit measures and norms.

#include <cstdint>

#include "adelic/mzv.hpp"
#include "adelic/numerics.hpp"

namespace adelic {

class Prime {
  public:
    /// Throws InvalidArgument unless p is a prime.
    explicit Prime(std::int64_t p);
    std::int64_t value() const { return p_; }

  private:
    std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Additive Haar measure of p^k Z_p^× with ∫_{Z_p} dx = 1: p^{-k} (p-1)/p.
double additive_orbit_measure(const Prime &p, int k);

/// Multiplicative measure d^×x = p/(p-1) · dx/|x|_p of p^k Z_p^×. Equal to 1
/// for every k; computed from the additive measure and the norm.
double multiplicative_orbit_measure(const Prime &p, int k);

/// 1 / (1 - p^{-s}). Throws DivergenceError unless Re s > 0.
Complex euler_factor(const Prime &p, Complex s);

/// Σ_{0 <= k1 < ... < kd} ∏ p^{-k_i s_i} in closed form:
///   ∏_{j=2..d} T_j / ∏_{j=1..d} (1 - T_j),  T_j = ∏_{i>=j} p^{-s_i}.
/// Requires Re(s_j + ... + s_d) > 0 for every j.
Complex iterated_local_factor(const Prime &p, const Composition &comp);

/// π^{-s/2} Γ(s/2), the Mellin transform of e^{-πx²} against dx/|x| on R^×.
Complex archimedean_factor(Complex s);

/// ∫_{|x1| > |x2| > 0} e^{-π(x1² + x2²)} |x1|^{s1} |x2|^{s2} dx1/|x1| dx2/|x2|,
/// folded to 4 ∫_{t1 > t2 > 0} over the positive quadrant. Requires
/// Re s2 > 0 and Re(s1 + s2) > 0. The parts of the domain cut off by the
/// spec are bounded analytically and added to the error estimate.
EvaluationResult iterated_archimedean(Complex s1, Complex s2, const QuadratureSpec &spec);

/// |Σ_{k=0}^{kmax} p^{-k} (p-1)/p - 1|: residual of Z_p - {0} = ⊔ p^k Z_p^×
/// after kmax + 1 orbits.
double haar_consistency(const Prime &p, int kmax);

} // namespace adelic
