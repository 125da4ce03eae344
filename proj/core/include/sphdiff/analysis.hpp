#pragma once

#include <cstdint>

#include "sphdiff/mode_evolution.hpp"
#include "sphdiff/spectrum.hpp"

namespace sphdiff {

struct CovarianceQuery {
  double theta_distance = 0.0;  ///< angular distance in [0, pi]
  double t = 0.0;
  double t_prime = 0.0;
  int L = 0;  ///< truncation degree; the sum runs over l < min(L, L0)
};

/// Covariance of the evolved field between two points at angular distance
/// Theta and times (t, t'):
///   (4 pi)^-1 e^{-c^2 (t+t')/2D} sum_l (2l+1) C_l P_l(cos Theta)
///                                        [A_l(t) A_l(t') + B_l(t) B_l(t')].
/// Symmetric in (t, t').
double covariance(const CovarianceQuery& q, const AngularSpectrum& s,
                  const ModelParams& p);

/// Per-degree variance at time t: C_l(t) = C_l e^{-c^2 t/D} [A_l^2 + B_l^2]
/// = C_l f_l(t)^2 (the covariance diagonal at t = t', Theta = 0).
AngularSpectrum evolved_spectrum(const AngularSpectrum& s, double t,
                                 const ModelParams& p);

/// Exact L2(Omega x S2) distance between the solution and its degree-L
/// truncation:
///   (2 sqrt(pi))^-1 ( sum_{l>=L} (2l+1) C_l f_l(t)^2 )^{1/2}.
double truncation_error_exact(int L, double t, const AngularSpectrum& s,
                              const ModelParams& p);

/// Computable upper bound for the truncation error, valid on the purely
/// oscillatory tail L > l*:
///   C(L) e^{-c^2 t/2D} ( sum_{l>=L} (2l+1) C_l )^{1/2},
///   C(L) = (2 sqrt(pi))^-1 sup_{l>=L} (1 + c^2/(2 D K_l')).
/// Always >= truncation_error_exact. Throws std::domain_error when
/// L <= crossover_degree (the growing hyperbolic factors void the bound).
double truncation_bound(int L, double t, const AngularSpectrum& s,
                        const ModelParams& p);

/// Chebyshev bound on P(|u - u_L| >= eps) at a point: the exact pointwise
/// tail variance (4 pi)^-1 sum_{l>=L} (2l+1) C_l f_l(t)^2 divided by eps^2.
/// Requires eps > 0 and L > crossover_degree.
double chebyshev_tail_probability(int L, double t, double epsilon,
                                  const AngularSpectrum& s, const ModelParams& p);

/// Exact L2(Omega x S2) norm of u(., t+h) - u(., t):
///   (2 sqrt(pi))^-1 ( sum_l (2l+1) C_l [ (gA_l(t+h) - gA_l(t))^2
///                                      + (gB_l(t+h) - gB_l(t))^2 ] )^{1/2},
/// where gA, gB are the attenuated branch factors. The l = 0 increment
/// vanishes identically.
double temporal_increment_norm(double t, double h, const AngularSpectrum& s,
                               const ModelParams& p);

struct SpatialIncrement {
  double exact;
  double bound;
};

/// Mean-square spatial increment at fixed time together with its Legendre
/// envelope bound:
///   exact = (2 pi)^-1 sum_l (2l+1) C_l (gA_l^2 + gB_l^2) (1 - P_l(cos Theta))
///   bound = pi^-1 (1 - cos Theta)^gamma sum_l (2l+1)^{1+2 gamma} C_l env_l,
/// env_l = 1 on the hyperbolic branch and (1 + c^2/(2 D K_l'))^2 on the
/// oscillatory one. exact <= bound for every Theta in [0, pi], gamma in [0, 1].
SpatialIncrement spatial_increment_mse(double theta_distance, double t,
                                       double gamma, const AngularSpectrum& s,
                                       const ModelParams& p);

struct MonteCarloEstimate {
  double estimate;
  double std_error;
};

/// Simulation cross-check of the covariance: samples n_samples fields,
/// evolves them to t and t', and averages u_t(P) u_{t'}(Q) over a fixed pair
/// of points at angular distance theta_distance. Per-sample seeds are derived
/// from (seed, sample index), so the estimate does not depend on evaluation
/// order. Requires n_samples >= 100.
MonteCarloEstimate monte_carlo_covariance(double theta_distance, double t,
                                          double t_prime,
                                          const AngularSpectrum& s,
                                          const ModelParams& p, int n_samples,
                                          std::uint64_t seed);

}  // namespace sphdiff
