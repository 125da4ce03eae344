#pragma once

namespace sphdiff {

/// Constants of the spherical telegraph (hyperbolic diffusion) equation
///   (1/c^2) u_tt + (1/D) u_t = k^2 Laplace_S2 u.
struct ModelParams {
  double c = 1.0;   ///< propagation speed bound, > 0
  double D = 1.0;   ///< diffusivity, > 0
  double k = 0.01;  ///< spatial scale constant, != 0

  /// Throws std::domain_error unless c > 0, D > 0, k != 0 and all are finite.
  void validate() const;

  /// Attenuation rate c^2 / (2D); the natural inverse time unit.
  double attenuation_rate() const { return c * c / (2.0 * D); }
};

/// Dimensionless time t' = c^2 t / (2D) and its inverse.
double dimensionless_time(double t, const ModelParams& p);
double physical_time(double tprime, const ModelParams& p);

enum class Branch { hyperbolic, oscillatory };

struct BranchRate {
  Branch branch;
  double rate;  ///< K_l (hyperbolic) or K_l' (oscillatory), >= 0, in 1/time
};

/// Largest degree on the overdamped branch,
///   l* = (sqrt(D^2 k^2 + c^2) - D|k|) / (2 D |k|) > 0.
/// Degrees l <= l* evolve with cosh/sinh (rate K_l), degrees l > l* oscillate
/// (rate K_l'). The boundary degree, if integral, is hyperbolic.
double crossover_degree(const ModelParams& p);

/// Branch and rate for degree l. Decided by the sign of the discriminant
/// c^2/(4D^2) - l(l+1)k^2, with K_l = c sqrt(disc) factored to avoid
/// cancellation near the crossover.
BranchRate rate(int l, const ModelParams& p);

/// A_l(t) = cosh(t K_l) + c^2/(2 D K_l) sinh(t K_l) on the hyperbolic branch,
/// 0 otherwise. When K_l is (numerically) a double characteristic root the
/// limit 1 + c^2 t / (2D) is used.
double a_factor(int l, double t, const ModelParams& p);

/// B_l(t) = cos(t K_l') + c^2/(2 D K_l') sin(t K_l') on the oscillatory
/// branch, 0 otherwise. |B_l(t)| <= 1 + c^2/(2 D K_l').
double b_factor(int l, double t, const ModelParams& p);

/// Attenuated branch factors { e^{-c^2 t/2D} A_l(t), e^{-c^2 t/2D} B_l(t) },
/// evaluated as sums of decaying exponentials so that no intermediate can
/// overflow however large t gets. Exactly one component is nonzero.
struct AttenuatedFactors {
  double a;
  double b;
};
AttenuatedFactors attenuated_factors(int l, double t, const ModelParams& p);

/// Mode factor f_l(t) = e^{-c^2 t/2D} (A_l(t) + B_l(t)): the scalar a
/// degree-l coefficient is multiplied by when the field evolves to time t.
/// f_l(0) = 1 bit-exactly; f_0 == 1 (the constant mode is conserved).
double mode_factor(int l, double t, const ModelParams& p);

/// Per-degree evolution snapshot at time t.
struct EvolutionFactors {
  int l;
  Branch branch;
  double rate;
  double a_value;
  double b_value;
  double mode_factor;
};
EvolutionFactors evolution_factors(int l, double t, const ModelParams& p);

/// Verification oracle, independent of the closed forms above: classical
/// fixed-step RK4 integration of
///   (1/c^2) b'' + (1/D) b' + l(l+1) k^2 b = 0,  b(0) = 1, b'(0) = 0,
/// returning b(t). Throws std::invalid_argument when the step size h = t/steps
/// violates h * max(c^2/D, c |k| sqrt(l(l+1))) < 0.1.
double mode_ode_oracle(int l, double t, const ModelParams& p, long steps);

}  // namespace sphdiff
