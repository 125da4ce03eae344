#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sphdiff/coefficients.hpp"
#include "sphdiff/grid.hpp"
#include "sphdiff/mode_evolution.hpp"
#include "sphdiff/spectrum.hpp"

namespace sphdiff {

/// Draws Gaussian isotropic coefficients for the given spectrum:
/// a_l0 ~ N(0, C_l) real; Re a_lm, Im a_lm ~ N(0, C_l/2) for m > 0, all
/// independent, so E|a_lm|^2 = C_l for every m. Deterministic in (seed, l, m)
/// through per-coefficient RNG substreams. Throws std::domain_error on a
/// negative C_l.
HarmonicCoefficients sample_coefficients(const AngularSpectrum& spectrum,
                                         std::uint64_t seed);

/// a_lm -> a_lm f_l(t). The mode factor is real, so Hermitian symmetry is
/// preserved; l = 0 is untouched for every t.
HarmonicCoefficients evolve_coefficients(const HarmonicCoefficients& coeffs,
                                         double t, const ModelParams& params);

/// Evaluates u = sum_{l<=lmax} sum_m a_lm Y_lm at every grid point and
/// returns the (real) field. The inner sum is computed as
/// a_l0 N_l0 + 2 Re sum_{m>0} a_lm N_lm e^{im phi}. Structured grids are
/// synthesized ring by ring, optionally across threads; the result is
/// independent of the partitioning. Throws std::invalid_argument on an empty
/// grid.
std::vector<double> synthesize(const HarmonicCoefficients& coeffs,
                               const SphereGrid& grid, unsigned threads = 0);

/// Inverse transform a_lm = integral of u conj(Y_lm) over the sphere by
/// Gauss-Legendre x uniform-phi quadrature, exact for band-limited input.
/// Requires a gauss_legendre grid with ntheta >= lmax+1 and nphi >= 2*lmax+1;
/// anything less aliases and throws std::invalid_argument.
HarmonicCoefficients analyze(std::span<const double> field,
                             const SphereGrid& grid, int lmax);

/// Truncated point-source solution (Green's function) at angular distance
/// theta from the source:
///   p_L(theta, t) = sum_{l<L} (2l+1)/(4 pi) P_l(cos theta) f_l(t).
/// Its integral over the sphere is 1 for every t and L. At t = 0 the sum is
/// a Dirichlet-type kernel approximating the initial delta; it oscillates and
/// does not converge pointwise as L grows, so small-t values are only
/// meaningful under the integral.
double green_function(double theta, double t, int L, const ModelParams& params);

}  // namespace sphdiff
