#pragma once

#include <complex>
#include <span>

namespace sphdiff {

// Conventions used throughout this library (they fix the meaning of every
// coefficient file it reads or writes):
//
//   Y_lm(theta, phi) = N_lm(cos theta) * e^{i m phi}
//   N_lm(x)  = d_lm * P_l^m(x)
//   d_lm     = (-1)^m [ (2l+1) (l-m)! / (4 pi (l+m)!) ]^{1/2}
//   P_l^m(x) = (-1)^m (1-x^2)^{m/2} d^m/dx^m P_l(x)     (Condon-Shortley phase)
//   P_l(x)   = 1/(2^l l!) d^l/dx^l (x^2-1)^l
//
// The two (-1)^m factors cancel for m >= 0, so N_lm(x) > 0 as x -> 1-.
// Negative orders satisfy N_{l,-m} = (-1)^m N_lm, equivalently
// conj(Y_lm) = (-1)^m Y_{l,-m}.

/// Legendre polynomial P_l(x) by the Bonnet three-term recurrence.
/// Throws std::domain_error for l < 0 or x outside [-1, 1].
double legendre_p(int l, double x);

/// Fills out[0..lmax] with P_0(x)..P_lmax(x) in one recurrence pass.
void legendre_p_all(int lmax, double x, std::span<double> out);

/// Fully normalized associated Legendre function N_lm(x), any |m| <= l.
///
/// The normalization is folded into every recurrence step, so values stay
/// O(sqrt(l)) and remain finite far past l = 3000, where the raw P_l^m
/// overflow. At x = +-1 the result is exactly 0 for m != 0.
double assoc_legendre_normalized(int l, int m, double x);

/// Column of N_lm for fixed order m >= 0: out[l-m] = N_lm(x), l = m..lmax.
/// out must hold at least lmax-m+1 values.
void assoc_legendre_normalized_col(int lmax, int m, double x, std::span<double> out);

/// Complex spherical harmonic Y_lm(theta, phi).
std::complex<double> y_lm(int l, int m, double theta, double phi);

/// Zonal kernel of degree l about the pole: Q_l = (2l+1)/(4 pi) P_l(cos theta).
double zonal_kernel(int l, double cos_theta);

}  // namespace sphdiff
